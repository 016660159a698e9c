"""Select the compiled kernels when available, else the pure-Python ones.

Set ``TWISTALEX_PURE_PYTHON=1`` in the environment to force the fallback
(useful for comparing backends).  ``BACKEND`` names the active choice.
"""
import os

from . import _purepy

BACKEND = "python"
_impl = _purepy

if os.environ.get("TWISTALEX_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _speedups as _impl  # noqa: F811
        BACKEND = "compiled"
    except ImportError:
        _impl = _purepy

mul_sparse = _impl.mul_sparse
newton_ratio = _impl.newton_ratio
aberth = _impl.aberth


def backends():
    """Return a dict of every importable backend module, keyed by name."""
    out = {"python": _purepy}
    try:
        from . import _speedups
        out["compiled"] = _speedups
    except ImportError:
        pass
    return out
