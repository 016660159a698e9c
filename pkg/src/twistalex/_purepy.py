"""Reference implementations of the hot kernels in plain Python and numpy.

These are always importable and define the behaviour the compiled
versions in ``_speedups.pyx`` must reproduce.
"""
import numpy as np


def mul_sparse(a, b, nvars):
    """Multiply two sparse term dictionaries ``{exponent tuple: int}``.

    Zero coefficients are dropped from the result.
    """
    out = {}
    get = out.get
    if nvars == 1:
        for (ea,), ca in a.items():
            for (eb,), cb in b.items():
                k = (ea + eb,)
                out[k] = get(k, 0) + ca * cb
    elif nvars == 2:
        for (ea0, ea1), ca in a.items():
            for (eb0, eb1), cb in b.items():
                k = (ea0 + eb0, ea1 + eb1)
                out[k] = get(k, 0) + ca * cb
    else:
        for ea, ca in a.items():
            for eb, cb in b.items():
                k = tuple([x + y for x, y in zip(ea, eb)])
                out[k] = get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def newton_ratio(coeffs, z):
    """Return p(z)/p'(z) for ascending complex ``coeffs``, evaluated stably.

    Points with |z| > 1 are handled through the reversed polynomial so that
    Horner's rule never sees large powers of z.
    """
    n = len(coeffs) - 1
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    inside = np.abs(z) <= 1.0
    if inside.any():
        zi = z[inside]
        p = np.full_like(zi, coeffs[n])
        dp = np.zeros_like(zi)
        for k in range(n - 1, -1, -1):
            dp = dp * zi + p
            p = p * zi + coeffs[k]
        out[inside] = p / dp
    outside = ~inside
    if outside.any():
        zo = z[outside]
        w = 1.0 / zo
        p = np.full_like(zo, coeffs[0])
        dp = np.zeros_like(zo)
        for k in range(1, n + 1):
            dp = dp * w + p
            p = p * w + coeffs[k]
        out[outside] = zo / (n - w * dp / p)
    return out


def log_derivative(coeffs, z):
    """Return p'(z)/p(z) (``inf`` where p(z) == 0), evaluated like :func:`newton_ratio`."""
    n = len(coeffs) - 1
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    inside = np.abs(z) <= 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        if inside.any():
            zi = z[inside]
            p = np.full_like(zi, coeffs[n])
            dp = np.zeros_like(zi)
            for k in range(n - 1, -1, -1):
                dp = dp * zi + p
                p = p * zi + coeffs[k]
            out[inside] = np.where(p == 0, np.inf, dp / p)
        outside = ~inside
        if outside.any():
            zo = z[outside]
            w = 1.0 / zo
            p = np.full_like(zo, coeffs[0])
            dp = np.zeros_like(zo)
            for k in range(1, n + 1):
                dp = dp * w + p
                p = p * w + coeffs[k]
            out[outside] = np.where(p == 0, np.inf, (n - w * dp / p) * w)
    return out


def aberth(coeffs, z0, maxiter=1000, tol=1e-14):
    """Simultaneous root refinement by the Aberth-Ehrlich iteration.

    Parameters
    ----------
    coeffs : ndarray of complex
        Ascending coefficients, ``coeffs[-1] != 0``.
    z0 : ndarray of complex
        Initial approximations, one per root, pairwise distinct.
    maxiter : int
        Iteration cap.
    tol : float
        Stop once every correction is below ``tol * max(1, |z|)``.

    Returns
    -------
    roots : ndarray of complex
    iterations : int
    converged : bool
    corrections : ndarray of float
        Size of the last correction applied to each root.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    z = np.array(z0, dtype=complex)
    n = len(z)
    active = np.ones(n, dtype=bool)
    corr = np.full(n, np.inf)
    it = 0
    chunk = max(1, 4_000_000 // max(n, 1))
    for it in range(1, maxiter + 1):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        g = log_derivative(coeffs, z[idx])
        s = np.empty(idx.size, dtype=complex)
        for start in range(0, idx.size, chunk):
            part = idx[start:start + chunk]
            diff = z[part, None] - z[None, :]
            diff[np.arange(part.size), part] = 1.0
            inv = 1.0 / diff
            inv[np.arange(part.size), part] = 0.0
            s[start:start + chunk] = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = 1.0 / (g - s)
        w[~np.isfinite(g)] = 0.0
        bad = ~np.isfinite(w)
        if bad.any():
            w[bad] = 0.0
        z[idx] -= w
        corr[idx] = np.abs(w)
        done = np.abs(w) <= tol * np.maximum(1.0, np.abs(z[idx]))
        active[idx[done]] = False
    converged = not active.any()
    return z, it, converged, corr
