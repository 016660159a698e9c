"""The compiled and pure-Python kernels must agree."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistalex import _purepy, kernels

BACKENDS = kernels.backends()
COMPILED = BACKENDS.get("compiled")
needs_compiled = pytest.mark.skipif(COMPILED is None, reason="compiled extension not built")

terms = st.dictionaries(st.tuples(st.integers(-20, 20), st.integers(-20, 20)), st.integers(-10 ** 30, 10 ** 30).filter(bool),
                        max_size=12)


def test_backend_flag_is_consistent():
    assert kernels.BACKEND in BACKENDS
    assert "python" in BACKENDS


@needs_compiled
@settings(max_examples=80)
@given(terms, terms)
def test_mul_sparse_agrees(a, b):
    assert COMPILED.mul_sparse(a, b, 2) == _purepy.mul_sparse(a, b, 2)


@needs_compiled
@pytest.mark.parametrize("nvars", [1, 3, 5])
def test_mul_sparse_agrees_other_ranks(nvars):
    rng = np.random.default_rng(nvars)
    a = {tuple(int(x) for x in rng.integers(-5, 6, nvars)): int(rng.integers(-9, 10)) or 1 for _ in range(15)}
    b = {tuple(int(x) for x in rng.integers(-5, 6, nvars)): int(rng.integers(-9, 10)) or 1 for _ in range(15)}
    assert COMPILED.mul_sparse(a, b, nvars) == _purepy.mul_sparse(a, b, nvars)


def test_mul_sparse_drops_cancelled_terms():
    a = {(1,): 1, (0,): -1}
    b = {(1,): 1, (0,): 1}
    for impl in BACKENDS.values():
        assert impl.mul_sparse(a, b, 1) == {(2,): 1, (0,): -1}


@needs_compiled
def test_newton_ratio_agrees():
    coeffs = np.array([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1], dtype=complex)
    z = np.array([0.3 + 0.2j, 1.5 - 0.7j, -0.9j, 2.0])
    assert np.allclose(COMPILED.newton_ratio(coeffs, z), _purepy.newton_ratio(coeffs, z), rtol=1e-12)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_aberth_finds_lehmer_roots(name):
    impl = BACKENDS[name]
    coeffs = np.array([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1], dtype=complex)
    z0 = 0.9 * np.exp(2j * np.pi * (np.arange(10) + 0.25) / 10)
    roots, it, ok, corr = impl.aberth(coeffs, z0)
    assert ok
    ref = np.roots(coeffs[::-1])
    for r in ref:
        assert np.min(np.abs(roots - r)) < 1e-10


@needs_compiled
def test_aberth_backends_agree_at_high_degree():
    rng = np.random.default_rng(7)
    coeffs = rng.integers(-3, 4, 401).astype(complex)
    coeffs[0] = coeffs[-1] = 1
    z0 = 0.95 * np.exp(2j * np.pi * (np.arange(400) + 0.3) / 400)
    r1, _, ok1, _ = COMPILED.aberth(coeffs, z0)
    r2, _, ok2, _ = _purepy.aberth(coeffs, z0)
    assert ok1 and ok2
    dist = np.abs(r1[:, None] - r2[None, :])
    assert dist.min(axis=1).max() < 1e-8
    assert dist.min(axis=0).max() < 1e-8
