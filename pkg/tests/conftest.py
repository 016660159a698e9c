"""Shared fixtures, hypothesis strategies and sympy oracles."""
import sympy as sp
from hypothesis import strategies as st

from twistalex.laurent import LaurentPoly, canonical_form

# Zero-linking families: (braid word, 0-based closure component used for surgery).
ZERO_LINKING_FAMILIES = {
    "whitehead": ("s1 s1 s2^-1 s1 s2^-1", 1),
    "borromean": ("(s1 s2^-1)^3", 0),
    "trefoil_circle": ("s1 s1 s1 s2 s1^-1 s1^-1 s2", 1),
    "F4": ("s1 s1 s1 s2^-1 s1 s1 s2^-1", 1),
    "F5": ("s1 s1 s2^-1 s1 s2^-1 s1 s2^-1", 1),
    "F6": ("s1 s1 s1 s2 s1^-1 s2 s1^-1 s2", 2),
    "F7": ("s1 s1 s1 s2^-1 s1 s2^-1 s1 s2^-1", 2),
}

CONSTANT_FAMILIES = {
    "trefoil_split": ("s1 s1 s1 s2 s2^-1", 1),
    "fig8_like": ("s1 s2 s3^-1 s2 s1^-1 s3^-1", 1),
    "cinquefoil_split": ("s1 s1 s1 s1 s1 s2 s2^-1", 1),
    "unknot_pair": ("s1 s2 s1^-1", 1),
}

LEHMER = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]


def symbols(nvars):
    return sp.symbols(" ".join(f"t{i + 1}" for i in range(nvars)) + " ,")[:nvars]


def to_sympy(p, syms=None):
    """Laurent polynomial as a sympy expression (negative powers allowed)."""
    syms = syms or symbols(p.nvars)
    return sp.Add(*[c * sp.Mul(*[s ** e for s, e in zip(syms, ex)]) for ex, c in p.items()])


def from_sympy(expr, nvars, syms=None):
    """Inverse of :func:`to_sympy` for expressions with integer coefficients."""
    syms = syms or symbols(nvars)
    num, den = sp.fraction(sp.together(sp.expand(expr)))
    num = sp.Poly(sp.expand(num), *syms)
    den = sp.Poly(sp.expand(den), *syms)
    if len(den.terms()) != 1:
        raise ValueError("not a Laurent polynomial")
    (dexp, dcoeff), = den.terms()
    terms = {}
    for ex, c in num.terms():
        q = sp.Rational(c, dcoeff)
        assert q.q == 1
        terms[tuple(a - b for a, b in zip(ex, dexp))] = int(q)
    return LaurentPoly(terms, nvars)


def same_up_to_units(a, b):
    return canonical_form(a) == canonical_form(b)


def laurent_polys(nvars=2, max_terms=5, emin=-3, emax=3, cmax=5, nonzero=False):
    """Hypothesis strategy for sparse Laurent polynomials."""
    exps = st.tuples(*[st.integers(emin, emax)] * nvars)
    coeffs = st.integers(-cmax, cmax).filter(bool)
    min_size = 1 if nonzero else 0
    return st.dictionaries(exps, coeffs, min_size=min_size, max_size=max_terms).map(
        lambda d: LaurentPoly(d, nvars))


def int_polys(max_deg=6, cmax=4):
    """Ascending integer coefficient lists with nonzero ends."""
    return st.lists(st.integers(-cmax, cmax), min_size=2, max_size=max_deg + 1).filter(
        lambda c: c[0] != 0 and c[-1] != 0)


def seifert_alexander(V):
    """Oracle: det(V - t V^T) from a Seifert matrix, as a sympy polynomial in t."""
    t = sp.Symbol("t1")
    V = sp.Matrix(V)
    return sp.expand((V - t * V.T).det()), t
