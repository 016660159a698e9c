import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import from_sympy, laurent_polys, symbols, to_sympy
from twistalex.laurent import LaurentPoly, canonical_form
from twistalex.matrix import PolyMatrix, cofactor_determinant, determinant, minors_gcd, q_determinant


def _square(n):
    return st.lists(laurent_polys(max_terms=3, emin=-1, emax=2, cmax=3), min_size=n * n, max_size=n * n).map(
        lambda xs: PolyMatrix([xs[i * n:(i + 1) * n] for i in range(n)], 2))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(_square))
def test_bareiss_matches_sympy_det(m):
    syms = symbols(2)
    M = sp.Matrix([[to_sympy(x, syms) for x in row] for row in m.rows])
    assert determinant(m) == from_sympy(M.det(method="berkowitz"), 2, syms)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(_square))
def test_bareiss_matches_cofactor_expansion(m):
    assert determinant(m) == cofactor_determinant(m)


@settings(max_examples=25, deadline=None)
@given(_square(3), _square(3))
def test_determinant_is_multiplicative(a, b):
    n = 3
    prod = PolyMatrix([[sum((a.rows[i][k] * b.rows[k][j] for k in range(n)), LaurentPoly.zero(2))
                        for j in range(n)] for i in range(n)], 2)
    assert determinant(prod) == determinant(a) * determinant(b)


def test_determinant_rejects_rectangular():
    with pytest.raises(ValueError):
        determinant(PolyMatrix([[1, 2]], 1))


def test_minors_gcd_of_alexander_like_matrix():
    t, = LaurentPoly.gens(1)
    m = PolyMatrix([[1 - t, t, -1], [-1, 1 - t, t]], 1)
    assert canonical_form(minors_gcd(m, 2)) == t ** 2 - t + 1
    assert minors_gcd(m, 0) == LaurentPoly.one(1)
    assert minors_gcd(m, 3).is_zero()


def test_q_determinant_reads_last_variable_as_q():
    t, q = LaurentPoly.gens(2)
    m = PolyMatrix([[q * (t - 1) + 1, t], [0, t - 1]], 2)
    P = q_determinant(m)
    assert P.degree == 1
    assert P.coefficient(1) == LaurentPoly.from_dense([1, -2, 1])
