import json

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import from_sympy, laurent_polys, same_up_to_units, symbols, to_sympy
from twistalex.errors import NotDivisibleError, ParseError
from twistalex.laurent import (LaurentPoly, QPoly, canonical_form, canonical_with_unit, divides,
                               exact_div, gcd, parse_poly, unit_between)


def test_parse_and_print():
    p = parse_poly("t^10 + t^9 - t^7 - t^6 - t^5 - t^4 - t^3 + t + 1")
    assert p.nvars == 1
    assert p.coefficient((7,)) == -1
    assert parse_poly(str(p)) == p
    t1, t2 = LaurentPoly.gens(2)
    assert parse_poly("t1*t2 - t1 - t2 + 1") == (t1 - 1) * (t2 - 1)
    assert parse_poly("(t1 - 1)(t2 - 1)") == (t1 - 1) * (t2 - 1)
    assert parse_poly("t^-2 + 3", 1) == LaurentPoly({(-2,): 1, (0,): 3})


@pytest.mark.parametrize("text,pos", [("t^2 + * 3", 6), ("(t - 1", None), ("t3", None)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_poly(text, 2)
    if pos is not None:
        assert info.value.position == pos


def test_canonical_form_examples():
    t1, t2 = LaurentPoly.gens(2)
    assert canonical_form(1 - t1) == t1 - 1
    assert str(canonical_form(-(t1 - 1) * (t2 - 1) * t1 ** -3)) == "t1*t2 - t1 - t2 + 1"
    c, sign, shift = canonical_with_unit(-t1 ** 2 + t1 ** 3)
    assert (c, sign, shift) == (t1 - 1, 1, (2, 0))
    assert canonical_form(LaurentPoly.zero(2)).is_zero()


@given(laurent_polys(nonzero=True), st.tuples(st.integers(-4, 4), st.integers(-4, 4)), st.sampled_from([1, -1]))
def test_canonical_form_is_unit_invariant(p, shift, sign):
    q = p.shift(shift) * sign
    assert canonical_form(p) == canonical_form(q)
    s, sh = unit_between(q, p)
    assert q == p.shift(sh) * s


@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == LaurentPoly.zero(2)


@given(laurent_polys(), laurent_polys())
def test_multiplication_matches_sympy(a, b):
    syms = symbols(2)
    assert from_sympy(to_sympy(a, syms) * to_sympy(b, syms), 2, syms) == a * b


@given(laurent_polys(max_terms=4), laurent_polys(max_terms=4, nonzero=True))
def test_exact_div_round_trip(a, b):
    assert exact_div(a * b, b) == a


def test_exact_div_raises_with_remainder():
    t, = LaurentPoly.gens(1)
    with pytest.raises(NotDivisibleError):
        exact_div(t ** 2 + 1, t - 1)
    with pytest.raises(ZeroDivisionError):
        exact_div(t, LaurentPoly.zero(1))
    assert not divides(t - 1, t ** 2 + 1)
    assert divides(t - 1, t ** 3 - 1)


def _sympy_gcd(a, b, nvars):
    syms = symbols(nvars)
    pa = sp.Poly(sp.expand(to_sympy(a.shift(tuple(-x for x in a.min_exponents())), syms)), *syms)
    pb = sp.Poly(sp.expand(to_sympy(b.shift(tuple(-x for x in b.min_exponents())), syms)), *syms)
    return from_sympy(sp.gcd(pa, pb).as_expr(), nvars, syms)


@settings(max_examples=60, deadline=None)
@given(laurent_polys(max_terms=3, emin=0, emax=2, cmax=3, nonzero=True),
       laurent_polys(max_terms=3, emin=0, emax=2, cmax=3, nonzero=True),
       laurent_polys(max_terms=3, emin=0, emax=2, cmax=3, nonzero=True))
def test_gcd_matches_sympy(g, a, b):
    x, y = g * a, g * b
    assert same_up_to_units(gcd(x, y), _sympy_gcd(x, y, 2))


@given(laurent_polys(nonzero=True), laurent_polys(nonzero=True))
def test_gcd_divides_both(a, b):
    g = gcd(a, b)
    assert divides(g, a) and divides(g, b)


def test_gcd_keeps_integer_content():
    t, = LaurentPoly.gens(1)
    assert gcd(2 * t - 2, LaurentPoly.constant(4, 1)) == LaurentPoly.constant(2, 1)
    assert gcd(t ** 2 - 1, t ** 3 - 1) == t - 1


def test_evaluate_exact():
    t1, t2 = LaurentPoly.gens(2)
    p = t1 ** -1 + t2
    from fractions import Fraction
    assert p.evaluate([2, 3]) == Fraction(7, 2)


def test_json_round_trip():
    p = parse_poly("t1^2*t2^-1 - 7*t2 + 3", 2)
    data = json.loads(json.dumps(p.to_json()))
    assert LaurentPoly.from_json(data, 2) == p


def test_qpoly_evaluate_and_round_trip():
    t1, t2 = LaurentPoly.gens(2)
    P = QPoly([t1 + 0, (t1 - 1) * (t2 - 1)])
    assert P.degree == 1
    assert P.evaluate(3) == t1 + 3 * (t1 - 1) * (t2 - 1)
    assert QPoly.from_laurent(P.to_laurent(), 2) == P
    assert QPoly.from_json(P.to_json(), 2) == P
