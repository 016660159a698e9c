import itertools
import math
from importlib.resources import files

import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import from_sympy, seifert_alexander
from twistalex.alexander import Augmentation, alexander_of, alexander_polynomial, hermite_basis, lattice_index
from twistalex.fox import fox_row
from twistalex.laurent import LaurentPoly, canonical_form, exact_div, parse_poly
from twistalex.links import braid_closure, parse_braid, parse_pd, wirtinger


def _data(name):
    return files("twistalex").joinpath("data", name).read_text()


def _torus_knot(p, q):
    """(t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1))."""
    t = LaurentPoly.variable(0, 1)
    return exact_div((t ** (p * q) - 1) * (t - 1), (t ** p - 1) * (t ** q - 1))


def test_trefoil_seifert_oracle():
    # right-handed trefoil, genus one Seifert surface
    expr, t = seifert_alexander([[-1, 1], [0, -1]])
    oracle = from_sympy(expr, 1, (t,))
    assert canonical_form(oracle) == parse_poly("t^2 - t + 1")
    assert alexander_of(braid_closure(parse_braid("s1^3"))) == canonical_form(oracle)
    assert alexander_of(parse_pd(_data("trefoil.pd"))) == canonical_form(oracle)


def test_figure_eight_seifert_oracle():
    expr, t = seifert_alexander([[-1, 1], [0, 1]])
    oracle = canonical_form(from_sympy(expr, 1, (t,)))
    assert oracle == parse_poly("t^2 - 3t + 1")
    assert alexander_of(braid_closure(parse_braid("s1 s2^-1 s1 s2^-1"))) == oracle
    assert alexander_of(parse_pd(_data("figure8.pd"))) == oracle


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5)])
def test_torus_knots(p, q):
    word = " ".join(f"s{i}" for i in range(1, p)) if p > 1 else ""
    b = parse_braid(f"({word})^{q}")
    assert alexander_of(braid_closure(b)) == canonical_form(_torus_knot(p, q))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_two_component_torus_links(k):
    t1, t2 = LaurentPoly.gens(2)
    expect = exact_div((t1 * t2) ** k - 1, t1 * t2 - 1)
    assert alexander_of(braid_closure(parse_braid(f"s1^{2 * k}"))) == canonical_form(expect)


def test_named_links():
    s1, s2 = LaurentPoly.gens(2)
    t1, t2, t3 = LaurentPoly.gens(3)
    assert alexander_of(parse_pd(_data("whitehead.pd"))) == canonical_form((s1 - 1) * (s2 - 1))
    assert alexander_of(parse_pd(_data("borromean.pd"))) == canonical_form((t1 - 1) * (t2 - 1) * (t3 - 1))
    assert alexander_of(parse_pd(_data("hopf.pd"))) == LaurentPoly.one(2)


def test_pretzel_knot_is_lehmer_at_minus_t():
    delta = alexander_of(braid_closure(parse_braid("(s1 s2)^7 s1^-2")))
    lehmer_minus_t = parse_poly("t^10 - t^9 + t^7 - t^6 + t^5 - t^4 + t^3 - t + 1")
    assert delta == lehmer_minus_t


def _sympy_knot_polynomial(pres):
    """gcd of all (n-1)-minors of the full Fox matrix (every relator, every generator)."""
    eps = Augmentation.standard(pres)
    n = pres.generator_count
    t = sp.Symbol("t1")
    rows = [[sum(c * t ** e[0] for e, c in x.items()) for x in fox_row(r, eps, list(range(n)))]
            for r in pres.all_crossing_relators()]
    M = sp.Matrix(rows) * t ** 40
    g = 0
    for rs in itertools.combinations(range(M.rows), n - 1):
        for cs in itertools.combinations(range(n), n - 1):
            d = sp.expand(M.extract(list(rs), list(cs)).det(method="berkowitz"))
            g = sp.gcd(g, d)
    return canonical_form(from_sympy(g, 1, (t,)))


knot_words = st.lists(st.sampled_from([1, 2, -1, -2]), min_size=2, max_size=6)


@settings(max_examples=12, deadline=None)
@given(knot_words)
def test_knot_polynomial_matches_sympy_minors(letters):
    b = parse_braid(" ".join(f"s{x}" if x > 0 else f"s{-x}^-1" for x in letters), strands=3)
    assume({abs(x) for x in letters} == {1, 2})
    assume(b.num_closure_components() == 1)
    pres = wirtinger(braid_closure(b))
    assert alexander_polynomial(pres) == _sympy_knot_polynomial(pres)


def _two_component(blocks):
    # s2 only in even powers and an odd number of s1 letters: the permutation is (1 2)
    letters = [x for gen, sign, power in blocks for x in [sign * gen] * (2 if gen == 2 else power)]
    if sum(1 for x in letters if abs(x) == 1) % 2 == 0:
        letters.append(1)
    return letters + [2, 2] if 2 not in map(abs, letters) else letters


link_words = st.lists(st.tuples(st.sampled_from([1, 2]), st.sampled_from([1, -1]), st.integers(1, 2)),
                      min_size=1, max_size=5).map(_two_component)


@settings(max_examples=30, deadline=None)
@given(link_words)
def test_torres_condition(letters):
    # Delta_L(t, 1) = (t^lk - 1)/(t - 1) * Delta_K1(t): vanishes at lk = 0, else divisible by the geometric sum
    b = parse_braid(" ".join(f"s{x}" if x > 0 else f"s{-x}^-1" for x in letters), strands=3)
    assert b.num_closure_components() == 2
    d = braid_closure(b)
    delta = alexander_of(d)
    assume(delta)
    lk = d.linking_matrix()[0][1]
    at_one = delta.monomial_map([(1,), (0,)], 1)
    if lk == 0:
        assert at_one.is_zero()
    else:
        t = LaurentPoly.variable(0, 1)
        geo = sum((t ** i for i in range(abs(lk))), LaurentPoly.zero(1))
        exact_div(at_one, geo)
        assert abs(at_one.evaluate([1])) % abs(lk) == 0


vectors = st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6)), min_size=1, max_size=5)


@given(vectors)
def test_lattice_index_is_gcd_of_maximal_minors(vs):
    g = 0
    for rows in itertools.combinations(vs, 3):
        g = math.gcd(g, int(sp.Matrix(rows).det()))
    assert lattice_index(vs, 3) == g
    basis = hermite_basis(vs, 3)
    assert [c for c, _ in basis] == sorted(c for c, _ in basis)
