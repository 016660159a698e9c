import pytest
import sympy as sp

from conftest import CONSTANT_FAMILIES, ZERO_LINKING_FAMILIES, symbols, to_sympy
from twistalex import perms as P
from twistalex.alexander import alexander_of
from twistalex.errors import PresentationError, RepresentationError
from twistalex.family import (SurgerySpec, explicit_member, family_matrix, interpolate_q, is_constant_family,
                              longitude_linking, substitution_family, surgery_presentation,
                              twist_family_polynomial)
from twistalex.laurent import LaurentPoly, canonical_form, parse_poly
from twistalex.links import braid_closure, braid_closure_with_axis, parse_braid, wirtinger
from twistalex.twisted import enumerate_permutation_reps


def _family(name, table=ZERO_LINKING_FAMILIES):
    word, comp = table[name]
    return wirtinger(braid_closure(parse_braid(word)), surgery_component=comp)


@pytest.fixture(scope="module")
def borromean():
    return _family("borromean")


def test_borromean_family_closed_form(borromean):
    t1, t2 = LaurentPoly.gens(2)
    fam = twist_family_polynomial(borromean)
    assert fam.P.degree == 1
    assert fam.P.coefficient(0).is_zero()
    assert canonical_form(fam.P.coefficient(1)) == canonical_form((t1 - 1) * (t2 - 1))
    for q in range(-2, 4):
        assert fam.at(q) == explicit_member(borromean, q)


def test_whitehead_family_gives_twist_knots():
    pres = _family("whitehead")
    fam = twist_family_polynomial(pres)
    t = LaurentPoly.variable(0, 1)
    assert fam.at(0) == LaurentPoly.one(1)
    assert fam.at(1) == parse_poly("t^2 - t + 1")
    assert fam.at(-1) == parse_poly("t^2 - 3t + 1")
    for q in range(-3, 4):
        assert fam.at(q) == canonical_form(t + (t - 1) * (t - 1) * q)


@pytest.mark.parametrize("name", sorted(ZERO_LINKING_FAMILIES))
def test_untwisted_structure(name):
    pres = _family(name)
    fam = twist_family_polynomial(pres, q_values=range(-2, 4))
    assert fam.P.degree <= 1
    assert fam.limit_poly == fam.modified_determinant
    assert fam.per_q[3] == explicit_member(pres, 3)


@pytest.mark.parametrize("name", ["whitehead", "borromean", "trefoil_circle"])
def test_leading_coefficient_matches_modified_matrix_in_sympy(name):
    # independent route: expand both symbolic matrices with sympy
    pres = _family(name)
    m, eps, rho, _ = family_matrix(pres)
    mm, _, _, _ = family_matrix(pres, modified=True)
    syms = symbols(m.nvars)
    q = syms[-1]
    M = sp.Matrix([[to_sympy(x, syms) for x in row] for row in m.rows])
    MM = sp.Matrix([[to_sympy(x, syms) for x in row] for row in mm.rows])
    top = sp.Poly(sp.expand(M.det(method="berkowitz")), q)
    coeff = top.coeff_monomial(q ** rho.N) if top.degree() >= rho.N else 0
    assert sp.expand(coeff - MM.det(method="berkowitz")) == 0
    assert top.degree() <= rho.N


def test_interpolation_matches_symbolic_raw(borromean):
    fam = twist_family_polynomial(borromean)
    vals = {q: explicit_member(borromean, q, raw=True) for q in range(0, 3)}
    assert interpolate_q(vals, fam.raw.nvars) == fam.raw


@pytest.mark.parametrize("name", sorted(CONSTANT_FAMILIES))
def test_constant_families(name):
    pres = _family(name, CONSTANT_FAMILIES)
    assert is_constant_family(pres)
    fam = twist_family_polynomial(pres)
    assert fam.at(0) == fam.at(7)


def test_linked_component_is_rejected():
    pres = wirtinger(braid_closure_with_axis(parse_braid("s1 s2 s1^-2")), surgery_component=-1)
    assert longitude_linking(pres) == (3,)
    with pytest.raises(PresentationError, match="links the others"):
        twist_family_polynomial(pres)


def test_surgery_relator_text():
    pres = wirtinger(braid_closure_with_axis(parse_braid("s1 s2 s1^-2")), surgery_component=-1)
    sp_ = surgery_presentation(pres, None)
    rel = sp_.notes["surgery_relator"]
    assert "q" in str(rel)
    assert rel.at(2) == surgery_presentation(pres, 2).relators[-1]


@pytest.fixture(scope="module")
def pretzel_axis():
    return wirtinger(braid_closure_with_axis(parse_braid("s1 s2 s1^-2")), surgery_component=-1)


def test_substitution_matches_explicit_surgery(pretzel_axis):
    fam = substitution_family(pretzel_axis, range(1, 9))
    for q in range(1, 9):
        assert fam.members[q] == explicit_member(pretzel_axis, q)


@pytest.mark.parametrize("q", [1, 2, 5])
def test_substitution_matches_twisted_braid_closures(pretzel_axis, q):
    fam = substitution_family(pretzel_axis, [q])
    direct = alexander_of(braid_closure(parse_braid(f"(s1 s2)^{3 * q} s1 s2 s1^-2")))
    assert fam.members[q] == direct


def test_substitution_q2_is_lehmer_at_minus_t(pretzel_axis):
    fam = substitution_family(pretzel_axis, [2])
    assert fam.members[2] == parse_poly("t^10 - t^9 + t^7 - t^6 + t^5 - t^4 + t^3 - t + 1")


@pytest.mark.parametrize("q", [1, 2, 3])
def test_trivial_braid_axis_gives_torus_links(q):
    # closure of the trivial 2-braid plus axis: 1/q surgery gives the closure of s1^(2q)
    pres = wirtinger(braid_closure_with_axis(parse_braid("s1 s1^-1")), surgery_component=-1)
    fam = substitution_family(pres, [q])
    assert fam.members[q] == alexander_of(braid_closure(parse_braid(f"s1^{2 * q}")))


@pytest.mark.parametrize("name", ["whitehead", "trefoil_circle"])
def test_twisted_family_matches_explicit_members(name):
    pres = _family(name)
    N = 3
    fixed = {g: P.identity(N) for g in pres.generators_of(pres.component_count - 1)}
    reps = enumerate_permutation_reps(pres, N, transitive=True, fixed=fixed, max_results=3)
    assert reps
    for rho in reps:
        fam = twist_family_polynomial(pres, rho, q_values=[-1, 1, 2])
        assert fam.P.degree <= N
        for q in (-1, 1, 2):
            assert fam.at(q) == explicit_member(pres, fam.r * q, rho)


def test_twisted_family_rejects_rep_moving_surgery_meridians():
    pres = _family("whitehead")
    reps = [r for r in enumerate_permutation_reps(pres, 3, transitive=True)
            if any(r.images[g] != P.identity(3) for g in pres.generators_of(pres.component_count - 1))]
    assert reps
    with pytest.raises(RepresentationError):
        twist_family_polynomial(pres, reps[0])


def test_surgery_spec_reorders_component():
    dg = braid_closure(parse_braid("s1 s1 s2^-1 s1 s2^-1"))
    spec = SurgerySpec(dg, surgery_component=1)
    pres = spec.presentation()
    assert pres.surgery_component == pres.component_count - 1
    assert twist_family_polynomial(spec).P == twist_family_polynomial(pres).P
