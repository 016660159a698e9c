from importlib.resources import files

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from twistalex.errors import ParseError
from twistalex.fox import Word
from twistalex.links import (braid_closure, braid_closure_with_axis, load_link, parse_braid, parse_pd,
                             wirtinger)
from twistalex.twisted import PermutationRep, enumerate_permutation_reps, validate_rep


def _data(name):
    return files("twistalex").joinpath("data", name).read_text()


def test_parse_braid_grammar():
    b = parse_braid("(s1 s2)^7 s1^-2")
    assert b.strands == 3
    assert len(b) == 16
    assert parse_braid("1 2 -1") == parse_braid("s1 s2 s1^-1")
    assert str(parse_braid("s1^2 s2^-1")) == "s1 s1 s2^-1"
    assert parse_braid("s1", strands=4).strands == 4


@pytest.mark.parametrize("text,pos", [("s1 s0", 4), ("s1 x2", 3), ("(s1 s2", 6), ("s1^", 2)])
def test_braid_parse_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse_braid(text)
    assert info.value.position == pos


def test_braid_strand_count_error():
    with pytest.raises(ParseError):
        parse_braid("s3", strands=3)


@pytest.mark.parametrize("text", ["PD[X[1,2,3]]", "PD[X[1,2,3,4]]", "foo X[1,1,2,2]", "PD[]"])
def test_pd_parse_errors(text):
    with pytest.raises(ParseError):
        parse_pd(text)


@pytest.mark.parametrize("name,components,lk", [
    ("trefoil.pd", 1, [[0]]),
    ("figure8.pd", 1, [[0]]),
    ("hopf.pd", 2, [[0, -1], [-1, 0]]),
    ("whitehead.pd", 2, [[0, 0], [0, 0]]),
    ("borromean.pd", 3, [[0, 0, 0]] * 3),
    ("pretzel_axis.pd", 2, [[0, 3], [3, 0]]),
])
def test_bundled_pd_files(name, components, lk):
    d = parse_pd(_data(name))
    assert d.num_components == components
    assert d.linking_matrix() == lk


@pytest.mark.parametrize("name", ["trefoil.pd", "figure8.pd", "hopf.pd", "whitehead.pd", "borromean.pd",
                                  "pretzel_axis.pd"])
def test_pd_round_trip(name):
    d = parse_pd(_data(name))
    d2 = parse_pd(d.to_pd())
    assert d2.num_components == d.num_components
    assert d2.linking_matrix() == d.linking_matrix()
    assert sorted(x.sign for x in d2.crossings) == sorted(x.sign for x in d.crossings)


braid_words = st.lists(st.sampled_from([1, 2, -1, -2, 3, -3]), min_size=1, max_size=10)


@settings(max_examples=40, deadline=None)
@given(braid_words)
def test_braid_closure_round_trips_through_pd(letters):
    touched = {abs(x) - 1 for x in letters} | {abs(x) for x in letters}
    assume(touched == set(range(max(touched) + 1)))
    text = " ".join(f"s{x}" if x > 0 else f"s{-x}^-1" for x in letters)
    d = braid_closure(parse_braid(text))
    d2 = parse_pd(d.to_pd())
    assert d2.num_components == d.num_components
    assert d2.linking_matrix() == d.linking_matrix()
    assert d2.writhe() == d.writhe()


def test_axis_links_every_strand_positively():
    for text, n in [("s1 s2 s1^-2", 3), ("s1^3", 2), ("s1 s2 s3", 4)]:
        d = braid_closure_with_axis(parse_braid(text))
        assert d.linking_matrix()[-1][-1] == 0
        assert sum(d.linking_matrix()[-1]) == n


def test_closure_component_count_matches_permutation():
    for text in ["s1 s2", "s1^2 s2^2", "(s1 s2^-1)^3", "s1 s3"]:
        b = parse_braid(text)
        assert braid_closure(b).num_components == b.num_closure_components()


def test_wirtinger_shape_and_surgery_ordering():
    pres = wirtinger(braid_closure_with_axis(parse_braid("s1 s2 s1^-2")))
    assert len(pres.relators) == pres.generator_count - 1
    # surgery meridian is the last generator
    assert pres.component_meridians[-1] == pres.generator_count - 1
    assert pres.generator_component[-1] == pres.component_count - 1


@pytest.mark.parametrize("text,comp", [("s1 s2 s1^-2", None), ("s1 s1 s2^-1 s1 s2^-1", 1), ("(s1 s2^-1)^3", 0)])
def test_longitude_commutes_with_meridian(text, comp):
    d = braid_closure_with_axis(parse_braid(text)) if comp is None else braid_closure(parse_braid(text))
    pres = wirtinger(d, surgery_component=comp)
    lam = pres.longitude()
    mu = Word.gen(pres.component_meridians[-1])
    assert sum(lam.exponent_sum(g) for g in pres.generators_of(pres.component_count - 1)) == 0
    for rho in enumerate_permutation_reps(pres, 3, max_results=30):
        a = rho.of_word(lam * mu)
        b = rho.of_word(mu * lam)
        assert a == b


def test_every_crossing_relator_holds_in_reps():
    pres = wirtinger(load_link(pd=_data("trefoil.pd")))
    reps = enumerate_permutation_reps(pres, 3, transitive=True)
    assert reps
    for rho in reps:
        assert validate_rep(pres, rho) == []
    bad = PermutationRep(((1, 0, 2), (0, 2, 1), (0, 2, 1)), 3)
    assert validate_rep(pres, bad)


def test_load_link_requires_one_source():
    with pytest.raises(ValueError):
        load_link()
    with pytest.raises(ValueError):
        load_link(braid="s1", pd="PD[X[1,2,2,1]]")
