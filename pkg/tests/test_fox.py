import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistalex.errors import ParseError
from twistalex.fox import (GroupRingElem, Word, augment, eps_rho_apply, fox_block_row, fox_derivative,
                           fox_row, parse_word)
from twistalex.laurent import LaurentPoly
from twistalex.matrix import PolyMatrix

RANK = 4
letters = st.tuples(st.integers(0, RANK - 1), st.sampled_from([1, -1]))
words = st.lists(letters, max_size=25).map(Word)
# Abelianization onto Z^2 with mixed images.
EPS = [(1, 0), (0, 1), (1, 1), (-1, 2)]


def test_word_reduction_and_text():
    w = parse_word("x0 x1 x1^-1 x2^3")
    assert w == Word([(0, 1), (2, 3)])
    assert str(w) == "x0 x2^3"
    assert (w * w.inverse()) == Word()
    assert parse_word("1") == Word()
    with pytest.raises(ParseError):
        parse_word("x0 y1")


def test_fox_derivative_small_cases():
    x0, x1 = Word.gen(0), Word.gen(1)
    # d(x0 x1 x0^-1)/dx0 = 1 - x0 x1 x0^-1
    w = x0 * x1 * x0.inverse()
    expect = GroupRingElem({Word(): 1, w: -1})
    assert fox_derivative(w, 0) == expect
    assert fox_derivative(w, 1) == GroupRingElem({x0: 1})
    assert fox_derivative(x0 ** 3, 0) == GroupRingElem({Word(): 1, x0: 1, x0 ** 2: 1})


@given(words)
def test_fundamental_identity_in_group_ring(w):
    total = GroupRingElem()
    for j in range(RANK):
        xj = GroupRingElem.from_word(Word.gen(j))
        total = total + fox_derivative(w, j) * (xj - GroupRingElem.from_word(Word()))
    assert total == GroupRingElem.from_word(w) - GroupRingElem.from_word(Word())


@given(words, words, st.integers(0, RANK - 1))
def test_product_rule(u, v, j):
    lhs = fox_derivative(u * v, j)
    rhs = fox_derivative(u, j) + u * fox_derivative(v, j)
    assert lhs == rhs


@given(words)
def test_fox_row_matches_augmented_derivatives(w):
    row = fox_row(w, EPS, list(range(RANK)))
    for j in range(RANK):
        assert row[j] == augment(fox_derivative(w, j), EPS)


@given(words)
def test_block_row_matches_eps_rho(w):
    rho = [(1, 2, 0), (0, 2, 1), (1, 0, 2), (0, 1, 2)]
    block = fox_block_row(w, EPS, rho, list(range(RANK)))
    N = 3
    for j in range(RANK):
        m = eps_rho_apply(fox_derivative(w, j), EPS, rho)
        sub = PolyMatrix([r[j * N:(j + 1) * N] for r in block], 2)
        assert sub.rows == m.rows


def test_trivial_rep_block_row_is_plain_row():
    w = parse_word("x0 x1 x0^-1 x2^-1")
    row = fox_row(w, EPS, [0, 1, 2])
    block = fox_block_row(w, EPS, [(0,)] * RANK, [0, 1, 2])
    assert block == [row]
    assert all(isinstance(x, LaurentPoly) for x in row)
