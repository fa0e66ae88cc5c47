import random

import pytest
from hypothesis import given, settings, strategies as st

from graphprod.errors import ParseError, PresentationMismatch
from graphprod.graphs import Graph, complete_graph, edgeless_graph, flower_graph
from graphprod.groups import Cyclic, Free, Integers, regular_wreath
from graphprod.oracle import oracle_equal, oracle_key, oracle_normalize
from graphprod.words import (
    EMPTY,
    CanonicalWord,
    Presentation,
    Syllable,
    ball,
    canonicalize,
    equal,
    format_word,
    in_full_subgroup,
    invert,
    is_identity,
    is_normal,
    multiply,
    normalize,
    parse_word,
    support,
    syllable_length,
)

T4Z2 = Presentation.uniform(flower_graph(4), Cyclic(2))
T4Z3 = Presentation.uniform(flower_graph(4), Cyclic(3))
MIXED = Presentation(
    flower_graph(4),
    {"b1": Integers(), "b2": Free(2), "b3": Cyclic(4), "b4": Integers(),
     "w1": Free(1), "w2": regular_wreath(Cyclic(2), 3), "w3": Cyclic(5), "w4": Integers()},
)


def W(p, text):
    return parse_word(p, text)


def test_examples():
    p = T4Z2
    assert canonicalize(p, W(p, "w1^1 . b1^1")) == W(p, "b1^1 . w1^1")
    assert normalize(p, W(p, "w1^1 . w1^1")) == ()
    assert normalize(p, W(p, "w1^1 . b1^1 . w1^1")) == W(p, "b1^1")
    assert syllable_length(p, W(p, "w1^1 . w3^1 . w1^1")) == 3
    assert equal(p, W(p, "b1^1 . w1^1"), W(p, "w1^1 . b1^1"))
    assert not equal(p, W(p, "w1^1 . w3^1"), W(p, "w3^1 . w1^1"))
    assert is_identity(p, W(p, "b2^1 . w1^1 . b2^1 . w1^1"))


def test_identity_syllables_dropped():
    p = T4Z3
    assert normalize(p, [Syllable("b1", 0), Syllable("w1", 1)]) == W(p, "w1^1")


def test_free_product_and_direct_product_extremes():
    p = Presentation.uniform(edgeless_graph(["x", "y"]), Cyclic(2))
    assert syllable_length(p, W(p, "x^1 . y^1 . x^1 . y^1")) == 4
    q = Presentation.uniform(complete_graph(3), Cyclic(2))
    assert canonicalize(q, W(q, "v3^1 . v2^1 . v1^1 . v3^1")) == W(q, "v1^1 . v2^1")


def _rand(rng, p, n):
    out = []
    for _ in range(n):
        v = rng.choice(p.vertices)
        out.append(Syllable(v, rng.choice(p.group_of[v].generators())))
    return tuple(out)


@pytest.mark.parametrize("p", [T4Z2, T4Z3], ids=["Z2", "Z3"])
def test_against_oracle_random(p):
    rng = random.Random(3)
    for _ in range(500):
        u = _rand(rng, p, rng.randint(0, 8))
        nf = normalize(p, u)
        assert is_normal(p, nf)
        assert len(nf) == len(oracle_normalize(p, u))
        assert tuple(canonicalize(p, u)) == oracle_key(p, u)


def test_mixed_kinds_against_oracle():
    rng = random.Random(5)
    gens = [Syllable(v, x) for v in MIXED.vertices for x in MIXED.group_of[v].generators()]
    gens += [Syllable(v, MIXED.group_of[v].inv(x)) for v, x in gens]
    for _ in range(300):
        u = tuple(rng.choice(gens) for _ in range(rng.randint(0, 10)))
        v = tuple(rng.choice(gens) for _ in range(rng.randint(0, 4)))
        uv = u + v + invert(MIXED, v)
        assert equal(MIXED, uv, u)
        assert oracle_equal(MIXED, uv, u)
        assert tuple(canonicalize(MIXED, u)) == oracle_key(MIXED, u)


letters = st.sampled_from([Syllable(v, 1) for v in flower_graph(4).vertices])


@settings(max_examples=300, deadline=None)
@given(st.lists(letters, max_size=8), st.lists(letters, max_size=8))
def test_equal_matches_oracle(u, v):
    assert equal(T4Z2, u, v) == oracle_equal(T4Z2, u, v)


@settings(max_examples=200, deadline=None)
@given(st.lists(letters, max_size=8))
def test_canonical_idempotent_and_round_trip(u):
    c = canonicalize(T4Z2, u)
    assert isinstance(c, CanonicalWord)
    assert canonicalize(T4Z2, tuple(c)) == c
    assert parse_word(T4Z2, format_word(T4Z2, c)) == tuple(c)
    assert is_identity(T4Z2, multiply(T4Z2, c, invert(T4Z2, c)))


def test_format_parse_mixed():
    text = "b1^-3 . b2^[x1 x2^-2] . w2^{0:1, 2:1 | [1 2 0]} . w1^[x1^5]"
    w = parse_word(MIXED, text)
    assert format_word(MIXED, w) == text
    assert format_word(MIXED, ()) == "e" and parse_word(MIXED, "e") == ()


@pytest.mark.parametrize("text", ["b1", "q^1", "b1^x", "b1^1 . ", "^1"])
def test_parse_errors(text):
    with pytest.raises((ParseError, ValueError)):
        parse_word(T4Z2, text)


def test_presentation_mismatch():
    with pytest.raises(PresentationMismatch):
        normalize(T4Z2, [("b1", 5)])
    with pytest.raises(PresentationMismatch):
        normalize(T4Z2, [("zz", 1)])
    with pytest.raises(PresentationMismatch):
        Presentation(flower_graph(4), {"b1": Cyclic(2)})


def test_support_and_full_subgroup():
    p = T4Z2
    u = W(p, "w1^1 . b3^1 . w1^1 . w2^1")
    assert support(p, u) == {"w1", "b3", "w2"}
    assert in_full_subgroup(p, W(p, "w1^1 . b1^1 . w1^1"), {"b1"})


def test_ball_counts():
    assert ball(T4Z2, 0) == [EMPTY]
    assert len(ball(T4Z2, 1)) == 9
    b2 = ball(T4Z2, 2)
    # 8 generators; ordered pairs of distinct vertices, adjacent pairs counted once
    assert len(b2) == 1 + 8 + (8 * 7 - len(flower_graph(4).edges))
    with pytest.raises(OverflowError):
        ball(T4Z2, 3, limit=50)


def test_immutability():
    with pytest.raises(AttributeError):
        T4Z2.name = "other"
