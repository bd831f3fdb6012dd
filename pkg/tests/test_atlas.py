import numpy as np
import pytest
from hypothesis import given, strategies as st

from surfmcg import atlas
from surfmcg.atlas import SurfaceSpec, curve_word, h1_class, pairing, parse_curve


def test_chain_words():
    s = SurfaceSpec(3, 1)
    assert curve_word("A:4", s) == (atlas.B(2),)
    assert curve_word("A:3", s) == (atlas.A(1), -atlas.A(2))


def test_separating_curve_is_null_homologous():
    for g in (2, 3, 4):
        s = SurfaceSpec(g, 1)
        for i in range(1, g):
            assert not h1_class(curve_word(f"c:{i}", s), g).any()


def test_b0_homology():
    v = h1_class(curve_word("B:0", SurfaceSpec(2, 1)), 2)
    assert list(v) == [0, 1, 0, 1]


def test_pairing_basis():
    e = np.eye(4, dtype=int)
    assert pairing(e[0], e[1]) == 1
    assert pairing(e[1], e[0]) == -1
    assert pairing(e[0], e[3]) == 0
    with pytest.raises(ValueError):
        pairing(e[0], np.zeros(6, dtype=int))


def test_spec_constraints():
    SurfaceSpec(6, 2, h1=1, h2=2)
    with pytest.raises(ValueError):
        SurfaceSpec(5, 2, h1=1, h2=2)
    with pytest.raises(ValueError):
        SurfaceSpec(2, 3)


def test_parameterised_curves_need_h1():
    with pytest.raises(ValueError):
        curve_word("E", SurfaceSpec(6, 2))
    s = SurfaceSpec(6, 2, h1=1, h2=2)
    assert curve_word("E", s)


def test_out_of_range():
    with pytest.raises(KeyError):
        curve_word("b:4", SurfaceSpec(3, 1))


def test_parse_curve_forms():
    s = SurfaceSpec(2, 1)
    assert parse_curve("a:1", s).word == curve_word("a:1", s)
    assert parse_curve("sym:x=a1 b1", s).kind == "symbolic"
    assert parse_curve("w[a1 a2^-1]", s).word == (1, -3)


vecs = st.lists(st.integers(-5, 5), min_size=6, max_size=6).map(np.array)


@given(vecs, vecs)
def test_pairing_antisymmetric(u, v):
    assert pairing(u, v) == -pairing(v, u)


@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3, 4, -4]), max_size=20))
def test_h1_class_is_exponent_sum(w):
    v = h1_class(w, 2)
    for j in range(4):
        assert v[j] == sum(1 if x == j + 1 else -1 if x == -(j + 1) else 0 for x in w)
