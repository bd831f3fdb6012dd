import numpy as np
import pytest
from hypothesis import given, strategies as st

from surfmcg import atlas, mcg
from surfmcg.atlas import SurfaceSpec

S2 = SurfaceSpec(2, 1)
NAMES = ["a:1", "b:1", "a:2", "b:2", "A:3", "c:1", "B:0"]


def test_twist_chirality():
    t = mcg.twist("a:1", S2)
    assert t.apply((atlas.B(1),)) == (-atlas.A(1), atlas.B(1))
    assert t.inverse().apply((atlas.B(1),)) == (atlas.A(1), atlas.B(1))


def test_twist_fixes_own_curve():
    for n in NAMES:
        w = atlas.curve_word(n, S2)
        assert mcg.twist(n, S2).apply(w) == w


def test_compose_order():
    f, g = mcg.twist("a:1", S2), mcg.twist("b:1", S2)
    w = (atlas.B(1),)
    assert mcg.compose(f, g).apply(w) == f.apply(g.apply(w))
    assert mcg.equal(mcg.product([f, g], S2), mcg.compose(f, g))


def test_non_simple_word_rejected():
    with pytest.raises(mcg.UnsupportedCurve):
        mcg.word_twist(S2, (1, 1))


def test_closed_trivial_on_closed_relation():
    # (t_{A1} ... t_{A4})^10 is the boundary twist, trivial after capping
    f = mcg.chain_product([f"A:{i}" for i in range(1, 5)], S2) ** 10
    assert mcg.closed_trivial(f) is True
    assert mcg.closed_trivial(mcg.twist("a:1", S2)) is False


twist_seq = st.lists(st.tuples(st.sampled_from(NAMES), st.sampled_from([1, -1])), min_size=1, max_size=6)


def _build(seq):
    return mcg.product([mcg.twist(n, S2, s) for n, s in seq], S2)


@given(twist_seq)
def test_inverse_is_inverse(seq):
    f = _build(seq)
    assert mcg.equal(mcg.compose(f, mcg.invert(f)), mcg.identity(S2))


@given(twist_seq, twist_seq)
def test_homology_action_is_multiplicative(s1, s2):
    f, g = _build(s1), _build(s2)
    lhs = mcg.homology_action(mcg.compose(f, g))
    assert np.array_equal(lhs, mcg.homology_action(f) @ mcg.homology_action(g))
    assert mcg.is_symplectic(lhs)


@given(st.sampled_from(NAMES))
def test_transvection_formula(n):
    v = atlas.h1_class(atlas.curve_word(n, S2), 2)
    assert np.array_equal(mcg.homology_action(mcg.twist(n, S2)), mcg.transvection(v))
