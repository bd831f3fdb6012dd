import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from surfmcg import atlas, mcg, relators
from surfmcg import factorization as fz
from surfmcg.atlas import SurfaceSpec

W22 = relators.w2(2).as_factorization()
S = W22.spec


def test_move_right_then_left_is_identity():
    for i in range(1, len(W22)):
        back = fz.hurwitz_move(fz.hurwitz_move(W22, i, "right"), i, "left")
        assert back.same_as(W22)


def test_move_between_disjoint_curves_keeps_words():
    rho = fz.from_names(["a:1", "a:2"], SurfaceSpec(2, 1))
    moved = fz.hurwitz_move(rho, 1, "right")
    assert [fz.curve_class(f.curve.word) for f in moved] == [fz.curve_class(f.curve.word) for f in reversed(rho.factors)]


def test_move_index_out_of_range():
    with pytest.raises(IndexError):
        fz.hurwitz_move(W22, len(W22))


@given(st.lists(st.tuples(st.integers(1, len(W22) - 1), st.sampled_from(["right", "left"])), max_size=6))
def test_product_invariant_under_moves(moves):
    rho = W22
    for i, d in moves:
        rho = fz.hurwitz_move(rho, i, d)
    assert fz.verify(rho)


def test_hundred_random_moves():
    # Hurwitz orbits grow words exponentially, so the walk only takes moves that keep words short
    rng = random.Random(7)
    rho, n = W22, 0
    while n < 100:
        cand = fz.hurwitz_move(rho, rng.randrange(1, len(W22)), rng.choice(["right", "left"]))
        if max(len(f.curve.word) for f in cand) <= 40:
            rho, n = cand, n + 1
    assert fz.verify(rho)


@given(st.integers(0, len(W22) - 1))
def test_cyclic_permutation_of_central_product(k):
    # the product is a boundary multitwist, which is central
    assert fz.verify(fz.cyclic_permute(W22, k))


def test_simultaneous_conjugate():
    assert fz.simultaneous_conjugate(W22, mcg.identity(S)).same_as(W22)
    phi = mcg.product([mcg.twist("a:1", S), mcg.twist("b:2", S, -1)], S)
    rho = fz.simultaneous_conjugate(W22, phi)
    assert fz.verify(rho)
    M = mcg.homology_action(phi)
    for old, new in zip(W22, rho):
        v, w = atlas.h1_class(old.curve.word, 2), atlas.h1_class(new.curve.word, 2)
        assert np.array_equal(M @ v, w)
    single = fz.simultaneous_conjugate(fz.from_names(["a:2"], S), phi)
    assert mcg.equal(single.factors[0].twist(), mcg.image_twist(phi, atlas.atlas_curve("a:2", S)))


S21 = SurfaceSpec(2, 1)
BRAID = relators.NamedRelator("braid", {}, fz.from_names(["a:1", "b:1", "a:1"], S21), fz.from_names(["b:1", "a:1", "b:1"], S21))


def test_trivial_substitution_toy():
    rho = fz.from_names(["a:2", "b:1", "a:1", "b:1"], S21)
    assert fz.find_subword(rho, list(BRAID.right.factors)) == [2]
    out = fz.twisted_substitution(rho, BRAID, None, 2)
    assert out.labels() == ["T[a:2]", "T[a:1]", "T[b:1]", "T[a:1]"]
    assert mcg.equal(fz.evaluate(out), fz.evaluate(rho))


@given(st.lists(st.tuples(st.sampled_from(["a:2", "b:2"]), st.sampled_from([1, -1])), min_size=1, max_size=4))
def test_twisted_substitution_preserves_product(seq):
    phi = mcg.product([mcg.twist(n, S21, e) for n, e in seq], S21)
    rho = fz.from_names(["b:1", "a:1", "b:1", "b:2"], S21)
    out = fz.twisted_substitution(rho, BRAID, phi, 1)
    assert mcg.equal(fz.evaluate(out), fz.evaluate(rho))


def test_twisted_substitution_needs_fixed_curves():
    rho = fz.from_names(["b:1", "a:1", "b:1"], S21)
    with pytest.raises(fz.SubstitutionError):
        fz.twisted_substitution(rho, BRAID, mcg.twist("a:1", S21), 1)


def test_substitution_mismatch():
    eta = relators.v_relator(1, 6, 1, 2)
    W = relators.w2(6).as_factorization()
    with pytest.raises(fz.SubstitutionError):
        fz.twisted_substitution(W, eta, None, 1)


def test_capping_w2_gives_positive_relation():
    rho = relators.w2(2).as_factorization()
    once = fz.blow_down(rho, 1)
    twice = fz.blow_down(once, 1)
    assert once.spec.boundaries == 1 and twice.spec.boundaries == 0
    assert twice.positive and len(twice) == len(rho)
    assert fz.verify(once)


def test_blow_down_needs_minus_one_section():
    rho = fz.Factorization(S, (), (0, 0))
    with pytest.raises(ValueError):
        fz.blow_down(rho, 1)


def test_capping_is_functorial_on_a_toy_pair():
    f = mcg.product([mcg.twist("a:1", S), mcg.twist("b:2", S)], S)
    g = mcg.product([mcg.twist("A:3", S), mcg.twist("c:1", S, -1)], S)
    for i in (1, 2):
        lhs = fz.cap_mapping_class(mcg.compose(f, g), i)
        rhs = mcg.compose(fz.cap_mapping_class(f, i), fz.cap_mapping_class(g, i))
        assert mcg.equal(lhs, rhs)


def test_sections_report():
    assert fz.sections_report(W22) == [(1, -1), (2, -1)]
    bad = W22.with_factors(W22.factors[1:])
    assert fz.sections_report(bad) == "unverified"


def test_file_roundtrip_atlas_and_images():
    s = SurfaceSpec(6, 2, h1=1, h2=2)
    rho = relators.w2_substituted(6, 1, 2, mcg.twist("b:2", s))
    text = fz.format_factorization(rho)
    back = fz.parse_factorization(text)
    assert back.same_as(rho)
    assert fz.format_factorization(back) == text


def test_file_roundtrip_symbolic():
    s = SurfaceSpec(2, 1)
    rho = fz.Factorization(s, (fz.Factor(atlas.symbolic_curve("R1", (1, 2), s)), fz.Factor(atlas.atlas_curve("a:1", s), -1)))
    back = fz.parse_factorization(fz.format_factorization(rho))
    assert back.symbolic and back.same_as(rho)
    assert back.factors[0].curve.label == "sym:R1"


def test_parse_errors():
    with pytest.raises(ValueError):
        fz.parse_factorization("T[a:1]\n")
    with pytest.raises(ValueError):
        fz.parse_factorization("surface g=2 b=1\nbogus\n")
