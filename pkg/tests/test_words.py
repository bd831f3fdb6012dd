from hypothesis import given, strategies as st

from surfmcg.words import (
    INCONCLUSIVE, cyclic_reduce, format_letters, free_conjugate, free_reduce, inverse, parse_letters,
    presentation_l, surface_context, surface_equal, surface_relator, syllable_length, syllables,
)

letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3, 4, -4]), max_size=30).map(tuple)


def test_free_reduce_cancels():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert free_reduce(()) == ()


def test_parse_and_format():
    w = parse_letters("a2 a1 a2^2 a5^-1 a4^-3")
    assert w == (3, 1, 3, 3, -9, -7, -7, -7)
    assert parse_letters(format_letters(w)) == w
    assert format_letters(()) == "1"


def test_syllables_example():
    w = parse_letters("a2 a1 a2^2 a5^-1 a4^-3")
    assert syllables(w) == [(3, 1), (1, 1), (3, 2), (9, -1), (7, -3)]
    assert syllable_length(w) == 5
    assert presentation_l([w, parse_letters("a3^-1 a2^-1")]) == 5


def test_surface_relator_trivial():
    ctx = surface_context(2)
    assert ctx.is_trivial(surface_relator(2))
    assert not ctx.is_trivial((1, 2))
    assert surface_equal((1, 2, -1), (1, 2, -1), ctx)


def test_surface_conjugacy_decided_instance():
    ctx = surface_context(2)
    assert ctx.conjugate((1, 2), (2, 1)) is True
    res = ctx.conjugate((1,), (2,))
    assert res is False or res is INCONCLUSIVE


@given(letters)
def test_reduce_idempotent(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert free_reduce(r + inverse(r)) == ()


@given(letters)
def test_cyclic_reduce_is_conjugate(w):
    r = free_reduce(w)
    c = cyclic_reduce(r)
    ok, _ = free_conjugate(r, c)
    assert ok


@given(letters)
def test_format_roundtrip(w):
    r = free_reduce(w)
    assert parse_letters(format_letters(r)) == r
