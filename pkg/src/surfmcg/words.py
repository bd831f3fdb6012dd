"""Free-group and surface-group word arithmetic.

Letters are nonzero integers: ``+i`` is the i-th generator, ``-i`` its inverse.
On a surface of genus g the generators are ordered a_1, b_1, ..., a_g, b_g, so
a_i has index 2i-1 and b_i has index 2i.  Extra generators of bordered models
come after index 2g.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

Letters = tuple  # tuple[int, ...]


class UnsupportedContext(ValueError):
    pass


class _Inconclusive:
    """Outcome of a bounded search that neither proved nor refuted the claim."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __bool__(self):
        raise TypeError("inconclusive result has no truth value; compare with `is INCONCLUSIVE`")

    def __repr__(self):
        return "INCONCLUSIVE"


INCONCLUSIVE = _Inconclusive()


# ---------------------------------------------------------------- tuple level

def free_reduce(w: Iterable[int]) -> Letters:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w: Sequence[int]) -> Letters:
    return tuple(-x for x in reversed(w))


def cyclic_split(w: Sequence[int]) -> tuple[Letters, Letters]:
    """Return (v, core) with w = v core v^-1 freely and core cyclically reduced."""
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[:i], w[i:j]


def cyclic_reduce(w: Sequence[int]) -> Letters:
    return cyclic_split(w)[1]


def rotations(w: Letters) -> list[Letters]:
    return [w[i:] + w[:i] for i in range(max(len(w), 1))]


def _as_letters(w) -> Letters:
    return w.letters if isinstance(w, Word) else tuple(w)


# ---------------------------------------------------------------- Word value

_TOKEN = re.compile(r"^([abx])(\d+)(?:\^(-?\d+))?$")


def letter_name(x: int) -> str:
    i = abs(x)
    name = f"a{(i + 1) // 2}" if i % 2 else f"b{i // 2}"
    return name if x > 0 else name + "^-1"


def format_letters(w: Sequence[int], alphabet: str = "surface") -> str:
    """Serialize with exponent runs collapsed, e.g. ``a2 a1 a2^2 a5^-1``."""
    if not w:
        return "1"
    parts = []
    k = 0
    while k < len(w):
        j = k
        while j < len(w) and w[j] == w[k]:
            j += 1
        x, e = abs(w[k]), (j - k) * (1 if w[k] > 0 else -1)
        base = f"x{x}" if alphabet == "x" else letter_name(x)
        parts.append(base if e == 1 else f"{base}^{e}")
        k = j
    return " ".join(parts)


def parse_letters(text: str) -> Letters:
    """Parse the whitespace token grammar (``a3``, ``b2^-1``, ``x1^2``; ``1`` is empty)."""
    out: list[int] = []
    for tok in text.replace("*", " ").split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        kind, idx, exp = m.group(1), int(m.group(2)), int(m.group(3) or 1)
        if idx < 1:
            raise ValueError(f"bad generator index in {tok!r}")
        gen = {"a": 2 * idx - 1, "b": 2 * idx, "x": idx}[kind]
        out.extend([gen if exp > 0 else -gen] * abs(exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: Letters
    rank: int

    def __post_init__(self):
        for x in self.letters:
            if x == 0 or abs(x) > self.rank:
                raise ValueError(f"generator {x} outside alphabet of size {self.rank}")

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return reduce(self.letters + other.letters, max(self.rank, other.rank))

    def inverse(self) -> "Word":
        return Word(inverse(self.letters), self.rank)

    def __str__(self):
        return format_letters(self.letters)

    @classmethod
    def parse(cls, text: str, rank: int) -> "Word":
        return reduce(parse_letters(text), rank)


def reduce(raw: Iterable, rank: int | None = None) -> Word:
    """Freely reduce a sequence of signed letters (ints or (index, sign) pairs)."""
    seq = []
    for x in raw:
        if isinstance(x, tuple):
            i, s = x
            if s not in (1, -1):
                raise ValueError(f"exponent sign must be +-1, got {s}")
            x = i * s
        seq.append(int(x))
    if rank is None:
        rank = max((abs(x) for x in seq), default=0)
    for x in seq:
        if x == 0 or abs(x) > rank:
            raise ValueError(f"generator index {x} outside alphabet of size {rank}")
    return Word(free_reduce(seq), rank)


def free_conjugate(u, v) -> tuple[bool, Letters | None]:
    """Decide conjugacy in the free group; witness w has u = w v w^-1."""
    u, v = _as_letters(u), _as_letters(v)
    pu, cu = cyclic_split(u)
    pv, cv = cyclic_split(v)
    if len(cu) != len(cv):
        return False, None
    if not cu:
        return True, ()
    for i in range(len(cv)):
        if cv[i:] + cv[:i] == cu:
            # cu = cv[:i]^-1 cv cv[:i]
            w = free_reduce(pu + inverse(cv[:i]) + inverse(pv))
            return True, w
    return False, None


# ---------------------------------------------------------------- surface groups

def surface_relator(genus: int) -> Letters:
    """Word of c_g: c_i = b_i^-1 c_{i-1} a_i b_i a_i^-1 with c_0 empty."""
    w: Letters = ()
    for k in range(1, genus + 1):
        a, b = 2 * k - 1, 2 * k
        w = free_reduce((-b,) + w + (a, b, -a))
    return w


class SurfaceGroupContext:
    """pi_1 of the closed genus-g surface with its one-relator presentation.

    The standard relator is C'(1/6) for g >= 2, so Dehn's algorithm solves the
    word problem and cyclic Dehn reduction drives the conjugacy search.
    """

    def __init__(self, genus: int):
        if genus < 2:
            raise UnsupportedContext("surface-group decisions need genus >= 2")
        self.genus = genus
        self.relator = cyclic_reduce(surface_relator(genus))
        n = len(self.relator)
        assert n == 4 * genus
        self._n = n
        table: dict[Letters, Letters] = {}
        for r in (self.relator, inverse(self.relator)):
            for rot in rotations(r):
                for L in range(n // 2 + 1, n + 1):
                    table.setdefault(rot[:L], inverse(rot[L:]))
        self._table = table
        self._rel_rots = [rot for r in (self.relator, inverse(self.relator)) for rot in rotations(r)]

    @property
    def rank(self):
        return 2 * self.genus

    def dehn(self, w: Sequence[int]) -> Letters:
        """Dehn's algorithm: replace any subword longer than half a relator."""
        n, T = self._n, self._table
        out: list[int] = []
        stack = list(reversed(tuple(w)))
        while stack:
            x = stack.pop()
            if out and out[-1] == -x:
                out.pop()
                continue
            out.append(x)
            for L in range(n // 2 + 1, min(n, len(out)) + 1):
                rep = T.get(tuple(out[-L:]))
                if rep is not None:
                    del out[-L:]
                    stack.extend(reversed(rep))
                    break
        return tuple(out)

    def cyclic_dehn(self, w: Sequence[int]) -> tuple[Letters, Letters]:
        """Return (v, core): w = v core v^-1 in the group, core cyclically Dehn-reduced."""
        n = self._n
        v: Letters = ()
        w = self.dehn(w)
        while True:
            while len(w) >= 2 and w[0] == -w[-1]:
                v = v + (w[0],)
                w = w[1:-1]
            m = len(w)
            shifts = range(1, m) if m < 2 * n else (m // 2,)
            for i in shifts:
                d = self.dehn(w[i:] + w[:i])
                if len(d) < m:
                    v = free_reduce(v + w[:i])
                    w = d
                    break
            else:
                return v, w

    def is_trivial(self, w) -> bool:
        return self.dehn(free_reduce(_as_letters(w))) == ()

    def core(self, w) -> Letters:
        return self.cyclic_dehn(free_reduce(_as_letters(w)))[1]

    def conjugate(self, u, v, budget: int = 2000, unoriented: bool = False):
        """True / False / INCONCLUSIVE for conjugacy of u and v."""
        u, v = _as_letters(u), _as_letters(v)
        if _abelian(u, self.rank) != _abelian(v, self.rank):
            if not unoriented or _abelian(u, self.rank) != _abelian(inverse(v), self.rank):
                return False
        targets = [self.core(v)]
        if unoriented:
            targets.append(self.core(inverse(v)))
        cu = self.core(u)
        goal = {_canon(t) for t in targets}
        if _canon(cu) in goal:
            return True
        if not cu and all(not t for t in targets):
            return True
        # bounded search: insert one relator at a cyclic position, re-reduce
        cap = max(len(cu), max(len(t) for t in targets)) + self._n
        seen = {_canon(cu)}
        queue = deque([cu])
        while queue and len(seen) < budget:
            x = queue.popleft()
            for i in range(max(len(x), 1)):
                rot = x[i:] + x[:i]
                for rel in self._rel_rots:
                    y = self.core(rot + rel)
                    if len(y) > cap:
                        continue
                    key = _canon(y)
                    if key in goal:
                        return True
                    if key not in seen:
                        seen.add(key)
                        queue.append(y)
        return INCONCLUSIVE


def _canon(w: Letters) -> Letters:
    return min(rotations(w)) if w else ()


def _abelian(w: Sequence[int], rank: int) -> tuple:
    v = [0] * rank
    for x in w:
        if abs(x) <= rank:
            v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


@lru_cache(maxsize=None)
def surface_context(genus: int) -> SurfaceGroupContext:
    return SurfaceGroupContext(genus)


def surface_equal(u, v, ctx: SurfaceGroupContext) -> bool:
    return ctx.is_trivial(_as_letters(u) + inverse(_as_letters(v)))


def surface_conjugate(u, v, ctx: SurfaceGroupContext, budget: int = 2000):
    return ctx.conjugate(u, v, budget=budget)


# ---------------------------------------------------------------- syllables

def syllables(w: Sequence[int]) -> list[tuple[int, int]]:
    """Maximal runs (generator, exponent) of a freely reduced word."""
    w = free_reduce(_as_letters(w))
    out: list[list[int]] = []
    for x in w:
        g, s = abs(x), (1 if x > 0 else -1)
        if out and out[-1][0] == g:
            out[-1][1] += s
        else:
            out.append([g, s])
    return [(g, e) for g, e in out]


def syllable_length(w) -> int:
    return len(syllables(w))


def presentation_l(relators: Iterable) -> int:
    return max((syllable_length(r) for r in relators), default=1)
