"""One-vertex ribbon-graph model of a bordered surface and Dehn twists on it.

A surface with b >= 1 boundary components deformation retracts onto a wedge of
circles thickened to a ribbon graph with a single vertex.  The cyclic order of
half-edges at that vertex is recovered from the boundary words.  A closed curve,
given as a cyclically reduced word, is drawn in minimal position by ordering
its parallel strands on each band; the twist image of a generator is then read
off from the strands it crosses.

Besides the free generators, the automorphism also tracks arcs from the first
boundary to each other boundary, so that composition stays faithful for
boundary-parallel twists.
"""
from __future__ import annotations

import functools
from typing import Sequence

from .words import Letters, cyclic_reduce, free_reduce, inverse


def _start(x: int):
    return (abs(x), 1 if x > 0 else -1)


def _end(x: int):
    return (abs(x), -1 if x > 0 else 1)


def _in_arc(S, T, X) -> bool:
    if S < T:
        return S < X < T
    return X > S or X < T


def _crosses(a, b) -> bool:
    P, Q = a
    S, T = b
    return _in_arc(S, T, P) != _in_arc(S, T, Q)


class NotSimple(ValueError):
    pass


class RibbonSurface:
    """Bordered surface presented by boundary words in a free group."""

    def __init__(self, rank: int, boundary_words: Sequence[Sequence[int]]):
        self.rank = rank
        self.boundary_words = [tuple(b) for b in boundary_words]
        succ = {}
        for bw in self.boundary_words:
            n = len(bw)
            for k in range(n):
                h = _end(bw[k])
                if h in succ:
                    raise ValueError("boundary words traverse a half-edge twice")
                succ[h] = _start(bw[(k + 1) % n])
        if len(succ) != 2 * rank:
            raise ValueError("boundary words do not cover every half-edge")
        h0 = _start(self.boundary_words[0][0])
        order = [h0]
        cur = succ[h0]
        while cur != h0:
            order.append(cur)
            cur = succ[cur]
        if len(order) != 2 * rank:
            raise ValueError("boundary words do not define a one-vertex surface")
        self.slot = {h: 2 * i + 1 for i, h in enumerate(order)}
        self.nslots = 4 * rank
        self.corners = [self.slot[_start(bw[0])] - 1 for bw in self.boundary_words]

    @property
    def n_arcs(self):
        return len(self.corners) - 1

    # strands of c on each band, ordered left to right
    def _lanes(self, c: Letters):
        m = len(c)
        per_edge: dict[int, list[int]] = {}
        for k, y in enumerate(c):
            per_edge.setdefault(abs(y), []).append(k)

        def cont(k):
            if c[k] > 0:
                return [c[(k + 1 + i) % m] for i in range(2 * m + 2)]
            return [-c[(k - 1 - i) % m] for i in range(2 * m + 2)]

        def ccw(h_from, h_to):
            return (self.slot[h_to] - self.slot[h_from]) % self.nslots

        def left_of(s, t, e):
            cur = (e, -1)
            for u, v in zip(cont(s), cont(t)):
                if u != v:
                    return ccw(cur, _start(u)) > ccw(cur, _start(v))
                cur = _end(u)
            raise NotSimple("curve word is a proper power")

        lane, count = {}, {}
        for e, ks in per_edge.items():
            ordered = sorted(ks, key=functools.cmp_to_key(lambda s, t: -1 if left_of(s, t, e) else 1))
            for L, k in enumerate(ordered):
                lane[k] = L
            count[e] = len(ks)
        return lane, count

    def chords(self, c: Letters):
        lane, count = self._lanes(c)
        m = len(c)

        def pos(k, at_end):
            y = c[k]
            n = count[abs(y)]
            h = _end(y) if at_end else _start(y)
            sub = lane[k] if h[1] == -1 else n - 1 - lane[k]
            return (self.slot[h], sub)

        return [(pos(k, True), pos((k + 1) % m, False)) for k in range(m)], count

    def self_crossings(self, c: Sequence[int]) -> int:
        c = cyclic_reduce(c)
        if not c:
            return 0
        ch, _ = self.chords(c)
        return sum(_crosses(ch[i], ch[j]) for i in range(len(ch)) for j in range(i + 1, len(ch)))

    def is_simple(self, c: Sequence[int]) -> bool:
        try:
            return self.self_crossings(c) == 0
        except NotSimple:
            return False

    def twist_images(self, c: Sequence[int], sign: int = 1) -> tuple[list[Letters], list[Letters]]:
        """Generator and arc images under the right-handed twist t_c^sign."""
        c = cyclic_reduce(c)
        if not c:
            return [(j,) for j in range(1, self.rank + 1)], [() for _ in range(self.n_arcs)]
        m = len(c)
        ch, count = self.chords(c)
        rots = [c[k + 1:] + c[:k + 1] for k in range(m)]
        p1 = (self.corners[0], 0)

        def along(S, T):
            hits = []
            for k, (P, Q) in enumerate(ch):
                inP, inQ = _in_arc(S, T, P), _in_arc(S, T, Q)
                if inP != inQ:
                    inner = Q if inQ else P
                    d = ((inner[0] - S[0]) % self.nslots, inner[1])
                    hits.append((d, k, sign if inQ else -sign))
            hits.sort()
            w: list[int] = []
            for _, k, s in hits:
                w.extend(rots[k] if s > 0 else inverse(rots[k]))
            return w

        imgs = []
        for j in range(1, self.rank + 1):
            n = count.get(j, 0)
            x1 = (self.slot[(j, 1)], n)
            x2 = (self.slot[(j, -1)], -1)
            imgs.append(free_reduce(along(p1, x1) + [j] + along(x2, p1)))
        arcs = [free_reduce(along(p1, (cj, 0))) for cj in self.corners[1:]]
        return imgs, arcs
