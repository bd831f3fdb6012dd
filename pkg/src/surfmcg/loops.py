"""Loops R_i with Phi([R_i]) = r_i, their placement in Sigma_g, and the map psi_1.

Phi keeps a_1..a_n and kills every b_j and every a_j with j > n.  A relator
r = a_{i_1}^{m_1} ... a_{i_d}^{m_d} becomes the loop

    a_{i_1}^{m_1} b_{i_1} b_{n+1} a_{i_2}^{m_2} b_{i_2} b_{n+2} ... b_{n+d-1} a_{i_d}^{m_d} b_{i_d}

on Sigma_{n+d-1}: each syllable is the image of a b_{i_t}-crossing under
t_{a_{i_t}}^{-m_t}, and b_{n+t} is the crossing of the t-th added handle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import atlas, mcg
from .atlas import SurfaceSpec, h1_class, pairing
from .words import Letters, cyclic_reduce, free_reduce, inverse, syllables


@dataclass(frozen=True)
class SyllableForm:
    syllables: tuple  # ((generator index, exponent), ...)

    @property
    def d(self) -> int:
        return len(self.syllables)

    def word(self) -> Letters:
        out = []
        for i, m in self.syllables:
            out.extend([atlas.A(i) if m > 0 else -atlas.A(i)] * abs(m))
        return tuple(out)


@dataclass(frozen=True)
class LoopClass:
    word: Letters
    genus: int
    relator: Letters
    trace: tuple = field(default=(), compare=False)

    @property
    def homology(self) -> np.ndarray:
        return h1_class(self.word, self.genus)


def syllable_decompose(r: Sequence[int]) -> SyllableForm:
    """Maximal runs of a word in the a-generators.

    The input uses surface letters: a_i is 2i-1.  Any b-letter is an error.
    """
    r = free_reduce(tuple(r))
    if any(abs(x) % 2 == 0 for x in r):
        raise ValueError("relator must use a-generators only")
    if cyclic_reduce(r) != r:
        raise ValueError("relator must be cyclically reduced")
    return SyllableForm(tuple(((abs(x) + 1) // 2, e) for x, e in syllables(r)))


def phi_map(w: Sequence[int], n: int) -> Letters:
    """Keep a_1..a_n, kill everything else."""
    return free_reduce(x for x in w if abs(x) % 2 == 1 and (abs(x) + 1) // 2 <= n)


def handle_letters(w: Sequence[int], n: int) -> int:
    return sum(1 for x in w if abs(x) % 2 == 0 and abs(x) // 2 > n)


def construct_R(form: SyllableForm, n: int) -> LoopClass:
    if form.d < 1:
        raise ValueError("empty syllable form")
    if any(i < 1 or i > n or m == 0 for i, m in form.syllables):
        raise ValueError("syllable generator out of range")
    h = n + form.d - 1
    out: list[int] = []
    trace = []
    for t, (i, m) in enumerate(form.syllables, start=1):
        out.extend([atlas.A(i)] * m if m > 0 else [-atlas.A(i)] * (-m))
        out.append(atlas.B(i))
        trace.append(f"syllable {t}: t_(a{i})^{-m} applied to the b{i} crossing")
        if t < form.d:
            out.append(atlas.B(n + t))
            trace.append(f"handle {n + t} crossing")
    if form.d == 1 and form.syllables[0][0] != n:
        out.append(atlas.B(n))
        trace.append(f"pass through handle {n}")
    return LoopClass(free_reduce(out), h, form.word(), tuple(trace))


def stabilize(R: LoopClass, h: int, eps: int = 1) -> LoopClass:
    """Include Sigma_{h'} in Sigma_h (h' <= h) and append ((b_1..b_{h-1})(b_1..b_h)^-1)^eps when h' < h."""
    if h < R.genus:
        raise ValueError("cannot stabilize to a smaller genus")
    if h == R.genus:
        return R
    pre = tuple(atlas.B(j) for j in range(1, h))
    corr = free_reduce(pre + inverse(pre + (atlas.B(h),)))
    if eps < 0:
        corr = inverse(corr)
    w = free_reduce(R.word + corr)
    return LoopClass(w, h, R.relator, R.trace + (f"stabilized to genus {h} with eps={eps}",))


def loops_for(relators: Sequence[Sequence[int]], n: int) -> list:
    """R_1..R_k on Sigma_h, h = n + l - 1 with l the largest syllable length."""
    forms = [syllable_decompose(r) for r in relators]
    l = max((f.d for f in forms), default=1)
    h = n + l - 1
    return [stabilize(construct_R(f, n), h) for f in forms]


# ------------------------------------------------------------ placement in Sigma_g

@dataclass(frozen=True)
class Placement:
    n: int
    l: int
    k: int
    h1: int
    h2: int
    g: int

    @property
    def r(self) -> int:
        return 2 * self.h1 + self.h2 - 1

    def target_curve(self, i: int) -> str:
        """The curve R_i must cross once: a_r for i = 1, A_{4h1+2h2-i} for i >= 2."""
        return f"a:{self.r}" if i == 1 else f"A:{4 * self.h1 + 2 * self.h2 - i}"

    def avoided(self, i: int) -> list:
        chain = [f"A:{j}" for j in range(4 * self.h1 + 2, 4 * self.h1 + 2 * self.h2 - 1)]
        names = ([] if i == 1 else [f"a:{self.r}"]) + chain
        return [c for c in names if c != self.target_curve(i)]


def placement(n: int, l: int, k: int, h1: Optional[int] = None, h2: Optional[int] = None, odd: bool = False) -> Placement:
    h1 = n + l - 1 if h1 is None else h1
    if h2 is None:
        h2 = 2
        while 2 * (h2 - 1) < k:
            h2 += 1
    if h1 < n + l - 1 or 2 * (h2 - 1) < k:
        raise ValueError("need h1 >= n + l - 1 and 2(h2 - 1) >= k")
    r = 2 * h1 + h2 - 1
    return Placement(n, l, k, h1, h2, 2 * r + (1 if odd else 0))


def _adjustment(P: Placement, i: int) -> Letters:
    """Phi-trivial letters giving R_i one crossing with its target and none with the avoided curves."""
    j = 4 * P.h1 + 2 * P.h2 - i  # chain index of the target for i >= 2
    if i == 1:
        return tuple(atlas.B(t) for t in range(2 * P.h1 + 1, P.r + 1))
    if j % 2 == 0:
        return (atlas.A(j // 2),)
    m = (j - 1) // 2
    return tuple(atlas.B(t) for t in range(2 * P.h1 + 1, m + 1))


def embed_and_adjust(Rs: Sequence[LoopClass], P: Placement) -> list:
    if len(Rs) > 2 * (P.h2 - 1):
        raise ValueError("too many relators for h2")
    out = []
    spec = SurfaceSpec(P.g, 2, h1=P.h1, h2=P.h2)
    for i, R in enumerate(Rs, start=1):
        if R.genus > P.h1:
            raise ValueError("loop genus exceeds h1")
        adj = _adjustment(P, i)
        tgt = h1_class(atlas.curve_word(P.target_curve(i), spec), P.g)
        cands = []
        for eps in (1, -1):
            w = free_reduce(R.word + (adj if eps > 0 else inverse(adj)))
            p = pairing(h1_class(w, P.g), tgt)
            simple = mcg.ribbon(spec).is_simple(cyclic_reduce(w))
            # a simple drawing makes t_{R_i} constructible; otherwise prefer pairing +1
            cands.append((not simple, p != 1, eps, w))
        _, _, eps, w = min(cands)
        out.append(LoopClass(w, P.g, R.relator, R.trace + (f"adjusted for {P.target_curve(i)} with eps={eps}",)))
    return out


def contracts(R: LoopClass, i: int, P: Placement) -> dict:
    """Phi image, handle-letter count and pairing table for a placed loop."""
    spec = SurfaceSpec(P.g, 2, h1=P.h1, h2=P.h2)
    hv = R.homology
    pair = lambda name: pairing(hv, h1_class(atlas.curve_word(name, spec), P.g))
    return {
        "phi": phi_map(R.word, P.n) == free_reduce(R.relator),
        "target": (P.target_curve(i), pair(P.target_curve(i))),
        "avoided": {c: pair(c) for c in P.avoided(i)},
    }


def twist_R(R: LoopClass, spec: SurfaceSpec, sign: int = 1) -> Optional[mcg.MappingClass]:
    """t_R when the word is drawn as a simple curve in the ribbon model, else None."""
    try:
        return mcg.word_twist(spec, R.word, sign)
    except mcg.UnsupportedCurve:
        return None


def build_psi1(Rs: Sequence[LoopClass], P: Placement):
    """psi_1 = t_{R_1} ... t_{R_k} phi, phi = t_{a_{n+1}} ... t_{a_{h1}} t_{b_{h1+1}} ... t_{b_{2h1}}.

    Returns (MappingClass or None, factor labels).  None means some t_{R_i} is
    not constructible and psi_1 stays symbolic.
    """
    from .relators import free_phi

    spec = SurfaceSpec(P.g, 2, h1=P.h1, h2=P.h2)
    phi = free_phi(spec, P.n, P.h1)
    labels = [f"R{i}" for i in range(1, len(Rs) + 1)]
    labels += [f"a:{i}" for i in range(P.n + 1, P.h1 + 1)] + [f"b:{i}" for i in range(P.h1 + 1, 2 * P.h1 + 1)]
    twists = [twist_R(R, spec) for R in Rs]
    if any(t is None for t in twists):
        return None, labels
    psi = mcg.product(twists + [phi], spec)
    return mcg.MappingClass(spec, psi.images, psi._inv, label="psi1"), labels


def psi1_fixes(psi: mcg.MappingClass, P: Placement) -> bool:
    """psi_1 fixes c_r (even g) or a_{r+1}, a'_{r+1} (odd g) as unoriented free homotopy classes."""
    from .factorization import curve_class

    spec = psi.spec
    names = [f"c:{P.r}"] if P.g == 2 * P.r else [f"a:{P.r + 1}", f"a':{P.r + 1}"]
    for nm in names:
        w = atlas.curve_word(nm, spec)
        if curve_class(psi.apply(w)) != curve_class(w):
            return False
    return True
