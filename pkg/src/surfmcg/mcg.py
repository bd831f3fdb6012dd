"""Mapping classes of bordered surfaces as automorphisms of free groups.

A mapping class of Sigma_g^b (b >= 1) fixes the boundary pointwise, so it acts
on pi_1 based at a point of boundary 1 and, for b >= 2, on the arcs from that
point to the other boundaries.  Both are recorded, which makes the action
faithful: composition is substitution and equality is equality of images.

Composition follows the functional convention: ``f * g`` applies g first.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import atlas
from .atlas import Curve, SurfaceSpec
from .ribbon import RibbonSurface
from .words import INCONCLUSIVE, Letters, cyclic_split, free_conjugate, free_reduce, inverse


class WordGrowthError(RuntimeError):
    """Raised when composed images exceed the configured letter cap.

    ``partial`` holds the last mapping class that stayed under the cap so that
    a caller can resume with a larger cap.
    """

    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class UnsupportedCurve(ValueError):
    pass


class Settings:
    word_cap: int = 10 ** 7


settings = Settings()


@lru_cache(maxsize=None)
def ribbon(spec: SurfaceSpec) -> RibbonSurface:
    if spec.closed:
        raise UnsupportedCurve("closed-surface mapping classes are not represented")
    return RibbonSurface(spec.rank, atlas.boundary_words(spec))


class MappingClass:
    """Images of the free generators (and boundary arcs) under an automorphism."""

    __slots__ = ("spec", "images", "_inv", "label")

    def __init__(self, spec: SurfaceSpec, images: Sequence[Letters], inv=None, label: str = ""):
        self.spec = spec
        self.images = tuple(images)
        self._inv = inv
        self.label = label
        total = sum(len(w) for w in self.images)
        if total > settings.word_cap:
            raise WordGrowthError(f"image length {total} exceeds word cap {settings.word_cap}")

    @property
    def rank(self) -> int:
        return self.spec.rank

    def apply(self, w: Iterable[int]) -> Letters:
        img = self.images
        out: list[int] = []
        for x in w:
            if x > 0:
                seg = img[x - 1]
            else:
                seg = inverse(img[-x - 1])
            for y in seg:
                if out and out[-1] == -y:
                    out.pop()
                else:
                    out.append(y)
        return tuple(out)

    def __call__(self, w):
        return self.apply(w)

    def __mul__(self, other: "MappingClass") -> "MappingClass":
        return compose(self, other)

    def __pow__(self, k: int) -> "MappingClass":
        return power(self, k)

    def __eq__(self, other):
        return isinstance(other, MappingClass) and self.spec == other.spec and self.images == other.images

    def __hash__(self):
        return hash((self.spec, self.images))

    def inverse(self) -> "MappingClass":
        return invert(self)

    def generator_images(self) -> Letters:
        return self.images[: self.rank]

    def size(self) -> int:
        return sum(len(w) for w in self.images)

    def __repr__(self):
        return f"MappingClass({self.label or '?'} on {self.spec}, {self.size()} letters)"


def _ext_rank(spec: SurfaceSpec) -> int:
    return spec.rank + max(spec.boundaries - 1, 0)


def identity(spec: SurfaceSpec) -> MappingClass:
    n = _ext_rank(spec)
    m = MappingClass(spec, [(j,) for j in range(1, n + 1)], label="id")
    m._inv = lambda: m
    return m


def compose(f: MappingClass, g: MappingClass) -> MappingClass:
    """f o g: apply g first, then f."""
    if f.spec != g.spec:
        raise ValueError("surface mismatch in composition")
    images = tuple(f.apply(w) for w in g.images)
    h = MappingClass(f.spec, images, label=_join(f.label, g.label))
    h._inv = lambda: compose(invert(g), invert(f))
    return h


def _join(a: str, b: str) -> str:
    if not a or not b:
        return ""
    s = f"{a} {b}"
    return s if len(s) < 200 else ""


def invert(f: MappingClass) -> MappingClass:
    inv = f._inv
    if isinstance(inv, MappingClass):
        return inv
    if inv is not None:
        r = inv()
    else:
        r = _invert_by_search(f)
    r._inv = f
    f._inv = r
    return r


def _invert_by_search(f: MappingClass) -> MappingClass:
    raise ValueError("mapping class carries no inverse; build it from twists")


def power(f: MappingClass, k: int) -> MappingClass:
    if k < 0:
        return power(invert(f), -k)
    r = identity(f.spec)
    base = f
    while k:
        if k & 1:
            r = compose(base, r)
        k >>= 1
        if k:
            base = compose(base, base)
    return r


def product(maps: Iterable[MappingClass], spec: Optional[SurfaceSpec] = None) -> MappingClass:
    """Written product m_1 m_2 ... m_k, i.e. m_k is applied first."""
    maps = list(maps)
    if not maps:
        if spec is None:
            raise ValueError("empty product needs a surface")
        return identity(spec)
    r = maps[-1]
    for m in reversed(maps[:-1]):
        r = compose(m, r)
    return r


# ------------------------------------------------------------ twists

@lru_cache(maxsize=4096)
def _twist_cached(spec: SurfaceSpec, word: Letters, sign: int) -> MappingClass:
    rb = ribbon(spec)
    imgs, arcs = rb.twist_images(word, sign)
    images = list(imgs) + [free_reduce(w + (spec.rank + 1 + j,)) for j, w in enumerate(arcs)]
    m = MappingClass(spec, images, label=f"T[{' '.join(map(str, word))}]^{sign}")
    m._inv = lambda: _twist_cached(spec, word, -sign)
    return m


def word_twist(spec: SurfaceSpec, word: Sequence[int], sign: int = 1) -> MappingClass:
    """Right-handed twist (sign=+1) along the simple closed curve with this word."""
    if sign not in (1, -1):
        return power(word_twist(spec, word, 1), sign)
    _, core = cyclic_split(tuple(word))
    if not ribbon(spec).is_simple(core):
        raise UnsupportedCurve(f"word {core} is not a simple closed curve on {spec}")
    return _twist_cached(spec, core, sign)


def atlas_twist(name, spec: SurfaceSpec, sign: int = 1) -> MappingClass:
    """Twist along a base atlas curve (a_i, b_i, A_k, boundary curves)."""
    if isinstance(name, str):
        name = atlas.AtlasName.parse(name)
    if name.family not in atlas.BASE_FAMILIES:
        raise UnsupportedCurve(f"{name} is not a base atlas curve; use curve_twist/image_twist/chain_twist")
    return word_twist(spec, atlas.curve_word(name, spec), sign)


def curve_twist(c: Curve, sign: int = 1) -> MappingClass:
    if c.kind == "symbolic":
        raise UnsupportedCurve(f"symbolic curve {c.label} has no twist automorphism")
    return word_twist(c.spec, c.word, sign)


def twist(name_or_curve, spec: Optional[SurfaceSpec] = None, sign: int = 1) -> MappingClass:
    if isinstance(name_or_curve, Curve):
        return curve_twist(name_or_curve, sign)
    return curve_twist(atlas.atlas_curve(name_or_curve, spec), sign)


def apply(phi: MappingClass, w) -> Letters:
    return phi.apply(w.letters if hasattr(w, "letters") else w)


def image_curve(phi: MappingClass, c: Curve) -> Curve:
    w = phi.apply(c.word)
    label = f"{phi.label or 'phi'}({c.label})"
    return Curve(label, atlas.cyclic_reduce(w), c.spec, "image", base=c, phi=phi)


def image_twist(phi: MappingClass, c: Curve, sign: int = 1) -> MappingClass:
    """phi t_c phi^-1, built by conjugation (not from the image word)."""
    if c.kind == "symbolic":
        raise UnsupportedCurve(f"symbolic curve {c.label} has no twist automorphism")
    return product([phi, curve_twist(c, sign), invert(phi)])


def chain_product(names: Sequence, spec: SurfaceSpec) -> MappingClass:
    return product([twist(n, spec) for n in names], spec)


def chain_twist(names: Sequence, spec: SurfaceSpec) -> MappingClass:
    """Boundary (multi)twist of a chain neighbourhood via the chain relation.

    For m = len(names): (t_1 ... t_m)^(2m+2) when m is even, and
    (t_1 ... t_m)^(m+1) when m is odd.
    """
    m = len(names)
    if m == 0:
        return identity(spec)
    curves = [n if isinstance(n, Curve) else atlas.atlas_curve(n, spec) for n in names]
    if not all(c.kind == "atlas" for c in curves):
        raise UnsupportedCurve("chain_twist accepts atlas-named chains only")
    _check_chain(curves)
    base = product([curve_twist(c) for c in curves], spec)
    return power(base, 2 * m + 2 if m % 2 == 0 else m + 1)


def _check_chain(curves: Sequence[Curve]):
    g = curves[0].spec.genus
    for i, c in enumerate(curves):
        for j in range(i + 1, len(curves)):
            p = abs(atlas.pairing(c.h1class, curves[j].h1class))
            want = 1 if j == i + 1 else 0
            if p != want:
                raise ValueError(f"{c.label}, {curves[j].label} do not form a chain (pairing {p})")


# ------------------------------------------------------------ comparison

def equal(f: MappingClass, g: MappingClass) -> bool:
    """Equality in Mod(Sigma_g^b); h1, h2 only name curves and are ignored."""
    return (f.spec.genus, f.spec.boundaries) == (g.spec.genus, g.spec.boundaries) and f.images == g.images


def equal_up_to_conjugacy(f: MappingClass, g: MappingClass, search: int = 64):
    """Is f = i_w o g for an inner automorphism i_w of the free group?

    Returns True, False or INCONCLUSIVE.  The candidate w is pinned by the
    first generator up to its centralizer, which is searched over |k| <= search.
    """
    if f.spec != g.spec:
        raise ValueError("surface mismatch")
    if f == g:
        return True
    n = f.rank
    if not np.array_equal(homology_action(f), homology_action(g)):
        return False
    ok, w0 = free_conjugate(f.images[0], g.images[0])
    if not ok:
        return False
    x = free_reduce(g.images[0])
    root = _primitive_root(cyclic_split(x)[1])
    pre, _ = cyclic_split(x)
    root = free_reduce(pre + root + inverse(pre))
    for k in sorted(range(-search, search + 1), key=abs):
        c = root * k if k >= 0 else inverse(root) * (-k)
        w = free_reduce(w0 + free_reduce(c))
        if all(free_reduce(w + g.images[j] + inverse(w)) == f.images[j] for j in range(n)):
            return True
    return INCONCLUSIVE


def _primitive_root(w: Letters) -> Letters:
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    return w


def homology_action(f: MappingClass) -> np.ndarray:
    """Action on H_1 of the closed surface; column j is the image of basis vector j."""
    g = f.spec.genus
    M = np.zeros((2 * g, 2 * g), dtype=np.int64)
    for j in range(2 * g):
        M[:, j] = atlas.h1_class(f.images[j], g)
    return M


def transvection(v) -> np.ndarray:
    """x -> x + <x, v> v, the homology action of a right-handed twist."""
    v = np.asarray(v, dtype=np.int64)
    g = len(v) // 2
    J = atlas.symplectic_form(g)
    # <x, v> = x^T J v
    return np.eye(2 * g, dtype=np.int64) + np.outer(v, J @ v)


def is_symplectic(M: np.ndarray) -> bool:
    J = atlas.symplectic_form(M.shape[0] // 2)
    return np.array_equal(M.T @ J @ M, J)


# ------------------------------------------------------------ closed surface quotient

def closed_trivial(f: MappingClass, search: int = 64):
    """Does f become trivial in Mod(Sigma_g) after capping every boundary?

    The automorphism induced on pi_1(Sigma_g) must be inner.  Returns True,
    False or INCONCLUSIVE.
    """
    from .words import surface_context

    g = f.spec.genus
    if not np.array_equal(homology_action(f), np.eye(2 * g, dtype=np.int64)):
        return False
    ctx = surface_context(g)
    cap = _closing_map(f.spec)
    img = [cap(f.images[j]) for j in range(2 * g)]
    ans = ctx.conjugate(img[0], (1,))
    if ans is not True:
        return ans
    v, core = ctx.cyclic_dehn(img[0])
    if core != (1,):
        # img[0] is conjugate to a_1 but reduced to another rotation; fall back
        return INCONCLUSIVE
    for k in sorted(range(-search, search + 1), key=abs):
        w = free_reduce(v + ((1,) * k if k >= 0 else (-1,) * (-k)))
        if all(ctx.is_trivial(inverse(img[x - 1]) + w + (x,) + inverse(w)) for x in range(1, 2 * g + 1)):
            return True
    return INCONCLUSIVE


def _closing_map(spec: SurfaceSpec) -> Callable[[Letters], Letters]:
    g = spec.genus
    keep = 2 * g

    def cap(w):
        return free_reduce(x for x in w if abs(x) <= keep)

    return cap
