"""Named curves on Sigma_g^b and their pi_1 words.

Free models of pi_1(Sigma_g^b), b >= 1 (generator 2i-1 is a_i, 2i is b_i):

* b = 1: rank 2g, boundary word c_g.
* b = 2: rank 2g+1, extra generator N = 2g+1 is the boundary loop a_{g+1};
  the other boundary is a'_{g+1} = c_g a_{g+1}.
* b = 4: rank 2g+3, extra generators a_{g+1} = 2g+1, a_0 = 2g+2, c_0 = 2g+3;
  boundaries a_{g+1}, a'_{g+1} = c_g a_{g+1}, a_0 and a'_0 = c_0 a_0, where
  every c_i now starts from c_0.
* b = 0 is the closed surface; words are taken from the b = 1 model and read
  in the one-relator group.

Curves that are images of simpler ones (B_k, D_k, c'_r, B'_k) are built from
twist automorphisms, so they are simple by construction; see ``derived``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .words import Letters, cyclic_reduce, format_letters, free_reduce, inverse

VALID_BOUNDARIES = (0, 1, 2, 4)


def A(i: int) -> int:
    return 2 * i - 1


def B(i: int) -> int:
    return 2 * i


@dataclass(frozen=True)
class SurfaceSpec:
    genus: int
    boundaries: int = 2
    h1: Optional[int] = None
    h2: Optional[int] = None

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be >= 1")
        if self.boundaries not in VALID_BOUNDARIES:
            raise ValueError(f"boundary count must be one of {VALID_BOUNDARIES}")
        if self.h1 is not None and self.h1 < 1:
            raise ValueError("h1 must be >= 1")
        if self.h2 is not None:
            if self.h1 is None or self.h2 < 1:
                raise ValueError("h2 needs h1 and must be >= 1")
            if self.genus not in (2 * self.r, 2 * self.r + 1):
                raise ValueError(f"genus must be 2r or 2r+1 with r = 2h1+h2-1 = {self.r}")

    @property
    def r(self) -> Optional[int]:
        if self.h1 is None or self.h2 is None:
            return None
        return 2 * self.h1 + self.h2 - 1

    @property
    def rank(self) -> int:
        g, b = self.genus, self.boundaries
        return {0: 2 * g, 1: 2 * g, 2: 2 * g + 1, 4: 2 * g + 3}[b]

    @property
    def closed(self) -> bool:
        return self.boundaries == 0

    def with_boundaries(self, b: int) -> "SurfaceSpec":
        return SurfaceSpec(self.genus, b, self.h1, self.h2)

    def __str__(self):
        extra = "".join(f" {k}={v}" for k, v in (("h1", self.h1), ("h2", self.h2)) if v is not None)
        return f"g={self.genus} b={self.boundaries}{extra}"


# ------------------------------------------------------------ base words

def c_word(i: int, c0: Letters = ()) -> Letters:
    """c_i = b_i^-1 c_{i-1} a_i b_i a_i^-1."""
    w = tuple(c0)
    for k in range(1, i + 1):
        w = free_reduce((-B(k),) + w + (A(k), B(k), -A(k)))
    return w


def _extras(spec: SurfaceSpec):
    g = spec.genus
    if spec.boundaries == 4:
        return 2 * g + 1, 2 * g + 2, 2 * g + 3
    if spec.boundaries == 2:
        return 2 * g + 1, None, None
    return None, None, None


def boundary_words(spec: SurfaceSpec) -> list[Letters]:
    """Boundary loops in ribbon order; boundary 1 carries the basepoint."""
    g, b = spec.genus, spec.boundaries
    N, a0, c0 = _extras(spec)
    if b == 1:
        return [c_word(g)]
    if b == 2:
        return [(-N,), c_word(g) + (N,)]
    if b == 4:
        return [(-N,), free_reduce(c_word(g, (c0,)) + (N,)), (a0,), (-a0, -c0)]
    raise ValueError("closed surface has no boundary")


def boundary_curves(spec: SurfaceSpec) -> list[Letters]:
    """Words of the boundary-parallel curves bd:1..bd:b, as oriented curves."""
    g, b = spec.genus, spec.boundaries
    N, a0, c0 = _extras(spec)
    if b == 1:
        return [c_word(g)]
    if b == 2:
        return [(N,), free_reduce(c_word(g) + (N,))]
    if b == 4:
        return [(N,), free_reduce(c_word(g, (c0,)) + (N,)), (a0,), (c0, a0)]
    return []


def _model_spec(spec: SurfaceSpec) -> SurfaceSpec:
    return spec.with_boundaries(1) if spec.closed else spec


def _a(spec: SurfaceSpec, i: int) -> Letters:
    g = spec.genus
    N, a0, c0 = _extras(spec)
    if 1 <= i <= g:
        return (A(i),)
    if i == g + 1:
        if N is not None:
            return (N,)
        return inverse(c_word(g)) if spec.boundaries == 1 else ()
    if i == 0:
        if a0 is None:
            raise KeyError("a_0 exists only on the four-boundary model")
        return (a0,)
    raise KeyError(f"a_{i} out of range")


def _c(spec: SurfaceSpec, i: int) -> Letters:
    if not 0 <= i <= spec.genus:
        raise KeyError(f"c_{i} out of range")
    _, _, c0 = _extras(spec)
    return c_word(i, (c0,) if c0 else ())


def _aprime(spec: SurfaceSpec, i: int) -> Letters:
    if i == 0:
        _, a0, c0 = _extras(spec)
        if a0 is None:
            raise KeyError("a'_0 exists only on the four-boundary model")
        return (c0, a0)
    if not 1 <= i <= spec.genus + 1:
        raise KeyError(f"a'_{i} out of range")
    return free_reduce(_c(spec, i - 1) + _a(spec, i))


def _chain(spec: SurfaceSpec, k: int) -> Letters:
    """A_1 = a_0 a_1^-1, A_{2j} = b_j, A_{2j+1} = a_j a_{j+1}^-1."""
    g = spec.genus
    if not 1 <= k <= 2 * g + 1:
        raise KeyError(f"A_{k} out of range")
    if k % 2 == 0:
        return (B(k // 2),)
    j = (k - 1) // 2
    left = _a(spec, 0) if (j == 0 and spec.boundaries == 4) else (() if j == 0 else _a(spec, j))
    return free_reduce(left + inverse(_a(spec, j + 1)))


# ------------------------------------------------------------ naming

_NAME = re.compile(r"^(A|B|D|Bp|c'|a'|a|b|c|bd|sym|E)(?::(.+))?$")


@dataclass(frozen=True)
class AtlasName:
    family: str
    index: Optional[int] = None

    def __str__(self):
        if self.index is None:
            return self.family
        return f"{self.family}:{self.index}"

    @classmethod
    def parse(cls, text: str) -> "AtlasName":
        m = _NAME.match(text.strip())
        if not m or m.group(1) == "sym":
            raise ValueError(f"not an atlas curve name: {text!r}")
        fam, idx = m.group(1), m.group(2)
        if fam == "E":
            return cls("E")
        if fam == "c'":
            return cls("c'", None if idx in (None, "r") else int(idx))
        if idx is None:
            raise ValueError(f"curve {fam} needs an index")
        return cls(fam, int(idx))


BASE_FAMILIES = ("a", "b", "A", "bd")


def curve_word(name, spec: SurfaceSpec) -> Letters:
    """pi_1 word of an atlas curve (well defined up to conjugacy and inversion)."""
    if isinstance(name, str):
        name = AtlasName.parse(name)
    return _curve_word(name, spec)


@lru_cache(maxsize=None)
def _curve_word(name: AtlasName, spec: SurfaceSpec) -> Letters:
    m = _model_spec(spec)
    fam, i = name.family, name.index
    g = spec.genus
    if fam == "a":
        return _a(m, i)
    if fam == "b":
        if not 1 <= i <= g:
            raise KeyError(f"b_{i} out of range")
        return (B(i),)
    if fam == "c":
        return _c(m, i)
    if fam == "a'":
        return _aprime(m, i)
    if fam == "A":
        return _chain(m, i)
    if fam == "bd":
        bds = boundary_curves(m)
        if not 1 <= i <= len(bds) or spec.closed:
            raise KeyError(f"boundary {i} out of range")
        return bds[i - 1]
    if fam == "E":
        h1 = _need_h1(spec)
        return free_reduce(_c(m, h1) + _a(m, 2 * h1 + 1))
    from . import derived
    if fam == "B":
        if not 0 <= i <= g:
            raise KeyError(f"B_{i} out of range")
        return derived.b_family(m, g)[i]
    if fam == "D":
        h1 = _need_h1(spec)
        if not 0 <= i <= 2 * h1:
            raise KeyError(f"D_{i} out of range")
        return derived.d_family(m, h1)[i]
    if fam == "c'":
        if g % 2:
            raise KeyError("c'_r needs even genus g = 2r")
        if i is not None and i != g // 2:
            raise KeyError("c'_r is defined only for r = g/2")
        return derived.c_prime(m)
    if fam == "Bp":
        if g % 2:
            raise KeyError("B'_k needs even genus")
        if not 0 <= i <= g // 2:
            raise KeyError(f"B'_{i} out of range")
        return derived.b_prime_family(g // 2)[i]
    raise KeyError(f"unknown curve family {fam}")


def _need_h1(spec: SurfaceSpec) -> int:
    if spec.h1 is None:
        raise ValueError("this curve needs the parameter h1")
    if 2 * spec.h1 + 1 > spec.genus + 1 or 4 * spec.h1 + 1 > 2 * spec.genus + 1:
        raise ValueError("h1 too large for this genus")
    return spec.h1


# ------------------------------------------------------------ Curve values

@dataclass(frozen=True)
class Curve:
    """A curve reference with its pi_1 word.

    ``kind`` is ``atlas`` (``name`` set), ``image`` (``phi`` applied to ``base``)
    or ``symbolic`` (a label and a word with no twist automorphism attached).
    """

    label: str
    word: Letters
    spec: SurfaceSpec
    kind: str = "atlas"
    name: Optional[AtlasName] = None
    base: Optional["Curve"] = field(default=None, compare=False)
    phi: object = field(default=None, compare=False, repr=False)

    @property
    def h1class(self) -> np.ndarray:
        return h1_class(self.word, self.spec.genus)

    @property
    def twistable(self) -> bool:
        return self.kind != "symbolic" and not self.spec.closed

    def __str__(self):
        return self.label


def atlas_curve(name, spec: SurfaceSpec) -> Curve:
    if isinstance(name, str):
        name = AtlasName.parse(name)
    return Curve(str(name), curve_word(name, spec), spec, "atlas", name)


def symbolic_curve(label: str, word, spec: SurfaceSpec) -> Curve:
    return Curve(f"sym:{label}", free_reduce(tuple(word)), spec, "symbolic")


def word_curve(word, spec: SurfaceSpec, label: Optional[str] = None) -> Curve:
    """A twistable curve given directly by a word (used for images and factors read from files)."""
    w = cyclic_reduce(tuple(word))
    return Curve(label or f"w[{format_letters(w)}]", w, spec, "image")


def parse_curve(text: str, spec: SurfaceSpec) -> Curve:
    text = text.strip()
    if text.startswith("sym:"):
        label, _, wtxt = text[4:].partition("=")
        from .words import parse_letters
        return symbolic_curve(label.strip(), parse_letters(wtxt) if wtxt else (), spec)
    if text.startswith("w[") and text.endswith("]"):
        from .words import parse_letters
        return word_curve(parse_letters(text[2:-1]), spec)
    return atlas_curve(text, spec)


# ------------------------------------------------------------ homology

def h1_class(w, g: int) -> np.ndarray:
    """Exponent sums over [a_1],[b_1],...,[a_g],[b_g]; extra boundary generators vanish."""
    v = np.zeros(2 * g, dtype=np.int64)
    for x in (w.letters if hasattr(w, "letters") else w):
        if abs(x) <= 2 * g:
            v[abs(x) - 1] += 1 if x > 0 else -1
    return v


def symplectic_form(g: int) -> np.ndarray:
    J = np.zeros((2 * g, 2 * g), dtype=np.int64)
    for i in range(g):
        J[2 * i, 2 * i + 1] = 1
        J[2 * i + 1, 2 * i] = -1
    return J


def pairing(u, v) -> int:
    u, v = np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)
    if u.shape != v.shape or u.ndim != 1 or len(u) % 2:
        raise ValueError("pairing needs vectors of equal even length")
    return int(u @ symplectic_form(len(u) // 2) @ v)


# ------------------------------------------------------------ printed formulas

def printed_word(name, spec: SurfaceSpec) -> Letters:
    """The closed-surface word read literally from the displayed formulas.

    Only B_k, D_k and E have such formulas.  They use a_0 = a_{g+1} = c_g = 1.
    These words agree with the constructed curves in homology once the a_i are
    reoriented (see ``reorient_a``); as based loops they are only indicative.
    """
    if isinstance(name, str):
        name = AtlasName.parse(name)
    g = spec.genus
    a = lambda i: () if i in (0, g + 1) else (A(i),)
    c = lambda i: () if i in (0, g) else c_word(i)
    bs = lambda lo, hi: tuple(B(i) for i in range(lo, hi + 1))
    fam, k = name.family, name.index
    if fam == "B":
        if k % 2:
            j = (k + 1) // 2
            return free_reduce(a(j) + bs(j, g + 1 - j) + c(g + 1 - j) + a(g + 1 - j))
        j = k // 2
        return free_reduce(a(j) + bs(j + 1, g - j) + c(g - j) + a(g + 1 - j))
    h1 = _need_h1(spec)
    H = 2 * h1
    tail = (-A(H + 1),)
    if fam == "E":
        return free_reduce(c_word(h1) + (A(H + 1),))
    if fam == "D":
        if k == 0:
            return bs(1, H) + tail
        if k % 2:
            j = (k + 1) // 2
            return free_reduce(a(j) + bs(j, H + 1 - j) + c_word(H + 1 - j) + a(H + 1 - j) + tail)
        j = k // 2
        return free_reduce(a(j) + bs(j + 1, H - j) + c_word(H - j) + a(H + 1 - j) + tail)
    raise KeyError(f"no printed formula for {name}")


def reorient_a(w) -> Letters:
    """Reverse the orientation of every a_i letter."""
    return tuple(-x if abs(x) % 2 else x for x in w)
