"""Factorizations: ordered products of signed Dehn twists on a surface.

The written order is kept: the factorization t_1 t_2 ... t_k evaluates to the
mapping class that applies t_k first.  A factorization is *verified* when its
product equals the boundary multitwist t_{d_1}^{n_1} ... t_{d_b}^{n_b}; a
boundary exponent n_i = 1 is a (-1)-section.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from . import atlas, mcg
from .atlas import Curve, SurfaceSpec
from .words import Letters, cyclic_reduce, format_letters, free_conjugate, free_reduce, inverse, parse_letters, rotations


def curve_class(w: Sequence[int]) -> Letters:
    """Canonical representative of an unoriented free homotopy class."""
    c = cyclic_reduce(tuple(w))
    if not c:
        return ()
    return min(min(rotations(c)), min(rotations(inverse(c))))


@dataclass(frozen=True)
class Factor:
    curve: Curve
    exponent: int = 1

    def __post_init__(self):
        if self.exponent == 0:
            raise ValueError("factor exponent must be nonzero")

    def twist(self) -> mcg.MappingClass:
        return mcg.curve_twist(self.curve, self.exponent)

    def same_twist(self, other: "Factor") -> bool:
        return self.exponent == other.exponent and curve_class(self.curve.word) == curve_class(other.curve.word)

    def __str__(self):
        return f"T[{self.curve.label}]" + ("" if self.exponent == 1 else f"^{self.exponent}")


@dataclass(frozen=True)
class Factorization:
    spec: SurfaceSpec
    factors: tuple
    boundary_target: tuple = ()
    notes: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        bt = tuple(self.boundary_target) or (0,) * self.spec.boundaries
        if len(bt) != self.spec.boundaries:
            raise ValueError("boundary target needs one exponent per boundary component")
        object.__setattr__(self, "boundary_target", bt)

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    @property
    def positive(self) -> bool:
        return all(f.exponent == 1 for f in self.factors)

    @property
    def symbolic(self) -> bool:
        return any(f.curve.kind == "symbolic" for f in self.factors)

    def same_as(self, other: "Factorization") -> bool:
        return (
            self.spec == other.spec
            and self.boundary_target == other.boundary_target
            and len(self) == len(other)
            and all(a.same_twist(b) for a, b in zip(self.factors, other.factors))
        )

    def labels(self) -> list[str]:
        return [str(f) for f in self.factors]

    def with_factors(self, factors, note: Optional[str] = None) -> "Factorization":
        notes = self.notes + ((note,) if note else ())
        return replace(self, factors=tuple(factors), notes=notes)


def from_names(names: Sequence, spec: SurfaceSpec, boundary_target=(), exponent: int = 1) -> Factorization:
    fs = []
    for n in names:
        if isinstance(n, Factor):
            fs.append(n)
        elif isinstance(n, Curve):
            fs.append(Factor(n, exponent))
        else:
            fs.append(Factor(atlas.atlas_curve(n, spec), exponent))
    return Factorization(spec, tuple(fs), tuple(boundary_target))


def evaluate(rho: Factorization) -> mcg.MappingClass:
    """Product of the factors in written order (the last factor acts first)."""
    if rho.symbolic:
        raise mcg.UnsupportedCurve("factorization has symbolic factors; its product is not evaluable")
    return mcg.product([f.twist() for f in rho.factors], rho.spec)


def boundary_multitwist(spec: SurfaceSpec, target: Sequence[int]) -> mcg.MappingClass:
    maps = []
    for i, n in enumerate(target, start=1):
        if n:
            maps.append(mcg.word_twist(spec, atlas.curve_word(f"bd:{i}", spec), 1) ** n)
    return mcg.product(maps, spec)


def verify(rho: Factorization) -> bool:
    return mcg.equal(evaluate(rho), boundary_multitwist(rho.spec, rho.boundary_target))


# ------------------------------------------------------------ moves

def image_factor(phi: mcg.MappingClass, f: Factor) -> Factor:
    if f.curve.kind == "symbolic":
        raise mcg.UnsupportedCurve(f"cannot move {f.curve.label} by a mapping class")
    w = cyclic_reduce(phi.apply(f.curve.word))
    c = Curve(f"{phi.label or 'phi'}({f.curve.label})", w, f.curve.spec, "image", base=f.curve, phi=phi)
    return Factor(c, f.exponent)


def hurwitz_move(rho: Factorization, i: int, direction: str = "right") -> Factorization:
    """Elementary transformation at positions i, i+1 (1-based).

    right: t_u^e t_v^f -> t_v^f t_{t_v^-f(u)}^e
    left:  t_u^e t_v^f -> t_{t_u^e(v)}^f t_u^e
    """
    if not 1 <= i < len(rho):
        raise IndexError(f"move index {i} out of range for {len(rho)} factors")
    fs = list(rho.factors)
    u, v = fs[i - 1], fs[i]
    if direction == "right":
        fs[i - 1], fs[i] = v, image_factor(mcg.curve_twist(v.curve, -v.exponent), u)
    elif direction == "left":
        fs[i - 1], fs[i] = image_factor(mcg.curve_twist(u.curve, u.exponent), v), u
    else:
        raise ValueError("direction must be 'left' or 'right'")
    return rho.with_factors(fs)


def cyclic_permute(rho: Factorization, k: int) -> Factorization:
    """Move the first k factors to the end (conjugates the product)."""
    k %= max(len(rho), 1)
    return rho.with_factors(rho.factors[k:] + rho.factors[:k])


def simultaneous_conjugate(rho: Factorization, phi: mcg.MappingClass) -> Factorization:
    return rho.with_factors([image_factor(phi, f) for f in rho.factors])


def replace_factor(rho: Factorization, i: int, curve: Curve) -> Factorization:
    """Swap factor i (1-based) for a curve with the same twist on this surface."""
    f = rho.factors[i - 1]
    ok, _ = free_conjugate(f.curve.word, curve.word)
    ok = ok or free_conjugate(f.curve.word, inverse(curve.word))[0]
    if not ok:
        raise ValueError(f"{curve.label} is not isotopic to factor {i} ({f.curve.label})")
    fs = list(rho.factors)
    fs[i - 1] = Factor(curve, f.exponent)
    return rho.with_factors(fs)


class SubstitutionError(ValueError):
    pass


def twisted_substitution(rho: Factorization, eta, phi: Optional[mcg.MappingClass], position: int) -> Factorization:
    """Replace t_{d_1}...t_{d_l} (starting at 1-based ``position``) by t_{phi(c_1)}...t_{phi(c_k)}.

    ``eta`` is a relator whose left side c_1..c_k equals its right side d_1..d_l.
    phi must fix every d_i up to isotopy (free homotopy on the bordered surface).
    """
    left, right = list(eta.left.factors), list(eta.right.factors)
    l = len(right)
    seg = rho.factors[position - 1: position - 1 + l]
    if len(seg) != l or not all(a.same_twist(b) for a, b in zip(seg, right)):
        raise SubstitutionError(f"factors at {position} do not match {eta.name}'s right side")
    if phi is None:
        new = left
        note = f"trivial {eta.name}-substitution at {position}"
    else:
        for d in right:
            img = phi.apply(d.curve.word)
            if curve_class(img) != curve_class(d.curve.word):
                raise SubstitutionError(f"phi does not fix {d.curve.label}")
        new = [image_factor(phi, c) for c in left]
        note = f"{phi.label or 'phi'}-twisted {eta.name}-substitution at {position}"
    fs = rho.factors[: position - 1] + tuple(new) + rho.factors[position - 1 + l:]
    return rho.with_factors(fs, note)


def find_subword(rho: Factorization, tokens: Sequence[Factor], start: int = 1) -> list[int]:
    """1-based positions where ``tokens`` occurs contiguously."""
    out = []
    l = len(tokens)
    for p in range(start - 1, len(rho) - l + 1):
        if all(rho.factors[p + j].same_twist(tokens[j]) for j in range(l)):
            out.append(p + 1)
    return out


# ------------------------------------------------------------ capping

def capping_map(spec: SurfaceSpec, i: int):
    """Word map induced by gluing a disk to boundary i (b = 2 -> 1, or 1 -> 0)."""
    g, b = spec.genus, spec.boundaries
    if b == 2:
        N = 2 * g + 1
        if i == 1:
            sub = {N: ()}
        elif i == 2:
            sub = {N: inverse(atlas.c_word(g))}
        else:
            raise IndexError("boundary index out of range")

        def cap(w):
            out = []
            for x in w:
                if abs(x) == N:
                    out.extend(sub[N] if x > 0 else inverse(sub[N]))
                else:
                    out.append(x)
            return free_reduce(out)

        return cap, spec.with_boundaries(1)
    if b == 1:
        if i != 1:
            raise IndexError("boundary index out of range")
        return (lambda w: free_reduce(w)), spec.with_boundaries(0)
    raise NotImplementedError("capping is implemented for one- and two-boundary models")


def blow_down(rho: Factorization, i: int) -> Factorization:
    """Cap boundary i, which must carry a (-1)-section (exponent 1)."""
    if rho.boundary_target[i - 1] != 1:
        raise ValueError(f"boundary {i} has exponent {rho.boundary_target[i - 1]}, not a (-1)-section")
    cap, new_spec = capping_map(rho.spec, i)
    fs = []
    for f in rho.factors:
        w = cap(f.curve.word)
        if not cyclic_reduce(w):
            continue
        if new_spec.boundaries == 1 and curve_class(w) == curve_class(atlas.c_word(rho.spec.genus)):
            c = atlas.Curve("bd:1", cyclic_reduce(w), new_spec, "atlas", atlas.AtlasName("bd", 1))
        else:
            c = Curve(f.curve.label, w, new_spec, f.curve.kind if f.curve.kind != "atlas" else "image", name=f.curve.name)
        fs.append(Factor(c, f.exponent))
    bt = rho.boundary_target[: i - 1] + rho.boundary_target[i:]
    return Factorization(new_spec, tuple(fs), bt, rho.notes + (f"capped boundary {i}",))


def cap_mapping_class(phi: mcg.MappingClass, i: int) -> mcg.MappingClass:
    """The mapping class induced on the capped surface (two boundaries only)."""
    spec = phi.spec
    if spec.boundaries != 2:
        raise NotImplementedError("only two-boundary mapping classes are capped")
    cap, new_spec = capping_map(spec, i)
    n = 2 * spec.genus
    if i == 2:
        imgs = [cap(phi.images[j]) for j in range(n)]
    else:
        # the basepoint moves to boundary 2 along the stored arc
        arc = phi.images[spec.rank]
        w = arc[:-1]
        imgs = [cap(inverse(w) + phi.images[j] + w) for j in range(n)]
    return mcg.MappingClass(new_spec, imgs, label=f"cap{i}({phi.label})")


def sections_report(rho: Factorization, verified: Optional[bool] = None):
    """[(boundary index, self-intersection -n_i)], or 'unverified'."""
    if verified is None:
        verified = (not rho.symbolic) and verify(rho)
    if not verified:
        return "unverified"
    return [(i, -n) for i, n in enumerate(rho.boundary_target, start=1)]


# ------------------------------------------------------------ file format

def format_factorization(rho: Factorization) -> str:
    s = rho.spec
    head = f"surface g={s.genus} b={s.boundaries}"
    if s.h1 is not None:
        head += f" h1={s.h1}"
    if s.h2 is not None:
        head += f" h2={s.h2}"
    lines = [head]
    for f in rho.factors:
        c = f.curve
        if c.kind == "atlas" and c.name is not None:
            ref = c.label
        elif c.kind == "symbolic":
            ref = f"{c.label}={format_letters(c.word)}"
        else:
            ref = f"w[{format_letters(c.word)}]"
        lines.append(f"T[{ref}]" + ("" if f.exponent == 1 else f"^{f.exponent}"))
    lines.append("boundary " + " ".join(map(str, rho.boundary_target)))
    return "\n".join(lines) + "\n"


def parse_factorization(text: str) -> Factorization:
    """Header ``surface g=.. b=..``, one ``T[curve]^e`` per line, footer ``boundary n_1 .. n_b``."""
    import re

    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("surface"):
        raise ValueError("missing 'surface g=.. b=..' header")
    kv = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
    spec = SurfaceSpec(int(kv["g"]), int(kv.get("b", 2)),
                       h1=int(kv["h1"]) if "h1" in kv else None, h2=int(kv["h2"]) if "h2" in kv else None)
    factors, target = [], ()
    pat = re.compile(r"^T\[(.+)\](?:\^(-?\d+))?$")
    for ln in lines[1:]:
        if ln.startswith("boundary"):
            target = tuple(int(x) for x in ln.split()[1:])
            continue
        m = pat.match(ln)
        if not m:
            raise ValueError(f"cannot parse factor line {ln!r}")
        ref = m.group(1)
        if ref.startswith("sym:"):
            label, _, wtxt = ref[4:].partition("=")
            word = parse_letters(wtxt)
            curve = atlas.symbolic_curve(label, word, spec)
        else:
            curve = atlas.parse_curve(ref, spec)
        factors.append(Factor(curve, int(m.group(2)) if m.group(2) else 1))
    return Factorization(spec, tuple(factors), target)
