"""Catalogue of Dehn-twist relations, each verified as an identity of automorphisms.

A ``NamedRelator`` states ``left = right`` as products of twists on a bordered
surface; read as a relator it is left * right^-1 = 1.  The right side of the
main relators is a boundary multitwist.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import atlas, mcg
from .atlas import Curve, SurfaceSpec
from .factorization import Factor, Factorization, evaluate, from_names
from .words import Letters


@dataclass(frozen=True)
class NamedRelator:
    name: str
    params: dict
    left: Factorization
    right: Factorization
    notes: tuple = field(default=(), compare=False)

    @property
    def spec(self) -> SurfaceSpec:
        return self.left.spec

    def as_factorization(self) -> Factorization:
        """left as a factorization whose product is the boundary multitwist on the right, if it is one."""
        target = [0] * self.spec.boundaries
        for f in self.right.factors:
            if not _is_boundary(f.curve):
                raise ValueError(f"{self.name}: right side is not a boundary multitwist")
            target[_boundary_index(f.curve) - 1] += f.exponent
        return Factorization(self.spec, self.left.factors, tuple(target), (self.name,))


def _boundary_index(c: Curve) -> int:
    from .factorization import curve_class

    for i, w in enumerate(atlas.boundary_curves(c.spec), start=1):
        if curve_class(w) == curve_class(c.word):
            return i
    raise ValueError(f"{c.label} is not boundary parallel")


def _is_boundary(c: Curve) -> bool:
    try:
        _boundary_index(c)
        return True
    except ValueError:
        return False


# ------------------------------------------------------------ token helpers

def delta_tokens(k: int) -> list[str]:
    """Delta_k = t_{A_1} ... t_{A_k}."""
    return [f"A:{j}" for j in range(1, k + 1)]


def delta_bar_tokens(k: int) -> list[str]:
    """Dbar_k = t_{A_k} ... t_{A_1}."""
    return [f"A:{j}" for j in range(k, 0, -1)]


def beta(spec: SurfaceSpec, k: int) -> mcg.MappingClass:
    """beta_k = Dbar_k Delta_{2g+1-k} Delta_{2g-k}^-1 Dbar_k^-1."""
    g = spec.genus
    ev = lambda toks: mcg.product([mcg.twist(t, spec) for t in toks], spec)
    Db = ev(delta_bar_tokens(k))
    return mcg.product([Db, ev(delta_tokens(2 * g + 1 - k)), mcg.invert(ev(delta_tokens(2 * g - k))), mcg.invert(Db)])


def _rel(name, params, spec, left, right, notes=()) -> NamedRelator:
    return NamedRelator(name, dict(params), from_names(left, spec), from_names(right, spec), tuple(notes))


def _b_tokens(g: int) -> list[str]:
    return [f"B:{k}" for k in range(g + 1)]


# ------------------------------------------------------------ builders

def w2(g: int) -> NamedRelator:
    """(t_{B_0} ... t_{B_g} t_{c_r})^2 = t_{a_{g+1}} t_{a'_{g+1}} (g = 2r), with
    t_{a_{r+1}}^2 t_{a'_{r+1}}^2 in place of t_{c_r} when g = 2r+1."""
    if g < 2:
        raise ValueError("W2 needs g >= 2")
    spec = SurfaceSpec(g, 2)
    r = g // 2
    tail = [f"c:{r}"] if g % 2 == 0 else [f"a:{r + 1}", f"a:{r + 1}", f"a':{r + 1}", f"a':{r + 1}"]
    block = _b_tokens(g) + tail
    return _rel("W2", {"g": g}, spec, block + block, ["bd:1", "bd:2"])


def w1(n2: int, g: Optional[int] = None) -> NamedRelator:
    """(t_{B'_0} ... t_{B'_{2n}} t_{c_n})^2 = t_{c_{2n}} on Sigma_g^2, g = 4n by default."""
    if n2 < 2 or n2 % 2:
        raise ValueError("W1 takes an even parameter 2n >= 2")
    n = n2 // 2
    g = 2 * n2 if g is None else g
    if g < n2 + 1:
        raise ValueError("W1 needs g > 2n")
    spec = SurfaceSpec(g, 2)
    block = [_bp(spec, n2, k) for k in range(n2 + 1)] + [f"c:{n}"]
    notes = ("the separating twist t_{c_n} is part of each block; without it the identity fails",)
    return _rel("W1", {"2n": n2, "g": g}, spec, block + block, [f"c:{n2}"], notes)


def _bp(spec: SurfaceSpec, n2: int, k: int) -> Curve:
    from .derived import b_prime_family

    return Curve(f"Bp:{k}", b_prime_family(n2)[k], spec, "atlas", atlas.AtlasName("Bp", k))


def gurtas_blocks(g: int, h1: int, b: int):
    """Tokens of the Gurtas-type relation t_{d} = blk1 . x dn D D up x on Sigma_g^b.

    blk1 = t_E up t_{a_g} t_{a'_g} dn t_E, up = A_{4h1+2} ... A_{2g}, dn reversed,
    D = t_{D_0} ... t_{D_{2h1}}, and x = A_{2g+1} (b = 2) or a'_g (b = 1).
    """
    up = [f"A:{j}" for j in range(4 * h1 + 2, 2 * g + 1)]
    dn = up[::-1]
    D = [f"D:{k}" for k in range(2 * h1 + 1)]
    x = f"A:{2 * g + 1}" if b == 2 else f"a':{g}"
    blk1 = ["E"] + up + [f"a:{g}", f"a':{g}"] + dn + ["E"]
    return blk1 + [x] + dn + D + D + up + [x]


def gurtas(g: int, h1: int, b: int = 2) -> NamedRelator:
    """Lift of Gurtas' relator: t_{a_{g+1}} t_{a'_{g+1}} (b=2) or t_{c_g} (b=1) as a positive product."""
    if b not in (1, 2):
        raise ValueError("gurtas relation lives on one- or two-boundary surfaces")
    if g < 2 * h1 + 1:
        raise ValueError("gurtas relation needs g >= 2h1 + 1")
    spec = SurfaceSpec(g, b, h1=h1)
    right = ["bd:1", "bd:2"] if b == 2 else ["bd:1"]
    return _rel("gurtas", {"g": g, "h1": h1, "b": b}, spec, gurtas_blocks(g, h1, b), right)


def gurtas_closed_tokens(g: int, h1: int) -> list[str]:
    """(tau taubar D E)^2 with tau = t_{A_{4h1+2}} ... t_{A_{2g}} t_{a_g}."""
    tau = [f"A:{j}" for j in range(4 * h1 + 2, 2 * g + 1)] + [f"a:{g}"]
    block = tau + tau[::-1] + [f"D:{k}" for k in range(2 * h1 + 1)] + ["E"]
    return block + block


def _embed(curves: Sequence[Curve], spec: SurfaceSpec) -> list[Curve]:
    """Include curves of a smaller model through the first handles (index preserving)."""
    out = []
    for c in curves:
        if max((abs(x) for x in c.word), default=0) > spec.rank:
            raise ValueError(f"{c.label} does not embed in {spec}")
        out.append(Curve(c.label, c.word, spec, c.kind, c.name))
    return out


def v_relator(kind: int, g: int, h1: int, h2: int) -> NamedRelator:
    """V_1 (g = 2r) or V_2 (g = 2r+1): the genus-r Gurtas relation included in Sigma_g^2."""
    r = 2 * h1 + h2 - 1
    want = 2 * r if kind == 1 else 2 * r + 1
    if g != want:
        raise ValueError(f"V{kind} with h1={h1}, h2={h2} needs g = {want}")
    spec = SurfaceSpec(g, 2, h1=h1, h2=h2)
    small = SurfaceSpec(r, 1 if kind == 1 else 2, h1=h1)
    toks = gurtas_blocks(r, h1, small.boundaries)
    left = _embed([atlas.atlas_curve(t, small) for t in toks], spec)
    if kind == 1:
        right = [atlas.atlas_curve(f"c:{r}", spec)]
    else:
        right = [atlas.atlas_curve(f"a:{r + 1}", spec), atlas.atlas_curve(f"a':{r + 1}", spec)]
    return NamedRelator(
        f"V{kind}", {"g": g, "h1": h1, "h2": h2}, from_names(left, spec), from_names(right, spec),
        (f"genus-{r} relation included through the first {r} handles",),
    )


def four_torus() -> NamedRelator:
    """(t_{A_1} t_{A_3} t_{A_2} t_{a_1} t_{a'_1} t_{A_2})^2 = t_{a_0} t_{a'_0} t_{a_2} t_{a'_2} on Sigma_1^4."""
    spec = SurfaceSpec(1, 4)
    block = ["A:1", "A:3", "A:2", "a:1", "a':1", "A:2"]
    return _rel("4torus", {}, spec, block + block, ["bd:1", "bd:2", "bd:3", "bd:4"])


def four_boundary(g: int) -> NamedRelator:
    """t_{a_0} t_{a'_0} t_{a_{g+1}} t_{a'_{g+1}} as a product of 8g + 4 twists on Sigma_g^4."""
    spec = SurfaceSpec(g, 4)
    first = [f"A:{j}" for j in range(2 * g + 1, 1, -1)] + ["a:1", "a':1"] + [f"A:{j}" for j in range(2, 2 * g + 2)]
    second = [f"A:{j}" for j in range(1, 2 * g + 1)] + [f"a:{g}", f"a':{g}"] + [f"A:{j}" for j in range(2 * g, 0, -1)]
    return _rel("4bdry", {"g": g}, spec, first + second, ["bd:1", "bd:2", "bd:3", "bd:4"])


def korkmaz_x(g: int) -> NamedRelator:
    """t_{a_{g+1}} t_{a'_{g+1}} = t_{c_r} t_{c'_r} (t_{B_0} ... t_{B_g})^2 for g = 2r."""
    if g % 2 or g < 2:
        raise ValueError("korkmaz-x needs even g >= 2")
    spec = SurfaceSpec(g, 2)
    r = g // 2
    return _rel("korkmaz-x", {"g": g}, spec, [f"c:{r}", "c':r"] + _b_tokens(g) * 2, ["bd:1", "bd:2"])


def delta_product_identity(g: int) -> NamedRelator:
    """Delta_{2g+1} ... Delta_1 = t_{B_0} ... t_{B_g} t_{c_r} (g = 2r),
    or ... (t_{a_{r+1}} t_{a'_{r+1}})^2 when g = 2r+1."""
    spec = SurfaceSpec(g, 2)
    r = g // 2
    left = [t for k in range(2 * g + 1, 0, -1) for t in delta_tokens(k)]
    tail = [f"c:{r}"] if g % 2 == 0 else [f"a:{r + 1}", f"a:{r + 1}", f"a':{r + 1}", f"a':{r + 1}"]
    return _rel("delta-product", {"g": g}, spec, left, _b_tokens(g) + tail)


def build(name: str, *args, **kw) -> NamedRelator:
    table = {
        "W2": w2, "W1": w1, "V1": lambda *a: v_relator(1, *a), "V2": lambda *a: v_relator(2, *a),
        "4torus": four_torus, "4bdry": four_boundary, "gurtas": gurtas, "korkmaz-x": korkmaz_x,
        "delta-product": delta_product_identity,
    }
    if name not in table:
        raise KeyError(f"unknown relator {name!r}; known: {sorted(table)}")
    return table[name](*args, **kw)


def parse_builtin(text: str) -> NamedRelator:
    """``W2:3``, ``V1:6,1,2``, ``4torus``, ``gurtas:3,1`` ..."""
    name, _, args = text.partition(":")
    vals = [int(x) for x in args.split(",") if x.strip()] if args else []
    return build(name, *vals)


# ------------------------------------------------------------ verification

def evaluate_side(f: Factorization) -> mcg.MappingClass:
    return evaluate(f)


def verify(rel: NamedRelator) -> dict:
    t0 = time.perf_counter()
    status = "fail"
    detail = ""
    try:
        lhs = evaluate(rel.left)
        rhs = evaluate(rel.right)
        status = "pass" if mcg.equal(lhs, rhs) else "fail"
    except mcg.WordGrowthError as e:
        status, detail = "inconclusive", str(e)
    except mcg.UnsupportedCurve as e:
        status, detail = "unsupported", str(e)
    return {
        "relator": rel.name,
        "params": rel.params,
        "status": status,
        "genus": rel.spec.genus,
        "boundaries": rel.spec.boundaries,
        "left_tokens": len(rel.left),
        "right_tokens": len(rel.right),
        "seconds": round(time.perf_counter() - t0, 3),
        "detail": detail,
    }


def verify_curve_identity(phi: mcg.MappingClass, c: Curve, d: Curve) -> bool:
    """phi(c) is freely homotopic to d (either orientation) in the bordered model."""
    from .factorization import curve_class

    return curve_class(phi.apply(c.word)) == curve_class(d.word)


def closed_curve_identity(phi: mcg.MappingClass, c: Curve, d: Curve, budget: int = 2000):
    """phi(c) ~ d in pi_1 of the closed surface (True / False / INCONCLUSIVE)."""
    from .words import surface_context

    ctx = surface_context(phi.spec.genus)
    keep = 2 * phi.spec.genus
    cap = lambda w: tuple(x for x in w if abs(x) <= keep)
    return ctx.conjugate(cap(phi.apply(c.word)), cap(d.word), budget=budget, unoriented=True)


# ------------------------------------------------------------ Gurtas identities and Hurwitz replay

def _tau_tokens(g: int, h1: int) -> list[str]:
    return [f"A:{j}" for j in range(4 * h1 + 2, 2 * g + 1)] + [f"a:{g}"]


def gurtas_curve_identities(g: int, h1: int, closed: bool = True) -> dict:
    """The curve identities behind the Hurwitz path, evaluated on Sigma_g^1.

    X = t_E tau taubar t_E fixes A_i (4h1+2 <= i <= 2g) and a_g;
    (tau taubar)^-1 (E) = t_{D_0} ... t_{D_{2h1}} (E);
    (tau taubar)^-1 (A_{4h1+2}) = t_{D_0} ... t_{D_{2h1}} t_E (A_{4h1+2});
    tau taubar fixes A_i (4h1+3 <= i <= 2g) and a_g.
    With ``closed`` the comparison is in pi_1 of the closed surface.
    """
    spec = SurfaceSpec(g, 1, h1=h1)
    ev = lambda toks: mcg.product([mcg.twist(atlas.atlas_curve(t, spec)) for t in toks], spec)
    tau = _tau_tokens(g, h1)
    tt = ev(tau + tau[::-1])
    X = ev(["E"] + tau + tau[::-1] + ["E"])
    Dp = ev([f"D:{k}" for k in range(2 * h1 + 1)])
    DE = ev([f"D:{k}" for k in range(2 * h1 + 1)] + ["E"])
    cur = lambda n: atlas.atlas_curve(n, spec)
    same = closed_curve_identity if closed else verify_curve_identity
    out = {}
    fixed = [f"A:{i}" for i in range(4 * h1 + 2, 2 * g + 1)] + [f"a:{g}"]
    out["X fixes A_i, a_g"] = all(same(X, cur(n), cur(n)) is True for n in fixed)
    ttinv = mcg.invert(tt)
    out["(tau taubar)^-1 E = D(E)"] = same(ttinv, cur("E"), mcg.image_curve(Dp, cur("E"))) is True
    a0 = f"A:{4 * h1 + 2}"
    out["(tau taubar)^-1 A = D t_E (A)"] = same(ttinv, cur(a0), mcg.image_curve(DE, cur(a0))) is True
    out["tau taubar fixes A_i, a_g"] = all(same(tt, cur(n), cur(n)) is True for n in fixed[1:])
    return out


@dataclass
class PathReport:
    status: str
    steps: int
    failed_at: Optional[int] = None
    reason: str = ""
    final: Optional[Factorization] = None
    matches_target: Optional[bool] = None
    checks: list = field(default_factory=list)


def _closed_same(spec, f: mcg.MappingClass, g: mcg.MappingClass):
    return mcg.closed_trivial(mcg.compose(f, mcg.invert(g)))


def hurwitz_path_check(rho: Factorization, steps: Sequence[tuple], target: Optional[Sequence] = None) -> PathReport:
    """Replay rewrite steps on ``rho`` and check the product after each one.

    Steps:
      ("move", i, "right"|"left")  elementary transformation; product must be unchanged exactly
      ("rotate", k)                cyclic permutation; product conjugated by the first k factors
      ("rename", i, curve)         swap factor i for a curve isotopic in the closed surface;
                                   the product must agree in Mod(Sigma_g)
      ("swap", i)                  bare transposition with no conjugation (for negative tests)
    ``target`` is a token list; the final factorization must match it factor by factor.
    """
    from .factorization import cyclic_permute, hurwitz_move, Factor as F

    cur = rho
    prod = evaluate(cur)
    checks = []
    for n, st in enumerate(steps, start=1):
        kind = st[0]
        if kind == "move":
            nxt = hurwitz_move(cur, st[1], st[2] if len(st) > 2 else "right")
            new = evaluate(nxt)
            ok = mcg.equal(new, prod)
        elif kind == "rotate":
            k = st[1] % len(cur)
            nxt = cyclic_permute(cur, k)
            new = evaluate(nxt)
            head = evaluate(cur.with_factors(cur.factors[:k]))
            ok = mcg.equal(new, mcg.product([mcg.invert(head), prod, head], cur.spec))
        elif kind == "rename":
            i, curve = st[1], st[2]
            if isinstance(curve, str):
                curve = atlas.atlas_curve(curve, cur.spec)
            old = cur.factors[i - 1]
            from .words import surface_context

            keep = 2 * cur.spec.genus
            cap = lambda w: tuple(x for x in w if abs(x) <= keep)
            iso = surface_context(cur.spec.genus).conjugate(cap(old.curve.word), cap(curve.word), unoriented=True)
            fs = list(cur.factors)
            fs[i - 1] = F(curve, old.exponent)
            nxt = cur.with_factors(fs)
            new = evaluate(nxt)
            ok = iso is True and _closed_same(cur.spec, new, prod) is True
        elif kind == "swap":
            i = st[1]
            fs = list(cur.factors)
            fs[i - 1], fs[i] = fs[i], fs[i - 1]
            nxt = cur.with_factors(fs)
            new = evaluate(nxt)
            ok = mcg.equal(new, prod)
        else:
            raise ValueError(f"unknown step {st!r}")
        checks.append((n, kind, ok))
        if not ok:
            return PathReport("fail", n, n, f"step {n} ({kind}) changes the product", nxt, None, checks)
        cur, prod = nxt, new
    match = None
    if target is not None:
        tgt = from_names(target, cur.spec)
        match = cur.same_as(Factorization(cur.spec, tgt.factors, cur.boundary_target))
        if not match:
            return PathReport("fail", len(steps), None, "final factorization differs from the target", cur, False, checks)
    return PathReport("pass", len(steps), None, "", cur, match, checks)


def _move_block_right(toks: list, i: int, L: int, j: int, steps: list) -> list:
    """Move toks[i:i+L] right past toks[i+L:j] (0-based), renaming each moved factor back."""
    toks = list(toks)
    for q in range(L - 1, -1, -1):
        tgt = j - (L - 1 - q) - 1
        src = i + q
        for p in range(src, tgt):
            steps.append(("move", p + 1, "right"))
            toks[p], toks[p + 1] = toks[p + 1], toks[p]
        steps.append(("rename", tgt + 1, toks[tgt]))
    return toks


def gurtas_hurwitz_path(g: int, h1: int) -> tuple:
    """(start factorization on Sigma_g^1, steps, target tokens) for the scripted path.

    The path renames a'_g to a_g, then runs the three rounds of elementary
    transformations ending in (tau taubar D E)^2.
    """
    spec = SurfaceSpec(g, 1, h1=h1)
    toks = gurtas_blocks(g, h1, 1)
    rho = from_names(toks, spec)
    steps: list = []
    ap = f"a':{g}"
    for p, t in enumerate(toks):
        if t == ap:
            steps.append(("rename", p + 1, f"a:{g}"))
    toks = [f"a:{g}" if t == ap else t for t in toks]
    tau = _tau_tokens(g, h1)
    n = len(tau)
    D = [f"D:{k}" for k in range(2 * h1 + 1)]
    X = ["E"] + tau + tau[::-1] + ["E"]
    # round 1: rotate tau to the front and move it past X
    steps.append(("rotate", len(toks) - n))
    toks = toks[-n:] + toks[:-n]
    toks = _move_block_right(toks, 0, n, n + len(X), steps)
    # round 2: move the second E past tau taubar D
    i = 1 + 2 * n
    toks = _move_block_right(toks, i, 1, i + 1 + 2 * n + len(D), steps)
    # round 3: rotate E to the end and move the first tau taubar past (tau taubar D E)
    steps.append(("rotate", 1))
    toks = toks[1:] + toks[:1]
    toks = _move_block_right(toks, 0, 2 * n, 4 * n + len(D) + 1, steps)
    target = gurtas_closed_tokens(g, h1)
    assert toks == target
    return rho, steps, target


# ------------------------------------------------------------ W_2^g(1, phi)

def w2_twisted(g: int, eta: NamedRelator, phi: Optional[mcg.MappingClass], sites: Optional[Sequence[int]] = None, spec: Optional[SurfaceSpec] = None) -> Factorization:
    """W_2^g with one trivial and one phi-twisted eta-substitution.

    ``sites`` are 1-based positions in W_2^g; the default is the first two
    occurrences of eta's right side in reading order.  The earlier site gets
    the trivial substitution.
    """
    from .factorization import find_subword, twisted_substitution

    W = w2(g).as_factorization()
    spec = spec or W.spec
    W = Factorization(spec, [Factor(Curve(f.curve.label, f.curve.word, spec, f.curve.kind, f.curve.name), f.exponent) for f in W], W.boundary_target, W.notes)
    if sites is None:
        sites = find_subword(W, list(eta.right.factors))[:2]
    if len(sites) != 2:
        raise ValueError("need two substitution sites")
    first, second = sorted(sites)
    out = twisted_substitution(W, eta, phi, second)
    return twisted_substitution(out, eta, None, first)


def w2_substituted(g: int, h1: int, h2: int, phi: Optional[mcg.MappingClass], sites: Optional[Sequence[int]] = None) -> Factorization:
    """W_2^g(1, phi): V_1-substitutions at t_{c_r} (g = 2r), V_2 at t_{a_{r+1}} t_{a'_{r+1}} (g = 2r+1)."""
    r = 2 * h1 + h2 - 1
    if g not in (2 * r, 2 * r + 1):
        raise ValueError(f"g must be {2 * r} or {2 * r + 1} for h1={h1}, h2={h2}")
    kind = 1 if g == 2 * r else 2
    return w2_twisted(g, v_relator(kind, g, h1, h2), phi, sites, SurfaceSpec(g, 2, h1=h1, h2=h2))


def w1_substituted(n: int, phi: Optional[mcg.MappingClass], sites: Optional[Sequence[int]] = None) -> Factorization:
    """W(1, phi) on Sigma_{4n}^2: W_1^{2n}-substitutions at the two t_{c_{2n}} of W_2^{4n}."""
    return w2_twisted(4 * n, w1(2 * n), phi, sites)


def free_phi(spec: SurfaceSpec, n: int, h1: int) -> mcg.MappingClass:
    """t_{a_{n+1}} ... t_{a_{h1}} t_{b_{h1+1}} ... t_{b_{2h1}}."""
    toks = [f"a:{i}" for i in range(n + 1, h1 + 1)] + [f"b:{i}" for i in range(h1 + 1, 2 * h1 + 1)]
    f = mcg.product([mcg.twist(t, spec) for t in toks], spec)
    return mcg.MappingClass(f.spec, f.images, f._inv, label="phi")


def w1_phi(spec: SurfaceSpec, n: int, m: Optional[int] = None) -> mcg.MappingClass:
    """phi' = t_{b_{n+1}} ... t_{b_{2n}}, or phi'_m = t_{a_1} ... t_{a_{n-1}} t_{a_n}^m t_{b_{n+2}} ... t_{b_{2n}}."""
    if m is None:
        maps = [mcg.twist(f"b:{i}", spec) for i in range(n + 1, 2 * n + 1)]
        label = "phi'"
    else:
        maps = [mcg.twist(f"a:{i}", spec) for i in range(1, n)] + [mcg.twist(f"a:{n}", spec) ** m]
        maps += [mcg.twist(f"b:{i}", spec) for i in range(n + 2, 2 * n + 1)]
        label = f"phi'_{m}"
    f = mcg.product(maps, spec)
    return mcg.MappingClass(f.spec, f.images, f._inv, label=label)
