"""Fundamental groups of Lefschetz fibration total spaces.

pi_1(X) is pi_1(Sigma_g) modulo the vanishing cycles.  Presentations are kept
as integer words over generators 1..n; ``names`` carries display labels.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from . import atlas
from .factorization import Factorization, curve_class
from .words import Letters, cyclic_reduce, free_reduce, inverse, letter_name, surface_relator


@dataclass(frozen=True)
class GroupPresentation:
    gens: tuple
    relators: tuple
    log: tuple = field(default=(), compare=False)
    exhausted: bool = field(default=False, compare=False)

    def __post_init__(self):
        rels = []
        for r in self.relators:
            c = cyclic_reduce(tuple(r))
            if c:
                rels.append(c)
        object.__setattr__(self, "gens", tuple(self.gens))
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def ngens(self) -> int:
        return len(self.gens)

    def index(self, name: str) -> int:
        return self.gens.index(name) + 1

    def format_word(self, w: Sequence[int]) -> str:
        if not w:
            return "1"
        out, i = [], 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            name = self.gens[abs(w[i]) - 1]
            e = (j - i) * (1 if w[i] > 0 else -1)
            out.append(name if e == 1 else f"{name}^{e}")
            i = j
        return " ".join(out)

    def __str__(self):
        rel = ", ".join(self.format_word(r) for r in self.relators)
        return f"< {' '.join(self.gens)} | {rel} >"


def surface_names(g: int) -> tuple:
    return tuple(letter_name(i) for i in range(1, 2 * g + 1))


def surface_group(g: int) -> GroupPresentation:
    return GroupPresentation(surface_names(g), (surface_relator(g),))


# ------------------------------------------------------------ assembly

def _closing(spec) -> callable:
    keep = 2 * spec.genus
    return lambda w: free_reduce(x for x in w if abs(x) <= keep)


def total_space_pi1(rho: Factorization) -> GroupPresentation:
    """pi_1(Sigma_g) / << vanishing cycles >> for a factorization on any model of genus g.

    Capping every boundary kills the extra generators of the bordered model.
    """
    g = rho.spec.genus
    cap = _closing(rho.spec)
    rels = [surface_relator(g)]
    for f in rho.factors:
        if f.curve.word is None:
            raise ValueError(f"factor {f.curve.label} has no word")
        rels.append(cap(f.curve.word))
    return GroupPresentation(surface_names(g), tuple(rels), ("assembled from %d vanishing cycles" % len(rho),))


# ------------------------------------------------------------ abelianization

def abelianization(P: GroupPresentation) -> tuple:
    """(free rank, invariant factors > 1)."""
    n = P.ngens
    if not P.relators or n == 0:
        return (n, [])
    rows = []
    for r in P.relators:
        row = [0] * n
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    M = Matrix(rows)
    inv = [abs(int(d)) for d in invariant_factors(M, domain=ZZ)]
    nonzero = [d for d in inv if d != 0]
    return (n - len(nonzero), sorted(d for d in nonzero if d > 1))


def format_abelian(ab: tuple) -> str:
    rank, tors = ab
    parts = ([f"Z^{rank}"] if rank > 1 else ["Z"] if rank == 1 else []) + [f"Z/{d}" for d in tors]
    return " + ".join(parts) if parts else "0"


# ------------------------------------------------------------ Tietze simplification

def _subst(w: Letters, x: int, expr: Letters) -> Letters:
    out = []
    for y in w:
        if y == x:
            out.extend(expr)
        elif y == -x:
            out.extend(inverse(expr))
        else:
            out.append(y)
    return cyclic_reduce(free_reduce(out))


def _renumber(gens, rels, dead):
    live = [i for i in range(1, len(gens) + 1) if i not in dead]
    pos = {old: new for new, old in enumerate(live, start=1)}
    new_rels = [tuple((pos[abs(x)] if x > 0 else -pos[abs(x)]) for x in r) for r in rels]
    return tuple(gens[i - 1] for i in live), new_rels


def _dedupe(rels):
    seen, out = set(), []
    for r in rels:
        r = cyclic_reduce(r)
        if not r:
            continue
        k = curve_class(r)
        if k not in seen:
            seen.add(k)
            out.append(r)
    return out


def _shorten(rels, rng):
    """Replace a long piece of one relator by the shorter complement of another."""
    changed = False
    order = sorted(range(len(rels)), key=lambda i: (len(rels[i]), rng.random()))
    for i in order:
        r = rels[i]
        L = len(r)
        if L < 2:
            continue
        cands = {}
        for rr in (r, inverse(r)):
            for s in range(L):
                rot = rr[s:] + rr[:s]
                for k in range(L // 2 + 1, L + 1):
                    cands.setdefault(rot[:k], inverse(rot[k:]))
        for j in range(len(rels)):
            if j == i:
                continue
            w = rels[j]
            best = None
            for s in range(len(w)):
                rot = w[s:] + w[:s]
                for k in range(min(L, len(w)), L // 2, -1):
                    rep = cands.get(rot[:k])
                    if rep is not None and len(rep) < k:
                        nw = cyclic_reduce(free_reduce(rep + rot[k:]))
                        if best is None or len(nw) < len(best):
                            best = nw
                        break
            if best is not None and len(best) < len(w):
                rels[j] = best
                changed = True
    return changed


def tietze_simplify(P: GroupPresentation, seed: int = 0, max_rounds: int = 500, max_len: int = 5000) -> GroupPresentation:
    """Greedy Tietze reduction with a move log.

    Moves: drop trivial or duplicate relators; eliminate a generator that occurs
    exactly once in some relator; shorten relators against each other.
    Deterministic for a fixed seed.
    """
    rng = random.Random(seed)
    gens = list(P.gens)
    rels = _dedupe([tuple(r) for r in P.relators])
    log = list(P.log)
    exhausted = False
    for _ in range(max_rounds):
        rels = _dedupe(rels)
        # eliminate a generator occurring once in some relator, shortest relator first
        best = None
        for idx, r in enumerate(rels):
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            for x, c in counts.items():
                if c != 1:
                    continue
                growth = sum(len(s) for s in rels if x in map(abs, s)) * (len(r) - 1)
                key = (len(r), growth, rng.random())
                if best is None or key < best[0]:
                    best = (key, idx, x)
        if best is not None:
            _, idx, x = best
            r = rels.pop(idx)
            p = next(i for i, y in enumerate(r) if abs(y) == x)
            rot = r[p:] + r[:p]
            rest = rot[1:]
            expr = inverse(rest) if rot[0] > 0 else rest
            rels = [_subst(s, x, expr) for s in rels]
            log.append(f"eliminate {gens[x - 1]} = {_fmt(gens, expr)}")
            gens, rels = _renumber(gens, rels, {x})
            rels = list(rels)
            if any(len(s) > max_len for s in rels):
                exhausted = True
                log.append("stopped: relator length cap")
                break
            continue
        if _shorten(rels, rng):
            log.append("shorten relators")
            continue
        break
    else:
        exhausted = True
        log.append("stopped: round cap")
    return GroupPresentation(tuple(gens), tuple(rels), tuple(log), exhausted)


def _fmt(gens, w):
    return GroupPresentation(tuple(gens), ()).format_word(w)


# ------------------------------------------------------------ recognition

@dataclass
class Recognition:
    verdict: str  # confirmed / refuted / inconclusive
    target: tuple
    abelian: tuple
    simplified: GroupPresentation
    certificate: str = ""

    def __str__(self):
        return f"{_target_str(self.target)} {self.verdict}"


def _target_str(t):
    kind = t[0]
    return {"free": f"free({t[1]})", "zm": f"Z+Z/{t[1]}", "finite": f"finite({t[1]})", "surface": f"surface({t[1]})"}[kind]


def parse_target(text: str) -> tuple:
    """free(n), Z+Z/m, finite(N), surface(g)."""
    t = text.replace(" ", "")
    if t.startswith("free(") and t.endswith(")"):
        return ("free", int(t[5:-1]))
    if t.startswith("finite(") and t.endswith(")"):
        return ("finite", int(t[7:-1]))
    if t.startswith("surface(") and t.endswith(")"):
        return ("surface", int(t[8:-1]))
    if t.startswith("Z+Z/"):
        return ("zm", int(t[4:]))
    raise ValueError(f"unknown target {text!r}")


def _expected_abelian(target):
    kind, n = target
    if kind == "free":
        return (n, [])
    if kind == "zm":
        return (1, [n]) if n > 1 else (1, [])
    if kind == "surface":
        return (2 * n, [])
    return None


def _syllables_mod(w: Letters, x: int, m: int) -> tuple:
    """Cyclic normal form in <x, y | x^m> = Z/m * Z as a syllable tuple."""
    syl = []
    for t in w:
        g, e = abs(t), (1 if t > 0 else -1)
        if syl and syl[-1][0] == g:
            syl[-1][1] += e
        else:
            syl.append([g, e])
    changed = True
    while changed:
        changed = False
        out = []
        for g, e in syl:
            if g == x:
                e %= m
            if e == 0:
                changed = True
                continue
            if out and out[-1][0] == g:
                out[-1][1] += e
                changed = True
            else:
                out.append([g, e])
        if len(out) > 1 and out[0][0] == out[-1][0]:
            out[0][1] += out.pop()[1]
            changed = True
        syl = out
    return tuple((g, e % m if g == x else e) for g, e in syl)


def _cyc_equal(s: tuple, t: tuple) -> bool:
    return len(s) == len(t) and any(s[i:] + s[:i] == t for i in range(max(len(s), 1)))


def _is_zm_canonical(P: GroupPresentation, m: int) -> bool:
    """<x, y | x^m, r, ...> with r equal to [x, y]^{+-1} up to conjugacy in Z/m * Z.

    Any further relator must already be trivial in Z + Z/m, i.e. have
    y-exponent sum 0 and x-exponent sum divisible by m.
    """
    if P.ngens != 2 or len(P.relators) < 2:
        return False
    for x in (1, 2):
        y = 3 - x
        target = _syllables_mod((x, y, -x, -y), x, m)
        power = [i for i, r in enumerate(P.relators) if curve_class(r) == curve_class((x,) * m)]
        comm = [i for i, r in enumerate(P.relators)
                if any(_cyc_equal(_syllables_mod(c, x, m), target) for c in (r, inverse(r)))]
        for i in power:
            for j in comm:
                if i == j:
                    continue
                rest = [r for k, r in enumerate(P.relators) if k not in (i, j)]
                if all(sum(1 if t == y else -1 if t == -y else 0 for t in r) == 0
                       and sum(1 if t == x else -1 if t == -x else 0 for t in r) % m == 0 for r in rest):
                    return True
    return False


def _one_vertex_surface(P: GroupPresentation) -> Optional[int]:
    """Genus if P is <gens | w> with w an orientable one-vertex polygon word, else None."""
    if len(P.relators) != 1:
        return None
    w = P.relators[0]
    n = P.ngens
    occ: dict[int, list] = {}
    for i, x in enumerate(w):
        occ.setdefault(abs(x), []).append(i)
    if set(occ) != set(range(1, n + 1)) or any(len(v) != 2 for v in occ.values()):
        return None
    L = len(w)
    parent = list(range(L))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x, (i, j) in occ.items():
        if w[i] != -w[j]:
            return None
        ti, hi = (i, (i + 1) % L) if w[i] > 0 else ((i + 1) % L, i)
        tj, hj = (j, (j + 1) % L) if w[j] > 0 else ((j + 1) % L, j)
        parent[find(ti)] = find(tj)
        parent[find(hi)] = find(hj)
    if len({find(a) for a in range(L)}) != 1 or n % 2:
        return None
    return n // 2


def coset_order(P: GroupPresentation, max_cosets: int = 10**6) -> Optional[int]:
    """Order of the group by Todd-Coxeter enumeration over the trivial subgroup, or None past the cap."""
    from sympy.combinatorics.coset_table import coset_enumeration_r
    from sympy.combinatorics.fp_groups import FpGroup
    from sympy.combinatorics.free_groups import free_group

    if P.ngens == 0:
        return 1
    F, *xs = free_group(" ".join(f"x{i}" for i in range(1, P.ngens + 1)))
    rels = []
    for r in P.relators:
        w = F.identity
        for x in r:
            w = w * (xs[abs(x) - 1] if x > 0 else xs[abs(x) - 1] ** -1)
        rels.append(w)
    G = FpGroup(F, rels)
    try:
        C = coset_enumeration_r(G, [], max_cosets=max_cosets)
    except ValueError:
        return None
    C.compress()
    return len(C.table)


def recognize(P: GroupPresentation, target, seed: int = 0, coset_cap: int = 10**6) -> Recognition:
    if isinstance(target, str):
        target = parse_target(target)
    ab = abelianization(P)
    S = tietze_simplify(P, seed=seed)
    if abelianization(S) != ab:
        raise AssertionError("Tietze simplification changed the abelianization")
    kind, n = target
    want = _expected_abelian(target)
    if want is not None and ab != want:
        return Recognition("refuted", target, ab, S, f"abelianization {format_abelian(ab)}")
    if kind == "free":
        if S.ngens == n and not S.relators:
            return Recognition("confirmed", target, ab, S, f"simplified to {S}")
        return Recognition("inconclusive", target, ab, S, f"simplified only to {S}")
    if kind == "zm":
        if _is_zm_canonical(S, n):
            return Recognition("confirmed", target, ab, S, f"simplified to {S}")
        return Recognition("inconclusive", target, ab, S, f"simplified only to {S}")
    if kind == "surface":
        if _one_vertex_surface(S) == n:
            return Recognition("confirmed", target, ab, S, f"one-vertex surface word {S}")
        return Recognition("inconclusive", target, ab, S, f"simplified only to {S}")
    # finite
    if ab[0] > 0:
        return Recognition("refuted", target, ab, S, "infinite abelianization")
    order_ab = 1
    for d in ab[1]:
        order_ab *= d
    if n % order_ab:
        return Recognition("refuted", target, ab, S, f"abelianization order {order_ab} does not divide {n}")
    N = coset_order(S, coset_cap)
    if N is None:
        return Recognition("inconclusive", target, ab, S, f"coset enumeration exceeded {coset_cap} cosets")
    if N == n:
        return Recognition("confirmed", target, ab, S, f"coset enumeration: order {N}")
    return Recognition("refuted", target, ab, S, f"coset enumeration: order {N}")


# ------------------------------------------------------------ displayed presentations

def _gen(name: str, g: int) -> int:
    fam, i = name[0], int(name[1:])
    return atlas.A(i) if fam == "a" else atlas.B(i)


def s_family_presentation(g: int, h1: int, h2: int) -> GroupPresentation:
    """The relator families that present pi_1(Sigma_g) / << S >> after the hand simplification.

    a_i a_{g+1-i}, b_i a_{g+1-i} b_{g+1-i} a_{g+1-i}^-1 (1 <= i <= r);
    a_{2h1+k}, b_{2h1+k} (1 <= k <= h2-1);
    a_j a_{2h1+1-j}, b_j a_{2h1+1-j} b_{2h1+1-j} a_{2h1+1-j}^-1 (1 <= j <= h1);
    c_{h1}; and a_{r+1} when g = 2r+1.
    """
    r = 2 * h1 + h2 - 1
    if g not in (2 * r, 2 * r + 1):
        raise ValueError(f"g must be {2 * r} or {2 * r + 1}")
    a, b = atlas.A, atlas.B
    rels = []
    for i in range(1, r + 1):
        k = g + 1 - i
        rels.append((a(i), a(k)))
        rels.append((b(i), a(k), b(k), -a(k)))
    for k in range(1, h2):
        rels += [(a(2 * h1 + k),), (b(2 * h1 + k),)]
    for j in range(1, h1 + 1):
        k = 2 * h1 + 1 - j
        rels.append((a(j), a(k)))
        rels.append((b(j), a(k), b(k), -a(k)))
    rels.append(atlas.c_word(h1))
    if g == 2 * r + 1:
        rels.append((a(r + 1),))
    return GroupPresentation(surface_names(g), tuple(rels), ("displayed relator families",))


def free_presentation(g: int, n: int, h1: int, h2: int) -> GroupPresentation:
    """The final presentation for W_2^g(1, phi): the families above plus a_{n+1..h1} and b_{h1..2h1}."""
    P = s_family_presentation(g, h1, h2)
    extra = [(atlas.A(i),) for i in range(n + 1, h1 + 1)] + [(atlas.B(i),) for i in range(h1, 2 * h1 + 1)]
    return GroupPresentation(P.gens, P.relators + tuple(extra), ("displayed final relator list",))


def s_quotient(g: int, h1: int, h2: int) -> GroupPresentation:
    """pi_1(Sigma_g) / << S >> computed from the curve words of S."""
    from .atlas import SurfaceSpec, atlas_curve

    r = 2 * h1 + h2 - 1
    spec = SurfaceSpec(g, 2, h1=h1, h2=h2)
    names = [f"B:{k}" for k in range(g + 1)] + [f"D:{j}" for j in range(2 * h1 + 1)] + ["E"]
    top = 2 * r if g == 2 * r else 2 * r + 1
    names += [f"A:{k}" for k in range(4 * h1 + 2, top + 1)] + [f"a:{r}", f"a':{r}"]
    if g == 2 * r + 1:
        names += [f"a:{r + 1}", f"a':{r + 1}"]
    cap = _closing(spec)
    rels = [surface_relator(g)] + [cap(atlas_curve(nm, spec).word) for nm in names]
    return GroupPresentation(surface_names(g), tuple(rels), ("normal closure of S",))


def parse_presentation(text: str) -> GroupPresentation:
    """``gens x y ...`` then one relator per line (``x^2 y x^-1``; ``1`` for empty)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("gens"):
        raise ValueError("presentation must start with a 'gens' line")
    gens = tuple(lines[0].split()[1:])
    if len(set(gens)) != len(gens):
        raise ValueError("repeated generator name")
    idx = {n: i for i, n in enumerate(gens, start=1)}
    rels = []
    for ln in lines[1:]:
        w = []
        for tok in ln.replace("*", " ").split():
            if tok == "1":
                continue
            name, _, e = tok.partition("^")
            if name not in idx:
                raise ValueError(f"unknown generator {name!r}")
            e = int(e) if e else 1
            w.extend([idx[name] if e > 0 else -idx[name]] * abs(e))
        rels.append(free_reduce(w))
    return GroupPresentation(gens, tuple(rels))


def format_presentation(P: GroupPresentation) -> str:
    return "\n".join([" ".join(("gens",) + P.gens)] + [P.format_word(r) for r in P.relators]) + "\n"
