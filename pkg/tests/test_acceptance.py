"""Acceptance suite: one printed PASS/FAIL line per criterion.

All checks are exact equalities of free-group automorphisms, integer
homology computations, or group-theoretic certificates.  Time limits are
pinned per criterion.  Run directly with ``python3 tests/test_acceptance.py``
or through pytest.
"""
import random
import sys
import time

import numpy as np
import pytest

from surfmcg import atlas, derived, loops, mcg, pi1, pipeline, relators
from surfmcg import factorization as fz
from surfmcg.atlas import SurfaceSpec
from surfmcg.words import cyclic_reduce, parse_letters

LIMITS = {1: 60, 2: 300, 3: 600, 4: 600, 5: 300, 6: 900, 7: 900, 8: 120, 9: 600}


def report(n, ok, t, detail=""):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({t:.2f}s, limit {LIMITS[n]}s){' ' + detail if detail else ''}"
    sys.__stdout__.write(line + "\n")
    sys.__stdout__.flush()
    return line


def finish(n, failures, t0, detail=""):
    t = time.perf_counter() - t0
    ok = not failures and t < LIMITS[n]
    report(n, ok, t, detail if ok else f"{detail} failures={failures[:5]}")
    assert not failures, failures
    assert t < LIMITS[n]


# ------------------------------------------------------------ 1

def criterion_1():
    t0 = time.perf_counter()
    failures, checks = [], 0
    for g in (2, 3, 4):
        for b in (1, 2):
            s = SurfaceSpec(g, b)
            T = lambda n: mcg.twist(n, s)
            top = 2 * g + 1 if b == 2 else 2 * g
            braid = [(f"A:{i}", f"A:{i + 1}") for i in range(1, top)] + [(f"a:{i}", f"b:{i}") for i in range(1, g + 1)]
            comm = [(f"A:{i}", f"A:{j}") for i in range(1, top + 1) for j in range(i + 2, top + 1)]
            comm += [(f"b:{i}", f"b:{j}") for i in range(1, g + 1) for j in range(i + 1, g + 1)]
            comm += [(f"a:{i}", f"b:{j}") for i in range(1, g + 1) for j in range(1, g + 1) if i != j]
            comm += [(f"c:{i}", f"A:{j}") for i in range(1, g) for j in range(1, 2 * g + 1) if j != 2 * i + 1]
            for x, y in braid:
                X, Y = T(x), T(y)
                checks += 1
                if not mcg.equal(X * Y * X, Y * X * Y):
                    failures.append(("braid", g, b, x, y))
            for x, y in comm:
                X, Y = T(x), T(y)
                checks += 1
                if not mcg.equal(X * Y, Y * X):
                    failures.append(("commute", g, b, x, y))
            names = ([f"a:{i}" for i in range(1, g + 1)] + [f"b:{i}" for i in range(1, g + 1)]
                     + [f"c:{i}" for i in range(1, g)] + [f"A:{i}" for i in range(1, top + 1)]
                     + [f"B:{k}" for k in range(g + 1)] + [f"a':{i}" for i in range(1, g + 1)])
            for nm in names:
                checks += 1
                v = atlas.h1_class(atlas.curve_word(nm, s), g)
                if not np.array_equal(mcg.homology_action(T(nm)), mcg.transvection(v)):
                    failures.append(("transvection", g, b, nm))
    return failures, t0, f"{checks} checks"


# ------------------------------------------------------------ 2

def criterion_2():
    t0 = time.perf_counter()
    failures = []
    T = mcg.twist
    for b in (1, 2):
        s = SurfaceSpec(2, b)
        if not mcg.equal(mcg.product([T("A:1", s), T("A:2", s)], s) ** 6, T("c:1", s)):
            failures.append(("(A1 A2)^6 = c1", b))
    for g in (2, 4):
        s = SurfaceSpec(g, 2)
        if not mcg.equal(derived.delta_bar(s, g) ** (2 * g + 2), T(f"c:{g // 2}", s)):
            failures.append(("Dbar_g^(2g+2) = c_r", g))
    s = SurfaceSpec(3, 2)
    if not mcg.equal(derived.delta_bar(s, 3) ** 4, mcg.product([T("a:2", s), T("a':2", s)], s)):
        failures.append(("Dbar_3^4", 3))
    for g in (2, 3):
        s = SurfaceSpec(g, 2)
        rhs = mcg.product([T(f"a:{g + 1}", s), T(f"a':{g + 1}", s)], s)
        if not mcg.equal(derived.delta(s, 2 * g + 1) ** (2 * g + 2), rhs):
            failures.append(("Delta_(2g+1)^(2g+2)", g))
    return failures, t0, "7 chain relations"


# ------------------------------------------------------------ 3

def criterion_3():
    t0 = time.perf_counter()
    failures = []
    for g in (2, 3, 4, 5):
        if relators.verify(relators.w2(g))["status"] != "pass":
            failures.append(("W2", g))
    for g in (2, 4):
        if relators.verify(relators.delta_product_identity(g))["status"] != "pass":
            failures.append(("delta product", g))
        s = SurfaceSpec(g, 2)
        for k in range(g + 1):
            if not mcg.equal(relators.beta(s, k), mcg.twist(f"B:{k}", s)):
                failures.append(("beta", g, k))
    return failures, t0, "W2 g=2..5, Delta product, beta_k"


# ------------------------------------------------------------ 4

def criterion_4():
    t0 = time.perf_counter()
    failures = []
    rels = [relators.korkmaz_x(2), relators.korkmaz_x(4), relators.four_torus()]
    rels += [relators.four_boundary(g) for g in (1, 2, 3)]
    rels += [relators.gurtas(3, 1, b=2), relators.gurtas(3, 1, b=1)]
    for r in rels:
        rep = relators.verify(r)
        if rep["status"] != "pass":
            failures.append((r.name, r.params, rep["status"]))
    return failures, t0, f"{len(rels)} relators"


# ------------------------------------------------------------ 5

def criterion_5():
    t0 = time.perf_counter()
    failures = []
    ids = relators.gurtas_curve_identities(3, 1)
    failures += [k for k, v in ids.items() if not v]
    rho, steps, target = relators.gurtas_hurwitz_path(3, 1)
    rep = relators.hurwitz_path_check(rho, steps, target)
    if rep.status != "pass" or not rep.matches_target:
        failures.append(("path", rep.failed_at, rep.reason))
    if not all(ok for _, _, ok in rep.checks):
        failures.append("a step changed the product")
    return failures, t0, f"{len(ids)} identities, {rep.steps} steps"


# ------------------------------------------------------------ 6

def criterion_6():
    t0 = time.perf_counter()
    failures = []
    g, h1, h2 = 6, 1, 2
    spec = SurfaceSpec(g, 2, h1=h1, h2=h2)
    phi = relators.free_phi(spec, 1, h1)
    rho = relators.w2_substituted(g, h1, h2, phi)
    base = relators.w2(g).as_factorization()
    if not mcg.equal(fz.evaluate(rho), fz.evaluate(base)):
        failures.append("product changed by substitution")
    if not fz.verify(rho):
        failures.append("not a boundary multitwist")
    if fz.sections_report(rho) != [(1, -1), (2, -1)]:
        failures.append(("sections", fz.sections_report(rho)))
    once = fz.blow_down(rho, 1)
    closed = fz.blow_down(once, 1)
    if not fz.verify(once):
        failures.append("capped once: not the boundary twist")
    if not (closed.positive and closed.spec.boundaries == 0 and len(closed) == len(rho)):
        failures.append("capped factorization not positive")
    return failures, t0, f"{len(rho)} factors, sections (-1,-1)"


# ------------------------------------------------------------ 7

def criterion_7():
    t0 = time.perf_counter()
    failures = []
    spec = SurfaceSpec(6, 2, h1=1, h2=2)
    P = pi1.total_space_pi1(relators.w2_substituted(6, 1, 2, relators.free_phi(spec, 1, 1)))
    rec = pi1.recognize(P, "free(1)")
    if rec.verdict != "confirmed":
        failures.append(("W2-substituted free(1)", str(rec)))
    s4 = SurfaceSpec(4, 2)
    P = pi1.total_space_pi1(relators.w1_substituted(1, relators.w1_phi(s4, 1)))
    if pi1.recognize(P, "free(1)").verdict != "confirmed":
        failures.append("W1-substituted phi' free(1)")
    for m in (2, 3):
        P = pi1.total_space_pi1(relators.w1_substituted(1, relators.w1_phi(s4, 1, m)))
        if pi1.abelianization(P) != (1, [m]):
            failures.append(("W1-substituted abelianization", m, pi1.abelianization(P)))
        if pi1.recognize(P, f"Z+Z/{m}").verdict != "confirmed":
            failures.append(("W1-substituted Z+Z/m", m))
    res = pipeline.run(pi1.parse_presentation("gens x\nx^2"), target="finite(2)")
    if res.placement.g != 6 or res.abelian != (0, [2]) or res.recognition.verdict != "confirmed":
        failures.append(("Z_2 pipeline", res.placement.g, res.abelian, str(res.recognition)))
    if pi1.coset_order(pi1.tietze_simplify(res.presentation)) != 2:
        failures.append("Z_2 coset order")
    return failures, t0, "free(1); free(1), Z+Z/2, Z+Z/3; Z_2 order 2"


# ------------------------------------------------------------ 8

def _random_relator(rng, n):
    while True:
        d = rng.randint(1, 5) if n > 1 else 1
        syl = []
        for _ in range(d):
            i = rng.randint(1, n)
            while syl and i == syl[-1][0]:
                i = rng.randint(1, n)
            syl.append((i, rng.choice([1, -1]) * rng.randint(1, 3)))
        w = loops.SyllableForm(tuple(syl)).word()
        if cyclic_reduce(w) == w:
            return w


def _check_loops(rels, n, failures):
    forms = [loops.syllable_decompose(r) for r in rels]
    raw = [loops.construct_R(f, n) for f in forms]
    for r, f, R in zip(rels, forms, raw):
        if loops.phi_map(R.word, n) != r:
            failures.append(("phi", r))
        if loops.handle_letters(R.word, n) != f.d - 1:
            failures.append(("handles", r))
    P = loops.placement(n, max(f.d for f in forms), len(rels))
    placed = loops.embed_and_adjust(loops.loops_for(rels, n), P)
    for i, R in enumerate(placed, start=1):
        c = loops.contracts(R, i, P)
        if not c["phi"] or abs(c["target"][1]) != 1 or any(c["avoided"].values()):
            failures.append(("contracts", rels[i - 1], c))


def criterion_8():
    t0 = time.perf_counter()
    failures = []
    _check_loops([parse_letters("a2 a1 a2^2 a5^-1 a4^-3")], 5, failures)
    _check_loops([parse_letters("a3^-1 a2^-1")], 3, failures)
    rng = random.Random(20240601)
    count = 0
    while count < 200:
        n = rng.randint(1, 5)
        rels = [_random_relator(rng, n), _random_relator(rng, n)]
        _check_loops(rels, n, failures)
        count += len(rels)
    return failures, t0, f"2 reference instances + {count} random relators"


# ------------------------------------------------------------ 9

def criterion_9():
    t0 = time.perf_counter()
    failures = []
    rho = relators.w2(2).as_factorization()
    if not fz.verify(rho):
        failures.append("W2:2 itself fails")
    for i in range(len(rho)):
        fs = list(rho.factors)
        del fs[i]
        if fz.verify(rho.with_factors(fs)):
            failures.append(("deletion", i + 1))
    swaps = 0
    for i in range(len(rho) - 1):
        u, v = rho.factors[i], rho.factors[i + 1]
        hu, hv = (atlas.h1_class(f.curve.word, 2) for f in (u, v))
        X, Y = u.twist(), v.twist()
        if atlas.pairing(hu, hv) == 0 and mcg.equal(X * Y, Y * X):
            continue
        swaps += 1
        fs = list(rho.factors)
        fs[i], fs[i + 1] = fs[i + 1], fs[i]
        if fz.verify(rho.with_factors(fs)):
            failures.append(("transposition", i + 1))
    return failures, t0, f"{len(rho)} deletions, {swaps} transpositions"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9]


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n):
    failures, t0, detail = CRITERIA[n - 1]()
    finish(n, failures, t0, detail)


if __name__ == "__main__":
    bad = 0
    for n, crit in enumerate(CRITERIA, start=1):
        failures, t0, detail = crit()
        t = time.perf_counter() - t0
        ok = not failures and t < LIMITS[n]
        bad += not ok
        report(n, ok, t, detail if ok else f"{detail} failures={failures[:5]}")
    sys.exit(1 if bad else 0)
