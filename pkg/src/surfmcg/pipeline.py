"""From a finite presentation of Gamma to a Lefschetz fibration with pi_1 = Gamma.

The monodromy is W_2^g(1, psi_1).  When every t_{R_i} is drawn as a simple
curve, psi_1 is a genuine mapping class and pi_1 is read off the actual
vanishing cycles.  Independently, the replacement route presents the same
group by the vanishing cycles of W_2^g(1, phi) together with R_1 .. R_k.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from . import factorization as fz
from . import loops, pi1, relators
from .atlas import Curve, SurfaceSpec
from .factorization import Factor, Factorization
from .words import Letters, cyclic_reduce


@dataclass
class PipelineResult:
    gamma: pi1.GroupPresentation
    placement: loops.Placement
    loops: list
    psi_labels: list
    constructible: bool
    factorization: Factorization
    verified: Optional[bool]
    sections: object
    presentation: pi1.GroupPresentation
    replacement: pi1.GroupPresentation
    abelian: tuple
    gamma_abelian: tuple
    recognition: Optional[pi1.Recognition]
    pencil: Optional[Factorization]
    pencil_verified: Optional[bool]
    seconds: float = 0.0
    notes: list = field(default_factory=list)


def gamma_relators_as_surface_words(G: pi1.GroupPresentation) -> list:
    """Generator j of Gamma becomes a_j (letter 2j-1)."""
    out = []
    for r in G.relators:
        out.append(cyclic_reduce(tuple((2 * abs(x) - 1) * (1 if x > 0 else -1) for x in r)))
    return [w for w in out if w]


def _symbolic_copy(rho: Factorization) -> Factorization:
    """Mark the phi-twisted block as psi_1-images with no twist automorphism."""
    fs = list(rho.factors)
    for j, f in enumerate(fs):
        if f.curve.kind == "image":
            c = f.curve
            fs[j] = Factor(Curve(f"sym:psi1[{c.base.label if c.base else c.label}]", c.word, c.spec, "symbolic"), f.exponent)
    return rho.with_factors(fs, "psi_1-twisted factors are symbolic; their words are phi-images")


def run(G: pi1.GroupPresentation, target=None, odd: bool = False, seed: int = 0, coset_cap: int = 10**6,
        h1: Optional[int] = None, h2: Optional[int] = None) -> PipelineResult:
    t0 = time.perf_counter()
    rels = gamma_relators_as_surface_words(G)
    n, k = G.ngens, len(rels)
    forms = [loops.syllable_decompose(r) for r in rels]
    l = max((f.d for f in forms), default=1)
    P = loops.placement(n, l, k, h1=h1, h2=h2, odd=odd)
    Rs = loops.embed_and_adjust(loops.loops_for(rels, n), P) if rels else []
    psi, labels = loops.build_psi1(Rs, P)
    spec = SurfaceSpec(P.g, 2, h1=P.h1, h2=P.h2)
    phi = relators.free_phi(spec, n, P.h1)
    notes = []
    if psi is not None:
        if not loops.psi1_fixes(psi, P):
            raise AssertionError("psi_1 moves the substitution curve")
        rho = relators.w2_substituted(P.g, P.h1, P.h2, psi)
        verified = fz.verify(rho)
        pres = pi1.total_space_pi1(rho)
        notes.append("psi_1 constructed; pi_1 read from the actual vanishing cycles")
    else:
        rho = _symbolic_copy(relators.w2_substituted(P.g, P.h1, P.h2, phi))
        verified = None
        pres = None
        notes.append("some t_{R_i} not constructible; psi_1 symbolic")
    repl = pi1.total_space_pi1(relators.w2_substituted(P.g, P.h1, P.h2, phi))
    repl = pi1.GroupPresentation(repl.gens, repl.relators + tuple(R.word for R in Rs),
                                 repl.log + ("replacement route: vanishing cycles of W_2^g(1,phi) plus R_1..R_k",))
    if pres is None:
        pres = repl
    ab = pi1.abelianization(pres)
    gab = pi1.abelianization(G)
    if pi1.abelianization(repl) != ab:
        raise AssertionError("the two presentation routes disagree on the abelianization")
    rec = pi1.recognize(pres, target, seed=seed, coset_cap=coset_cap) if target is not None else None
    pencil, pverified = None, None
    if verified:
        pencil = fz.blow_down(rho, 1)
        pverified = fz.verify(pencil)
    sections = fz.sections_report(rho, verified=bool(verified)) if verified is not None else "unverified"
    return PipelineResult(G, P, Rs, labels, psi is not None, rho, verified, sections, pres, repl, ab, gab, rec,
                          pencil, pverified, round(time.perf_counter() - t0, 3), notes)
