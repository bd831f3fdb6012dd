"""Command-line front end.

Exit codes: 0 pass, 1 fail, 2 inconclusive or over budget, 3 input error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from pathlib import Path
from typing import Optional

from . import atlas, factorization as fz, loops, mcg, pi1, relators
from .atlas import SurfaceSpec

EXIT = {"pass": 0, "confirmed": 0, "fail": 1, "refuted": 1, "inconclusive": 2, "unsupported": 2, "error": 3}


class InputError(ValueError):
    pass


# ------------------------------------------------------------ mapping class expressions

def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_mapping_class(text: str, spec: SurfaceSpec) -> mcg.MappingClass:
    """``T[a:2]^-1; conj(T[b:1], T[A:3]); chain(A:1..A:4)``, applied left to right."""
    maps = []
    for term in _split_top(text, ";"):
        maps.append(_parse_term(term, spec))
    # the first term acts first, so it is the rightmost factor of the composition
    return mcg.product(list(reversed(maps)), spec) if maps else mcg.identity(spec)


def _parse_term(term: str, spec: SurfaceSpec) -> mcg.MappingClass:
    m = re.fullmatch(r"T\[(.+)\](?:\^(-?\d+))?", term)
    if m:
        curve = atlas.parse_curve(m.group(1), spec)
        return mcg.curve_twist(curve, int(m.group(2) or 1))
    if term.startswith("conj(") and term.endswith(")"):
        args = _split_top(term[5:-1], ",")
        if len(args) != 2:
            raise InputError("conj takes two expressions")
        f, g = (parse_mapping_class(a, spec) for a in args)
        return mcg.product([f, g, mcg.invert(f)], spec)
    m = re.fullmatch(r"chain\(([A-Za-z']+):(\d+)\.\.\1:(\d+)\)", term)
    if m:
        fam, lo, hi = m.group(1), int(m.group(2)), int(m.group(3))
        return mcg.chain_twist([f"{fam}:{j}" for j in range(lo, hi + 1)], spec)
    raise InputError(f"cannot parse mapping class term {term!r}")


def _spec_from(args) -> SurfaceSpec:
    return SurfaceSpec(args.genus, args.boundaries, h1=args.h1, h2=args.h2)


# ------------------------------------------------------------ output

def _emit(report: dict, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "machine":
        out.write(json.dumps(report, default=str, sort_keys=True) + "\n")
        return
    for k, v in report.items():
        if isinstance(v, (list, tuple)) and v and isinstance(v[0], str) and k in ("factorization", "loops", "log"):
            out.write(f"{k}:\n")
            for line in v:
                out.write(f"  {line}\n")
        else:
            out.write(f"{k}: {v}\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(str(e))


# ------------------------------------------------------------ commands

def cmd_verify(args) -> dict:
    src = args.input
    if src.startswith("builtin:"):
        rel = relators.parse_builtin(src[len("builtin:"):])
        rep = relators.verify(rel)
        rep["command"] = "verify"
        return rep
    rho = fz.parse_factorization(_read(src))
    t0 = time.perf_counter()
    try:
        ok = fz.verify(rho)
        status = "pass" if ok else "fail"
    except mcg.WordGrowthError:
        status = "inconclusive"
    except mcg.UnsupportedCurve:
        status = "unsupported"
    return {"command": "verify", "status": status, "genus": rho.spec.genus, "boundaries": rho.spec.boundaries,
            "tokens": len(rho), "seconds": round(time.perf_counter() - t0, 3)}


def cmd_substitute(args) -> dict:
    base = relators.parse_builtin(args.base)
    eta = relators.parse_builtin(args.eta)
    if base.name != "W2":
        raise InputError("substitution base must be a W2 relator")
    g = base.spec.genus
    spec = SurfaceSpec(g, 2, h1=eta.spec.h1, h2=eta.spec.h2)
    phi = parse_mapping_class(args.phi, spec) if args.phi else None
    sites = [int(x) for x in args.sites.split(",")] if args.sites else None
    rho = relators.w2_twisted(g, eta, phi, sites, spec)
    try:
        status = "pass" if fz.verify(rho) else "fail"
    except mcg.WordGrowthError:
        status = "inconclusive"
    rep = {"command": "substitute", "status": status, "tokens": len(rho), "notes": list(rho.notes),
           "sections": fz.sections_report(rho, status == "pass")}
    if args.output:
        Path(args.output).write_text(fz.format_factorization(rho))
        rep["output"] = args.output
    return rep


def cmd_hurwitz(args) -> dict:
    m = re.fullmatch(r"gurtas:(\d+),(\d+)", args.path)
    if not m:
        raise InputError("hurwitz takes gurtas:g,h1")
    g, h1 = int(m.group(1)), int(m.group(2))
    t0 = time.perf_counter()
    ids = relators.gurtas_curve_identities(g, h1)
    rho, steps, target = relators.gurtas_hurwitz_path(g, h1)
    rep = relators.hurwitz_path_check(rho, steps, target)
    status = rep.status if all(ids.values()) else "fail"
    return {"command": "hurwitz", "status": status, "steps": rep.steps, "failed_at": rep.failed_at,
            "reason": rep.reason, "matches_target": rep.matches_target, "curve_identities": ids,
            "seconds": round(time.perf_counter() - t0, 3)}


def _builtin_pi1_source(name: str) -> fz.Factorization:
    kind, _, params = name.partition(":")
    vals = [int(x) for x in params.split(",") if x]
    if kind == "free":
        n, h1, h2 = (vals + [None, None, None])[:3]
        h1 = h1 or n
        h2 = h2 or 2
        r = 2 * h1 + h2 - 1
        g = 2 * r
        spec = SurfaceSpec(g, 2, h1=h1, h2=h2)
        return relators.w2_substituted(g, h1, h2, relators.free_phi(spec, n, h1))
    if kind == "w1sub":
        n = vals[0]
        m = vals[1] if len(vals) > 1 else None
        spec = SurfaceSpec(4 * n, 2)
        return relators.w1_substituted(n, relators.w1_phi(spec, n, m))
    if kind == "empty":
        return fz.Factorization(SurfaceSpec(vals[0], 0), ())
    raise InputError(f"unknown pi1 source {name!r}")


def cmd_pi1(args) -> dict:
    src = args.input
    if src.startswith("builtin:"):
        rho = _builtin_pi1_source(src[len("builtin:"):])
    else:
        rho = fz.parse_factorization(_read(src))
    P = pi1.total_space_pi1(rho)
    ab = pi1.abelianization(P)
    S = pi1.tietze_simplify(P, seed=args.seed)
    rep = {"command": "pi1", "abelianization": pi1.format_abelian(ab), "simplified": str(S),
           "log": list(S.log), "status": "pass"}
    if args.target:
        rec = pi1.recognize(P, args.target, seed=args.seed, coset_cap=args.coset_cap)
        rep["verdict"] = str(rec)
        rep["certificate"] = rec.certificate
        rep["status"] = rec.verdict
    return rep


def cmd_loops(args) -> dict:
    text = _read(args.relators)
    G = pi1.parse_presentation(text) if text.lstrip().startswith("gens") else pi1.parse_presentation(
        "gens " + " ".join(f"a{i}" for i in range(1, args.gens + 1)) + "\n" + text)
    if G.ngens != args.gens:
        raise InputError("--gens does not match the presentation")
    from .pipeline import gamma_relators_as_surface_words

    rels = gamma_relators_as_surface_words(G)
    out, ok = [], True
    forms = [loops.syllable_decompose(r) for r in rels]
    for r, f in zip(rels, forms):
        R = loops.construct_R(f, args.gens)
        good = loops.phi_map(R.word, args.gens) == r and loops.handle_letters(R.word, args.gens) == f.d - 1
        ok &= good
        out.append(f"R{len(out) + 1}: genus {R.genus}, word {' '.join(map(str, R.word))}, contracts ok={good}")
    return {"command": "loops", "status": "pass" if ok else "fail", "loops": out}


def cmd_pipeline(args) -> dict:
    from . import pipeline

    G = pi1.parse_presentation(_read(args.presentation))
    res = pipeline.run(G, target=args.target, odd=args.odd, seed=args.seed, coset_cap=args.coset_cap)
    P = res.placement
    rep = {
        "command": "pipeline", "n": P.n, "k": P.k, "l": P.l, "h1": P.h1, "h2": P.h2, "genus": P.g,
        "psi1": " ".join(res.psi_labels), "psi1_constructible": res.constructible,
        "factorization_verified": res.verified, "sections": res.sections,
        "abelianization": pi1.format_abelian(res.abelian), "gamma_abelianization": pi1.format_abelian(res.gamma_abelian),
        "pencil_verified": res.pencil_verified, "notes": res.notes, "seconds": res.seconds,
    }
    status = "pass" if res.abelian == res.gamma_abelian else "fail"
    if res.recognition is not None:
        rep["verdict"] = str(res.recognition)
        rep["certificate"] = res.recognition.certificate
        status = res.recognition.verdict if status == "pass" else status
    elif status == "pass":
        status = "inconclusive"
    rep["status"] = status
    if args.output:
        Path(args.output).write_text(fz.format_factorization(res.factorization))
        rep["output"] = args.output
    return rep


def cmd_emit(args) -> dict:
    rel = relators.parse_builtin(args.relator)
    try:
        rho = rel.as_factorization()
    except ValueError:
        raise InputError(f"{rel.name} is not a boundary multitwist relation")
    text = fz.format_factorization(rho)
    if args.output:
        Path(args.output).write_text(text)
        return {"command": "emit", "status": "pass", "output": args.output, "tokens": len(rho)}
    return {"command": "emit", "status": "pass", "factorization": text.splitlines()}


# ------------------------------------------------------------ entry point

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surfmcg", description="Dehn-twist factorizations and Lefschetz fibration fundamental groups")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--word-cap", type=int, default=10**7)
    p.add_argument("--coset-cap", type=int, default=10**6)
    p.add_argument("--format", choices=["text", "machine"], default="text")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="verify a builtin relator or a factorization file")
    s.add_argument("input", help="builtin:NAME or a factorization file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("substitute", help="twisted substitution into W_2^g")
    s.add_argument("base", help="builtin name of the W2 relator, e.g. W2:6")
    s.add_argument("--eta", required=True, help="builtin relator used for substitution, e.g. V1:6,1,2")
    s.add_argument("--phi", help="mapping class expression for the twisted substitution")
    s.add_argument("--sites", help="two 1-based positions, comma separated")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_substitute)

    s = sub.add_parser("hurwitz", help="replay the scripted Hurwitz path")
    s.add_argument("path", help="gurtas:g,h1")
    s.set_defaults(func=cmd_hurwitz)

    s = sub.add_parser("pi1", help="fundamental group of the total space")
    s.add_argument("input", help="factorization file, or builtin:free:n[,h1,h2] / builtin:w1sub:n[,m] / builtin:empty:g")
    s.add_argument("--target", help="free(n), Z+Z/m, finite(N) or surface(g)")
    s.set_defaults(func=cmd_pi1)

    s = sub.add_parser("loops", help="loops R_i for a list of relators")
    s.add_argument("--gens", type=int, required=True)
    s.add_argument("--relators", required=True, help="file of relators (optionally with a gens line)")
    s.set_defaults(func=cmd_loops)

    s = sub.add_parser("pipeline", help="build a fibration whose fundamental group is the given group")
    s.add_argument("presentation")
    s.add_argument("--target")
    s.add_argument("--odd", action="store_true", help="use odd genus g = 2r + 1")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_pipeline)

    s = sub.add_parser("emit", help="print a builtin relator as a factorization file")
    s.add_argument("relator")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_emit)
    return p


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    mcg.settings.word_cap = args.word_cap
    try:
        rep = args.func(args)
    except (InputError, ValueError, KeyError) as e:
        rep = {"command": args.command, "status": "error", "error": str(e)}
    except mcg.WordGrowthError as e:
        rep = {"command": args.command, "status": "inconclusive", "error": str(e)}
    rep["seed"] = args.seed
    _emit(rep, args.format)
    return EXIT.get(rep["status"], 3)


if __name__ == "__main__":
    sys.exit(main())
