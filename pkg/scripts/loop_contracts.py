"""Statistics of the loop construction on random relators."""
import argparse
import collections
import random

from surfmcg import loops
from surfmcg.atlas import SurfaceSpec
from surfmcg.words import cyclic_reduce, format_letters


def random_relator(rng, n, dmax):
    while True:
        d = rng.randint(1, dmax) if n > 1 else 1
        syl = []
        for _ in range(d):
            i = rng.randint(1, n)
            while syl and i == syl[-1][0]:
                i = rng.randint(1, n)
            syl.append((i, rng.choice([1, -1]) * rng.randint(1, 3)))
        w = loops.SyllableForm(tuple(syl)).word()
        if cyclic_reduce(w) == w:
            return w


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--max-d", type=int, default=5)
    p.add_argument("--show", type=int, default=3)
    args = p.parse_args()
    rng = random.Random(args.seed)
    stats = collections.Counter()
    for t in range(args.count):
        n = rng.randint(1, args.max_n)
        rels = [random_relator(rng, n, args.max_d) for _ in range(rng.randint(1, 3))]
        l = max(loops.syllable_decompose(r).d for r in rels)
        P = loops.placement(n, l, len(rels))
        placed = loops.embed_and_adjust(loops.loops_for(rels, n), P)
        for i, R in enumerate(placed, start=1):
            c = loops.contracts(R, i, P)
            stats["loops"] += 1
            stats["phi ok"] += c["phi"]
            stats[f"target pairing {c['target'][1]:+d}"] += 1
            stats["avoided all zero"] += not any(c["avoided"].values())
            stats["twist constructible"] += loops.twist_R(R, SurfaceSpec(P.g, 2, h1=P.h1, h2=P.h2)) is not None
            if t < args.show:
                print(f"r={format_letters(R.relator)}  g={P.g}  R={format_letters(R.word)}")
    for k, v in sorted(stats.items()):
        print(f"{k:<22} {v}")


if __name__ == "__main__":
    main()
