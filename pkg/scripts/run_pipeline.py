"""Run the presentation-to-fibration pipeline on the bundled example groups."""
import argparse
from pathlib import Path

from surfmcg import pi1, pipeline

DATA = Path(__file__).parent / "data"
TARGETS = {"z2.txt": "finite(2)", "z3.txt": "finite(3)", "free1.txt": "free(1)", "z2_free_abelian.txt": "surface(1)"}


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--odd", action="store_true")
    args = p.parse_args()
    for name, target in TARGETS.items():
        G = pi1.parse_presentation((DATA / name).read_text())
        res = pipeline.run(G, target=target, odd=args.odd, seed=args.seed)
        P = res.placement
        route = "genuine psi_1" if res.constructible else "replacement route"
        print(f"{name:<22} g={P.g:<3} n={P.n} k={P.k} l={P.l}  {route:<18} "
              f"H1={pi1.format_abelian(res.abelian):<8} {res.recognition}  ({res.seconds}s)")


if __name__ == "__main__":
    main()
