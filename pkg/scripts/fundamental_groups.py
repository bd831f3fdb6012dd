"""Fundamental groups of the substituted fibrations for a range of parameters."""
import argparse

from surfmcg import pi1, relators
from surfmcg.atlas import SurfaceSpec


def prop_case(n, h1, h2, seed):
    g = 2 * (2 * h1 + h2 - 1)
    spec = SurfaceSpec(g, 2, h1=h1, h2=h2)
    rho = relators.w2_substituted(g, h1, h2, relators.free_phi(spec, n, h1))
    return f"W_2^{g}(1,phi) n={n} h1={h1} h2={h2}", pi1.recognize(pi1.total_space_pi1(rho), f"free({n})", seed=seed)


def w1_case(n, m, seed):
    spec = SurfaceSpec(4 * n, 2)
    rho = relators.w1_substituted(n, relators.w1_phi(spec, n, m))
    target = f"free({n})" if m is None else f"Z+Z/{m}"
    label = f"W(1,phi') n={n}" if m is None else f"W(1,phi'_{m}) n={n}"
    return label, pi1.recognize(pi1.total_space_pi1(rho), target, seed=seed)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-m", type=int, default=5)
    args = p.parse_args()
    cases = [prop_case(1, 1, 2, args.seed), prop_case(1, 2, 2, args.seed), prop_case(2, 2, 2, args.seed)]
    cases += [w1_case(1, None, args.seed), w1_case(2, None, args.seed)]
    cases += [w1_case(1, m, args.seed) for m in range(2, args.max_m + 1)]
    for label, rec in cases:
        print(f"{label:<32} {pi1.format_abelian(rec.abelian):<10} {rec}  [{rec.certificate}]")


if __name__ == "__main__":
    main()
