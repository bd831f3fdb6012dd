"""Verify every builtin relator over a range of parameters and print a table."""
import argparse

from surfmcg import relators

DEFAULT = [
    "W2:2", "W2:3", "W2:4", "W2:5", "W1:2", "W1:4", "4torus", "4bdry:1", "4bdry:2", "4bdry:3",
    "korkmaz-x:2", "korkmaz-x:4", "delta-product:2", "delta-product:3", "delta-product:4",
    "gurtas:3,1", "gurtas:5,1", "V1:6,1,2", "V2:7,1,2",
]


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("names", nargs="*", default=DEFAULT)
    args = p.parse_args()
    print(f"{'relator':<18} {'g':>3} {'b':>3} {'tokens':>7} {'status':<10} seconds")
    for name in args.names:
        rep = relators.verify(relators.parse_builtin(name))
        print(f"{name:<18} {rep['genus']:>3} {rep['boundaries']:>3} {rep['left_tokens']:>7} {rep['status']:<10} {rep['seconds']}")


if __name__ == "__main__":
    main()
