"""Iterate inner projection from every catalog surface down to P^3 and tabulate
(N, deg, pinch, excess i, classification) at each step."""

import argparse

from pinchscheme.catalog import catalog_models
from pinchscheme.harness import verify_inner_chain


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=9)
    args = ap.parse_args()
    for S in catalog_models(args.max_n):
        if S.ambient < 4:
            continue
        report = verify_inner_chain(S, S.ambient - 3)
        print(f"== {S.name}")
        for r in report.rows:
            i = "-" if r.i is None else r.i
            print(f"  N={r.N:<2} deg={r.deg:<2} pinch={r.pinch_lattice:<3} i={i:<2} "
                  f"{r.classification:<19} {r.status}")


if __name__ == "__main__":
    main()
