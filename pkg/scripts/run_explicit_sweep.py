"""Groebner ram length vs lattice pinch number on every explicit chart.

    python3 scripts/run_explicit_sweep.py --seeds 10 --jobs 4 --out sweep.csv
"""

import argparse
import sys
import time

from pinchscheme.exactalg import DEFAULT_PRIME
from pinchscheme.harness import EXPLICIT_SPECS, verify_explicit


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--specs", nargs="*", default=list(EXPLICIT_SPECS))
    ap.add_argument("--out", help="write CSV here instead of printing a table")
    args = ap.parse_args()

    t0 = time.perf_counter()
    report = verify_explicit(args.specs, range(args.seeds), args.prime, jobs=args.jobs)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(report.to_csv())
    else:
        sys.stdout.write(report.to_table())
    print(f"{len(report.rows)} runs in {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
