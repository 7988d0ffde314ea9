"""Command-line entry point.

Surface specs: ``scroll:a,b | veronese | delpezzo:d | ruled:g,d | file:<path>``.
Environment overrides (flags win): PINCHSCHEME_PRIME, PINCHSCHEME_SEED,
PINCHSCHEME_RETRIES, PINCHSCHEME_OMEGA, PINCHSCHEME_MAX_PAIRS,
PINCHSCHEME_MAX_DEGREE.

Exit status: 0 clean, 1 theorem violation, 2 usage error, 3 Groebner budget
exhausted, 4 explicit path disagreed after all resamples.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
from dataclasses import dataclass, fields
from fractions import Fraction

from .catalog import catalog_models, save_descriptor, surface_from_spec
from .chowlattice import ModelInconsistencyError, class_degree, pinch_number
from .exactalg import DEFAULT_PRIME, GroebnerBudget, GroebnerBudgetError, is_prime
from .harness import (EXIT_RESOURCE, EXIT_UNLUCKY, SUITES, VerificationReport, lattice_row,
                      verify_inner_chain, verify_suite)
from .projector import (DEFAULT_OMEGA, DEFAULT_RETRIES, exceptional_rank, jet_normalize,
                        ram_length_resampled, random_chart_point)

ENV_PREFIX = "PINCHSCHEME_"
FORMATS = ("table", "csv", "json")


@dataclass
class Config:
    prime: int = DEFAULT_PRIME
    seed: int = 0
    retries: int = DEFAULT_RETRIES
    omega: int = DEFAULT_OMEGA
    format: str = "table"
    max_pairs: int = 200_000
    max_degree: int = 60

    def __post_init__(self):
        if not is_prime(self.prime) or self.prime <= 10000:
            raise ValueError(f"prime must be a prime > 10000, got {self.prime}")
        if self.retries < 1:
            raise ValueError("retries must be >= 1")
        if self.omega < 3:
            raise ValueError("truncation order omega must be >= 3")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")

    @property
    def budget(self) -> GroebnerBudget:
        return GroebnerBudget(self.max_pairs, self.max_degree)

    def echo(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != "format"}


def resolve_config(args: argparse.Namespace, environ=None) -> Config:
    environ = os.environ if environ is None else environ
    values = {}
    for f in fields(Config):
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = flag
            continue
        env = environ.get(ENV_PREFIX + f.name.upper())
        if env is not None:
            values[f.name] = env if f.name == "format" else int(env)
    return Config(**values)


def _emit_rows(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "csv":
        return report.to_csv()
    return report.to_table()


def cmd_catalog(args, cfg: Config) -> int:
    rows = []
    for S in catalog_models(args.max_n, args.only):
        row = lattice_row("catalog", S)
        rows.append((row, class_degree(S)))
    if cfg.format == "json":
        out = [dict(r.as_dict(), genus=r.genus, gamma2=g2) for r, g2 in rows]
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
        return 0
    keys = ("name", "N", "deg", "g", "pinch", "gamma2", "i", "classification")
    data = [[r.name, r.N, r.deg, r.genus, r.pinch_lattice, g2, r.i, r.classification]
            for r, g2 in rows]
    if cfg.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(keys)
        w.writerows([["" if v is None else v for v in row] for row in data])
        return 0
    cells = [list(keys)] + [["-" if v is None else str(v) for v in row] for row in data]
    widths = [max(len(r[j]) for r in cells) for j in range(len(keys))]
    for r in cells:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return 0


def cmd_pinch(args, cfg: Config) -> int:
    model, _ = surface_from_spec(args.surface, cfg.seed)
    print(pinch_number(model))
    return 0


def cmd_project(args, cfg: Config) -> int:
    model, P = surface_from_spec(args.surface, cfg.seed)
    if P is None:
        raise ValueError(f"{args.surface}: no explicit parametrization for this surface")
    rep = ram_length_resampled(P, cfg.prime, cfg.seed, cfg.retries, cfg.budget)
    d = rep.as_dict()
    if cfg.format == "json":
        sys.stdout.write(json.dumps({"config": cfg.echo(), "report": d}, indent=2) + "\n")
    elif cfg.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(list(d))
        w.writerow(["" if v is None else v for v in d.values()])
    else:
        for k, v in d.items():
            print(f"{k:>18}: {v}")
    return 0 if rep.agrees else EXIT_UNLUCKY


def cmd_inner_chain(args, cfg: Config) -> int:
    model, _ = surface_from_spec(args.surface, cfg.seed)
    report = verify_inner_chain(model, args.steps)
    report.config.update(cfg.echo())
    sys.stdout.write(_emit_rows(report, cfg.format))
    return report.exit_code


def _parse_point(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"--point expects 's,t', got {text!r}")
    return Fraction(parts[0]), Fraction(parts[1])


def cmd_jets(args, cfg: Config) -> int:
    model, P = surface_from_spec(args.surface, cfg.seed)
    if P is None:
        raise ValueError(f"{args.surface}: no explicit parametrization for this surface")
    if args.point:
        point = _parse_point(args.point)
    else:
        point = random_chart_point(P, random.Random(cfg.seed))
    J = jet_normalize(P, point, cfg.omega)
    R = exceptional_rank(J)
    if cfg.format == "json":
        out = {"surface": P.name, "point": [str(c) for c in point], "omega": cfg.omega,
               "g": [str(g) for g in J.g], "h": [str(h) for h in R.h],
               "ramified_along_E": R.ramified_along_E,
               "degenerate_directions": R.degenerate_directions}
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
        return 0
    print(f"surface: {P.name}  point: ({point[0]}, {point[1]})  omega: {cfg.omega}")
    for k, (g, h) in enumerate(zip(J.g, R.h), start=3):
        print(f"  g_{k} = {g}")
        print(f"  h_{k}(0,u) = {h}")
    print(R.describe())
    return 0


def cmd_verify(args, cfg: Config) -> int:
    seeds = range(cfg.seed, cfg.seed + args.seeds)
    report = verify_suite(args.suite, cfg.prime, seeds, cfg.retries, cfg.budget, args.jobs)
    report.config.update(cfg.echo())
    report.config["seeds"] = list(seeds)
    sys.stdout.write(_emit_rows(report, cfg.format))
    return report.exit_code


def cmd_descriptor(args, cfg: Config) -> int:
    model, _ = surface_from_spec(args.surface, cfg.seed)
    sys.stdout.write(save_descriptor(model))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pinchscheme",
        description="Pinch-point scheme lengths of projective surfaces, two ways.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--retries", type=int)
    common.add_argument("--omega", type=int)
    common.add_argument("--max-pairs", dest="max_pairs", type=int)
    common.add_argument("--max-degree", dest="max_degree", type=int)
    common.add_argument("--format", choices=FORMATS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="list catalog surfaces")
    p.add_argument("--max-n", dest="max_n", type=int, default=9)
    p.add_argument("--only", choices=("scrolls", "veronese", "delpezzo"))
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("pinch", parents=[common], help="lattice pinch number")
    p.add_argument("surface")
    p.set_defaults(func=cmd_pinch)

    p = sub.add_parser("project", parents=[common], help="Groebner ram length of a random projection")
    p.add_argument("surface")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("inner-chain", parents=[common], help="iterate inner projection")
    p.add_argument("surface")
    p.add_argument("--steps", type=int, default=1)
    p.set_defaults(func=cmd_inner_chain)

    p = sub.add_parser("jets", parents=[common], help="jet criterion along the exceptional curve")
    p.add_argument("surface")
    p.add_argument("--point", help="chart point 's,t' (default: random immersive point)")
    p.set_defaults(func=cmd_jets)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--seeds", type=int, default=5, help="number of seeds per explicit surface")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("descriptor", parents=[common], help="print the JSON descriptor of a surface")
    p.add_argument("surface")
    p.set_defaults(func=cmd_descriptor)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        return args.func(args, cfg)
    except GroebnerBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ModelInconsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
