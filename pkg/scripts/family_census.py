#!/usr/bin/env python3
"""Census of diagram families: sizes, Green structure, depth, units.

Examples:

    python3 scripts/family_census.py --family B --family J --max-n 6
    python3 scripts/family_census.py --family EA --max-n 6
    python3 scripts/family_census.py --all --max-n 4
"""

import argparse
import sys
from dataclasses import dataclass

from brauerkit import (
    FAMILY_IDS,
    as_closure,
    construct,
    essential_depth,
    green,
    identity,
    is_aperiodic,
    units,
)
from brauerkit.errors import BadDegree, BrauerKitError


@dataclass
class Config:
    families: tuple
    max_n: int
    budget: int | None


def parse_args(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--family", action="append", choices=FAMILY_IDS,
                        default=[], help="family code (repeatable)")
    parser.add_argument("--all", action="store_true",
                        help="census every family")
    parser.add_argument("--max-n", type=int, default=5)
    parser.add_argument("--budget", type=int, default=None)
    args = parser.parse_args(argv)
    families = tuple(FAMILY_IDS) if args.all else tuple(args.family)
    if not families:
        parser.error("pick at least one --family, or pass --all")
    return Config(families=families, max_n=args.max_n, budget=args.budget)


def census_row(family, n, budget):
    inst = construct(family, n, budget=budget)
    sg = as_closure(inst, budget=budget)
    data = green(sg)
    row = {
        "family": family,
        "n": n,
        "size": inst.size,
        "j_classes": data.num_j,
        "depth": essential_depth(sg),
        "aperiodic": is_aperiodic(sg),
    }
    if identity(n) in inst.elements:
        row["units"] = len(units(sg))
    return row


def main(argv=None):
    cfg = parse_args(argv)
    headers = ["family", "n", "size", "j_classes", "depth", "aperiodic", "units"]
    print("  ".join(f"{h:>9}" for h in headers))
    for family in cfg.families:
        for n in range(1, cfg.max_n + 1):
            try:
                row = census_row(family, n, cfg.budget)
            except BadDegree:
                continue  # odd degrees of the even annular family
            except BrauerKitError as exc:
                print(f"{family:>9}  {n:>9}  skipped: {exc}", file=sys.stderr)
                continue
            print("  ".join(f"{str(row.get(h, '-')):>9}" for h in headers))
    return 0


if __name__ == "__main__":
    sys.exit(main())
