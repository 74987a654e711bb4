#!/usr/bin/env python3
"""Derive the complexity interval table and inspect how a row was obtained.

Examples:

    python3 scripts/complexity_table.py
    python3 scripts/complexity_table.py --explain EA:6
    python3 scripts/complexity_table.py --exclude-rule kernel-chain
    python3 scripts/complexity_table.py --order-seed 7 --json
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from brauerkit.derivations import build_standard_ledger, standard_table
from brauerkit.ledger import InstanceRef


@dataclass
class Config:
    explain: str | None = None
    exclude_rules: tuple = ()
    order_seed: int | None = None
    as_json: bool = False
    verify_checks: int = 0


def parse_args(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--explain", metavar="KEY",
                        help="print the derivation tree of one instance, "
                        "e.g. B:6 or pad(B:2)")
    parser.add_argument("--exclude-rule", action="append", default=[],
                        choices=["ideal", "local", "principal",
                                 "kernel-chain", "sub", "iso"],
                        help="drop a rule kind before deriving (repeatable); "
                        "shows which bounds depend on it")
    parser.add_argument("--order-seed", type=int, default=None,
                        help="shuffle the rule application order; the "
                        "fixpoint must not change")
    parser.add_argument("--json", action="store_true", dest="as_json")
    parser.add_argument("--verify-checks", type=int, default=0, metavar="N",
                        help="re-run N stored side-condition checks")
    args = parser.parse_args(argv)
    return Config(
        explain=args.explain,
        exclude_rules=tuple(args.exclude_rule),
        order_seed=args.order_seed,
        as_json=args.as_json,
        verify_checks=args.verify_checks,
    )


def main(argv=None):
    cfg = parse_args(argv)
    t0 = time.time()
    led = build_standard_ledger()
    built = time.time() - t0
    entries = led.derive_all(exclude_rules=cfg.exclude_rules,
                             order_seed=cfg.order_seed)
    rows = standard_table(entries)

    if cfg.as_json:
        json.dump(rows, sys.stdout, indent=2)
        print()
    else:
        print(f"{'instance':<8} {'interval':<8} status")
        for row in rows:
            key = f"{row['family']}:{row['n']}"
            interval = f"[{row['lo']},{row['hi']}]"
            status = "OPEN" if row["open"] else "exact"
            print(f"{key:<8} {interval:<8} {status}")
    exact = sum(not r["open"] for r in rows)
    print(f"\n{len(led.facts)} facts, {len(led.checks)} checks, "
          f"{exact}/{len(rows)} exact, built in {built:.1f}s",
          file=sys.stderr)
    if cfg.exclude_rules:
        print(f"excluded rules: {', '.join(cfg.exclude_rules)}",
              file=sys.stderr)

    if cfg.verify_checks:
        n = led.verify_sample(count=cfg.verify_checks)
        print(f"re-ran {n} stored checks, all reproduced", file=sys.stderr)

    if cfg.explain:
        matches = [r for r in led.instances if r.key == cfg.explain]
        if not matches:
            known = ", ".join(sorted(r.key for r in led.instances))
            sys.exit(f"no instance {cfg.explain!r}; known: {known}")
        json.dump(led.derivation_tree(matches[0]), sys.stdout, indent=2)
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
