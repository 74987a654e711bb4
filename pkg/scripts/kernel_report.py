#!/usr/bin/env python3
"""Group kernels of chosen family instances, with witnesses when present.

Instances are given as FAMILY:DEGREE pairs:

    python3 scripts/kernel_report.py A:4 PA:4
    python3 scripts/kernel_report.py B:3 EA:4 SYM:4 --elements
"""

import argparse
import sys
import time
from dataclasses import dataclass

from brauerkit import as_closure, construct, encode, index_period, kernel
from brauerkit.families import FAMILY_IDS


@dataclass
class Config:
    instances: tuple
    show_elements: bool


def parse_args(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("instances", nargs="+", metavar="FAMILY:DEGREE")
    parser.add_argument("--elements", action="store_true", dest="show_elements",
                        help="list the kernel elements in encoded form")
    args = parser.parse_args(argv)
    pairs = []
    for item in args.instances:
        family, _, degree = item.partition(":")
        if family not in FAMILY_IDS or not degree.isdigit():
            parser.error(f"bad instance {item!r}; expected e.g. A:4")
        pairs.append((family, int(degree)))
    return Config(instances=tuple(pairs), show_elements=args.show_elements)


def report(family, degree, show_elements):
    sg = as_closure(construct(family, degree))
    t0 = time.time()
    res = kernel(sg)
    elapsed = time.time() - t0
    print(f"{family}:{degree}  size {sg.size}  kernel {len(res.kernel_ids)}  "
          f"rounds {res.iterations}  "
          f"{'aperiodic' if res.is_aperiodic else 'NOT aperiodic'}  "
          f"({elapsed:.1f}s)")
    if res.witness is not None:
        idx, per = index_period(sg, res.witness)
        print(f"    witness {encode(sg.elements[res.witness])} "
              f"index {idx} period {per}")
    if show_elements:
        for i in res.kernel_ids:
            print(f"    {encode(sg.elements[i])}")


def main(argv=None):
    cfg = parse_args(argv)
    for family, degree in cfg.instances:
        report(family, degree, cfg.show_elements)
    return 0


if __name__ == "__main__":
    sys.exit(main())
