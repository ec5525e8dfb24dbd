#!/usr/bin/env python3
"""Sweep the built-in corpus and verify every emitted derivation.

For each presentation: materialize one derivation per class, check
well-definedness, homogeneity, nilpotency, and kernel membership of the
recorded invariants. Prints one line per member and a final tally.
"""

import argparse
import sys
import time

sys.path.insert(0, "src")

from trilnd.classify import enumerate_lnds, kernel_generators
from trilnd.corpus import corpus
from trilnd.derivation import is_well_defined, kernel_member, nilpotency_check
from trilnd.grading import derivation_degree, weight_assignment


def check_member(P, cap: int):
    grading = weight_assignment(P)
    count = 0
    problems = []
    for inst in enumerate_lnds(P):
        if inst.error is not None:
            problems.append(f"enumeration error: {inst.error}")
            continue
        delta = inst.derivation
        count += 1
        report = is_well_defined(delta)
        if not report.ok:
            problems.append(f"relation {report.relation_index} broken")
            continue
        if not delta.is_zero():
            derivation_degree(delta, grading)
        nil = nilpotency_check(delta, cap=cap)
        if not nil.verified:
            problems.append(f"nilpotency {nil.status} for {inst.descriptor.to_dict()}")
        for g in kernel_generators(P, inst.descriptor):
            if not kernel_member(delta, g):
                problems.append(f"kernel generator {g} not annihilated")
    return count, problems


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cap", type=int, default=64,
                    help="nilpotency iteration cap (default 64)")
    args = ap.parse_args()

    total = 0
    failures = 0
    started = time.monotonic()
    for P in corpus():
        count, problems = check_member(P, args.cap)
        total += count
        mark = "ok" if not problems else "FAIL"
        print(f"{P.describe():40s} {count:3d} lnds  {mark}")
        for msg in problems:
            failures += 1
            print(f"    {msg}")
    elapsed = time.monotonic() - started
    print(f"\n{total} derivations over {len(corpus())} members "
          f"in {elapsed:.1f} s, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
