#!/usr/bin/env python3
"""Cross-check the rigidity classifier against the linear-algebra search.

For every corpus member that fits the search box, solve for homogeneous
derivations degree by degree and test samples for nilpotency. A member
the classifier calls rigid must produce no locally nilpotent solution,
and vice versa. Disagreements are printed and counted.
"""

import argparse
import sys
import time

sys.path.insert(0, "src")

from trilnd.classify import is_rigid
from trilnd.corpus import small_slice
from trilnd.oracle import BoxTooLarge, oracle_enumerate


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=4,
                    help="image degree bound for the search (default 4)")
    ap.add_argument("--cap", type=int, default=16,
                    help="nilpotency cap inside the search (default 16)")
    ap.add_argument("--max-unknowns", type=int, default=600)
    args = ap.parse_args()

    mismatches = []
    skipped = 0
    started = time.monotonic()
    for P in small_slice():
        rigid = is_rigid(P).rigid
        try:
            found = oracle_enumerate(
                P,
                degree_bound=args.bound,
                cap=args.cap,
                max_unknowns=args.max_unknowns,
            ).nilpotent_found
        except BoxTooLarge as exc:
            print(f"{P.describe():40s} skipped ({exc})")
            skipped += 1
            continue
        agree = rigid != found
        mark = "agree" if agree else "MISMATCH"
        print(f"{P.describe():40s} rigid={rigid!s:5s} oracle_found={found!s:5s} {mark}")
        if not agree:
            mismatches.append(P.describe())
    elapsed = time.monotonic() - started
    print(f"\n{len(small_slice()) - skipped} members checked in {elapsed:.1f} s, "
          f"{skipped} skipped, {len(mismatches)} mismatches")
    for name in mismatches:
        print(f"  {name}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
