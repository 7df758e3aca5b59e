"""Seeded soundness sweep over every catalog family, with per-family slack statistics."""
import argparse
import time

import numpy as np

from opineq.catalog import FAMILIES, Verdict, evaluate
from opineq.generators import random_instance


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--family", action="append", help="restrict to these families (repeatable)")
    args = p.parse_args()

    families = args.family or list(FAMILIES)
    print(f"{'family':<20} {'n':>6} {'equal':>6} {'viol':>5} {'min rel_slack':>14} {'median':>10} {'sec':>6}")
    total_bad = 0
    for fam in families:
        t0 = time.perf_counter()
        slack, equal, bad = [], 0, 0
        for i in range(args.count):
            rep = evaluate(fam, random_instance(fam, args.seed, i))
            slack.append(rep.rel_slack)
            equal += rep.verdict is Verdict.HOLDS_AT_EQUALITY
            bad += rep.verdict is Verdict.VIOLATED
        total_bad += bad
        s = np.array(slack)
        print(f"{fam:<20} {args.count:>6} {equal:>6} {bad:>5} {s.min():>14.3e} {np.median(s):>10.3e} {time.perf_counter() - t0:>6.2f}")
    raise SystemExit(1 if total_bad else 0)


if __name__ == "__main__":
    main()
