"""Hill-climb random instances towards equality and report how close each family gets.

The bounds are sharp in commuting configurations; this explores how close
generic (non-commuting) starting points can be pushed.
"""
import argparse

from opineq.generators import random_instance
from opineq.search import near_equality_search

SEARCHABLE = (
    "KantorovichOp", "DM1", "CasselsOp", "KlamkinOp", "DM2", "PolyaSzegoOp", "ShishaMondOp", "GrussOp",
    "DiazMetcalf", "PolyaSzego", "ShishaMond", "GrussDiscrete", "Schweitzer", "CasselsWeighted",
    "KlamkinWeighted", "GruebRheinboldt", "OimsClassical",
)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--starts", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=3)
    args = p.parse_args()

    print(f"{'family':<18} {'start':>10} {'best':>10} {'accepted':>9}")
    for fam in SEARCHABLE:
        for s in range(args.starts):
            inst = random_instance(fam, args.seed, s, dim=args.dim)
            res = near_equality_search(fam, inst, budget=args.budget, step=0.1, seed=args.seed + s)
            print(f"{fam:<18} {res.initial_objective:>10.3e} {res.objective:>10.3e} {res.accepted:>9}")


if __name__ == "__main__":
    main()
