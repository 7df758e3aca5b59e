"""Regenerate the shipped equality-witness file from ``opineq.witnesses``."""
import argparse
from pathlib import Path

from opineq import io
from opineq.witnesses import equality_witnesses

DEFAULT = Path(__file__).resolve().parents[1] / "src" / "opineq" / "data" / "equality_witnesses.json"


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", type=Path, default=DEFAULT)
    args = p.parse_args()
    docs = [io.encode_instance(f, inst) for f, inst in equality_witnesses()]
    io.write_json(args.out, docs)
    print(f"wrote {len(docs)} witnesses to {args.out}")


if __name__ == "__main__":
    main()
