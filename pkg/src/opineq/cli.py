"""Command-line driver: ``gen``, ``verify``, ``search`` and ``report``.

Exit codes: 0 no violations, 1 some instance is Violated, 2 bad input, 3 I/O
failure.  Instances whose hypotheses fail are counted but never fail a run.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from importlib import resources
from typing import Optional, Sequence

from . import io
from .bounds import Box, Ratio
from .catalog import FAMILIES, evaluate
from .catalog.report import InequalityReport, Verdict
from .errors import NotApplicable, OpIneqError
from .generators import bounds_regime, random_instance
from .linalg import ToleranceConfig
from .search import near_equality_search

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def witness_path():
    """Location of the shipped equality-witness suite."""
    return resources.files("opineq").joinpath("data", "equality_witnesses.json")


# ---------------------------------------------------------------- helpers


def _tolerance(args) -> ToleranceConfig:
    try:
        return ToleranceConfig(abs_tol=args.abs_tol, rel_tol=args.rel_tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _bounds(args, family: str):
    ratio = [args.m, args.M]
    box = [args.m1, args.M1, args.m2, args.M2]
    has_ratio, has_box = any(v is not None for v in ratio), any(v is not None for v in box)
    if not (has_ratio or has_box):
        return None
    if has_ratio and has_box:
        raise UsageError("give either --m/--M or --m1/--M1/--m2/--M2, not both")
    if (has_ratio and None in ratio) or (has_box and None in box):
        raise UsageError("bounds flags must be given as a complete set")
    try:
        bounds = Ratio(*ratio) if has_ratio else Box(*box)
    except ValueError as exc:
        raise UsageError(f"invalid bounds: {exc}") from None
    regime = bounds_regime(family)
    if regime is None:
        raise UsageError(f"{family} takes no bounds flags")
    if regime != "either" and regime != ("ratio" if has_ratio else "box"):
        raise UsageError(f"{family} needs {regime} bounds")
    return bounds


def _family(name: str) -> str:
    if name not in FAMILIES:
        raise UsageError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    return name


def _draw(family, seed, index, dim, bounds, cfg):
    try:
        return random_instance(family, seed, index, dim=dim, bounds=bounds, cfg=cfg)
    except (RuntimeError, ValueError, OpIneqError) as exc:
        raise UsageError(f"cannot draw a {family} instance: {exc}") from None


def safe_evaluate(family: str, instance, cfg: ToleranceConfig) -> InequalityReport:
    """Evaluate, recording numerical breakdowns as an unmet hypothesis."""
    try:
        return evaluate(family, instance, cfg)
    except OpIneqError as exc:
        nan = float("nan")
        return InequalityReport(family, False, None, None, nan, nan, Verdict.HYPOTHESIS_UNMET, 0.0, f"{type(exc).__name__}: {exc}")


def _meta(seed, cfg: ToleranceConfig, **extra) -> dict:
    return {
        "seed": seed,
        "tolerance": {"abs_tol": cfg.abs_tol, "rel_tol": cfg.rel_tol},
        "timestamp": datetime.now(timezone.utc).isoformat(),
        **extra,
    }


def _emit(doc, out: Optional[str]) -> None:
    if out in (None, "-"):
        sys.stdout.write(io.dumps(doc))
    else:
        io.write_json(out, doc)


def _exit_for(records) -> int:
    return EXIT_VIOLATED if any(r["verdict"] == Verdict.VIOLATED.value for r in records) else EXIT_OK


# ---------------------------------------------------------------- commands


def cmd_gen(args) -> int:
    family = _family(args.family)
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    if args.dim is not None and args.dim < 1:
        raise UsageError("--dim must be >= 1")
    cfg = _tolerance(args)
    bounds = _bounds(args, family)
    docs = [io.encode_instance(family, _draw(family, args.seed, i, args.dim, bounds, cfg)) for i in range(args.count)]
    _emit(docs[0] if len(docs) == 1 else docs, args.out)
    return EXIT_OK


def _run_parallel(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def cmd_verify(args) -> int:
    cfg = _tolerance(args)
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    if args.random:
        family, count = args.random
        family = _family(family)
        try:
            count = int(count)
        except ValueError:
            raise UsageError(f"COUNT must be an integer, got {count!r}") from None
        if count < 1:
            raise UsageError("COUNT must be >= 1")
        bounds = _bounds(args, family)

        def job(i):
            return safe_evaluate(family, _draw(family, args.seed, i, args.dim, bounds, cfg), cfg)

        reports = _run_parallel(job, range(count), args.workers)
        meta = _meta(args.seed, cfg, source={"random": family, "count": count, "dim": args.dim})
    else:
        paths = list(args.paths)
        if args.witnesses:
            paths.append(str(witness_path()))
        if not paths:
            raise UsageError("give instance files, --witnesses or --random FAMILY COUNT")
        items = []
        for p in paths:
            try:
                items.extend(io.decode_instances(io.read_json(p)))
            except io.SchemaError as exc:
                raise io.SchemaError(f"{p}:{exc.field}", str(exc).split(": ", 1)[-1]) from None
        reports = _run_parallel(lambda it: safe_evaluate(it[0], it[1], cfg), items, args.workers)
        meta = _meta(None, cfg, source={"files": paths})
    records = [io.record_of(r) for r in reports]
    doc = io.make_report_file(records, meta)
    _emit(doc, args.out)
    s = doc["summary"]["counts"]
    print(f"verified {len(records)} instances: " + ", ".join(f"{k}={v}" for k, v in s.items()), file=sys.stderr)
    return _exit_for(records)


def cmd_search(args) -> int:
    family = _family(args.family)
    if args.budget < 0:
        raise UsageError("--budget must be >= 0")
    cfg = _tolerance(args)
    start = _draw(family, args.seed, 0, args.dim, _bounds(args, family), cfg)
    try:
        res = near_equality_search(family, start, budget=args.budget, step=args.step, seed=args.seed, cfg=cfg)
    except NotApplicable as exc:
        raise UsageError(str(exc)) from None
    records = [io.record_of(evaluate(family, start, cfg)), io.record_of(res.report)]
    meta = _meta(
        args.seed,
        cfg,
        source={"search": family, "budget": args.budget},
        iterations=res.iterations,
        accepted=res.accepted,
        initial_objective=io._num(res.initial_objective),
        objective=io._num(res.objective),
    )
    if args.out:
        io.write_json(args.out, io.encode_instance(family, res.instance))
    _emit(io.make_report_file(records, meta), args.report)
    return _exit_for(records[1:])


def render_csv(doc) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "verdict", "gap_min", "rel_slack"])
    for r in doc["records"]:
        w.writerow([r["family"], r["verdict"], *("" if r[k] is None else repr(float(r[k])) for k in ("gap_min", "rel_slack"))])
    return buf.getvalue()


def render_text(doc) -> str:
    rows = {}
    for r in doc["records"]:
        row = rows.setdefault(r["family"], {"n": 0, **{v.value: 0 for v in Verdict}, "min_gap": None, "min_abs": None})
        row["n"] += 1
        row[r["verdict"]] += 1
        g = r["gap_min"]
        if g is not None:
            row["min_gap"] = g if row["min_gap"] is None else min(row["min_gap"], g)
            row["min_abs"] = abs(g) if row["min_abs"] is None else min(row["min_abs"], abs(g))
    fmt = lambda v: "-" if v is None else f"{v:.3e}"  # noqa: E731
    head = f"{'family':<20} {'n':>6} {'holds':>6} {'equal':>6} {'viol':>6} {'unmet':>6} {'min gap':>11} {'min|gap|':>11}"
    lines = [head, "-" * len(head)]
    for fam, row in rows.items():
        lines.append(
            f"{fam:<20} {row['n']:>6} {row['Holds']:>6} {row['HoldsAtEquality']:>6} {row['Violated']:>6} "
            f"{row['HypothesisUnmet']:>6} {fmt(row['min_gap']):>11} {fmt(row['min_abs']):>11}"
        )
    c = doc["summary"]["counts"]
    lines.append(f"total {len(doc['records'])}: " + ", ".join(f"{k}={v}" for k, v in c.items()))
    return "\n".join(lines) + "\n"


def cmd_report(args) -> int:
    doc = io.validate_report(io.read_json(args.path))
    if args.format == "json":
        text = io.dumps(doc)
    elif args.format == "csv":
        text = render_csv(doc)
    else:
        text = render_text(doc)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _common(p, seed_default=0):
    p.add_argument("--seed", type=int, default=seed_default)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--abs-tol", type=float, default=ToleranceConfig.abs_tol)
    p.add_argument("--rel-tol", type=float, default=ToleranceConfig.rel_tol)
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    for flag in ("m", "M", "m1", "M1", "m2", "M2"):
        p.add_argument(f"--{flag}", dest=flag, type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opineq", description="Numerical checks of reverse Cauchy-Schwarz and Grüss type operator inequalities.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write certified random instances")
    g.add_argument("--family", required=True)
    g.add_argument("--count", type=int, default=1)
    _common(g)
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="evaluate instance files or a seeded random sweep")
    v.add_argument("paths", nargs="*")
    v.add_argument("--random", nargs=2, metavar=("FAMILY", "COUNT"))
    v.add_argument("--witnesses", action="store_true", help="include the shipped equality-witness suite")
    v.add_argument("--workers", type=int, default=1)
    _common(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="hill-climb towards an equality case")
    s.add_argument("--family", required=True)
    s.add_argument("--budget", type=int, default=1000)
    s.add_argument("--step", type=float, default=0.05)
    s.add_argument("--report", default=None, help="report path (default: stdout)")
    _common(s)
    s.set_defaults(func=cmd_search)

    r = sub.add_parser("report", help="render a report file")
    r.add_argument("path")
    r.add_argument("--format", choices=("json", "csv", "text"), default="text")
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, io.SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
