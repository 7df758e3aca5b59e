"""Acceptance gate: each test checks one criterion and reports a PASS/FAIL line."""
import itertools
import json
import math
import time

import numpy as np
import pytest

import conftest
from conftest import random_matrix, random_pd, rel_err, rng_for
from opineq import catalog, io
from opineq._rng import random_unitary
from opineq.bounds import Box, Ratio
from opineq.catalog import (
    OPERATOR_FAMILIES,
    Family,
    OperatorInstance,
    Verdict,
    eval_discrete_family,
    eval_oims,
    evaluate,
    make_report,
    scalar_via_operator,
)
from opineq.cli import main, witness_path
from opineq.generators import MAP_KINDS, random_instance, random_map
from opineq.linalg import ToleranceConfig, inv_pd, loewner_leq
from opineq.maps import Identity, PartialTraceLeft, check_left_multiplier, check_schwarz
from opineq.means import am_gm_gap, geometric_mean, mean_sandwich
from opineq.witnesses import equality_witnesses

HOLDING = {Verdict.HOLDS, Verdict.HOLDS_AT_EQUALITY}
SECTION3 = ("DiazMetcalf", "PolyaSzego", "ShishaMond", "GrussDiscrete", "Schweitzer", "CasselsWeighted", "KlamkinWeighted", "GruebRheinboldt")


def report(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail})"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _sweep(families, count, seed, dim_range=None, cfg=catalog.DEFAULT_TOL):
    bad = []
    for fam in families:
        for i in range(count):
            dim = None if dim_range is None else int(rng_for(seed, i, 99).integers(*dim_range))
            inst = random_instance(fam, seed, i, dim=dim, cfg=cfg)
            rep = evaluate(fam, inst, cfg)
            if not rep.hypothesis_ok or rep.verdict not in HOLDING:
                bad.append((fam, i, rep.verdict.value, rep.gap_min))
    return bad


def test_criterion_1_operator_sweep():
    cfg = ToleranceConfig(rel_tol=1e-9)
    t0 = time.perf_counter()
    bad = _sweep(OPERATOR_FAMILIES, 1000, 20240101, (2, 9), cfg)
    elapsed = time.perf_counter() - t0
    report(1, "operator sweep soundness", not bad and elapsed <= 60, f"8x1000 instances, {len(bad)} bad, {elapsed:.1f}s")


def test_criterion_2_equality_witnesses():
    reps = [(f, evaluate(f, inst)) for f, inst in equality_witnesses()]
    bad = [f for f, r in reps if r.verdict is not Verdict.HOLDS_AT_EQUALITY or abs(r.gap_min) > 1e-10]
    by = dict(reps)
    m, M = 1.0, 2.0
    kant = by["KantorovichOp"]
    checks = [
        abs(kant.lhs[0, 0].real - (M * M + m * m) / (2 * M * m)) <= 1e-10,
        abs(by["CasselsWeighted"].lhs[0, 0].real - 25 / 16) <= 1e-12,
        abs(by["PolyaSzego"].rhs[0, 0].real - 25 / 16) <= 1e-12,
        abs(by["DiazMetcalf"].lhs[0, 0].real - 10) <= 1e-12 and abs(by["DiazMetcalf"].rhs[0, 0].real - 10) <= 1e-12,
        abs(by["Schweitzer"].rhs[0, 0].real - (M * M + m * m) ** 2 / (4 * M * M * m * m)) <= 1e-12,
        abs(by["GrussLemma"].rhs[0, 0].real - 0.25) <= 1e-12,
    ]
    report(2, "equality witnesses", not bad and all(checks), f"{len(reps)} witnesses, off-equality: {bad or 'none'}")


def test_criterion_3_oracle_equivalence():
    worst = 0.0
    for fam in SECTION3:
        for i in range(200):
            data = random_instance(fam, 3, i, dim=int(rng_for(3, i, SECTION3.index(fam)).integers(1, 11)))
            d, s = eval_discrete_family(fam, data), scalar_via_operator(fam, data)
            assert d.hypothesis_ok and s.hypothesis_ok
            for x, y in ((d.lhs, s.lhs), (d.rhs, s.rhs)):
                a, b = x[0, 0].real, y[0, 0].real
                worst = max(worst, abs(a - b) / max(1.0, abs(a)))
    report(3, "discrete vs operator route", worst <= 1e-12, f"8 families x 200, worst rel diff {worst:.2e}")


def test_criterion_4_geometric_mean_laws():
    worst, order_fail = 0.0, 0
    for i in range(500):
        rng = rng_for(4, i)
        n = int(rng.integers(1, 9))
        A, B = random_pd(rng, n), random_pd(rng, n)
        G = geometric_mean(A, B)
        T = random_matrix(rng, n) + 3 * np.eye(n)
        Tc = T.conj().T
        alpha = float(rng.uniform(0.01, 100))
        worst = max(
            worst,
            rel_err(G, geometric_mean(B, A)),
            rel_err(Tc @ G @ T, geometric_mean(Tc @ A @ T, Tc @ B @ T)),
            rel_err(geometric_mean(alpha * A, B), math.sqrt(alpha) * G),
            rel_err(geometric_mean(A, A), A),
            rel_err(geometric_mean(A, inv_pd(A)), np.eye(n)),
        )
        la, lb = np.linalg.eigvalsh(A), np.linalg.eigvalsh(B)
        box = Box(math.sqrt(la[0]), math.sqrt(la[-1]), math.sqrt(lb[0]), math.sqrt(lb[-1]))
        lo, hi = mean_sandwich(A, B, box)
        order_fail += (not am_gm_gap(A, B).holds) + (not lo.holds) + (not hi.holds)
    report(4, "geometric mean laws", worst <= 1e-8 and order_fail == 0, f"500 pairs, worst residual {worst:.2e}, order failures {order_fail}")


def test_criterion_5_left_multiplier_suite():
    lm = [check_left_multiplier(PartialTraceLeft(n, k), trials=200, tol=1e-12) for n, k in ((2, 2), (3, 2))]
    bad = _sweep(("GrussLemma", "CSLeftMultiplier", "GrussProduct"), 500, 5)
    schwarz_fail = 0
    for kind in MAP_KINDS:
        for i in range(200):
            rng = rng_for(55, i, MAP_KINDS.index(kind))
            n = int(rng.integers(1, 7))
            phi = random_map(rng, n, "unital", kind)
            U = random_unitary(rng, n)
            A = (U * (rng.standard_normal(n) + 1j * rng.standard_normal(n))) @ U.conj().T
            schwarz_fail += not check_schwarz(phi, A).holds
    ok = all(lm) and not bad and schwarz_fail == 0
    report(5, "left multipliers and Gruss bounds", ok, f"worst lm residual {max(r.worst for r in lm):.1e}, {len(bad)} bad, {schwarz_fail} Schwarz failures")


def test_criterion_6_oims_suite():
    bad = _sweep(("VarianceBound", "OimsPhi1", "OimsPhi2", "OimsVector"), 500, 6)
    grid_fail = 0
    for box in (Box(1, 2, 1, 2), Box(0.5, 3, 1, 1.5), Box(1, 1.1, 2, 5), Box(0.2, 1, 0.3, 0.4)):
        pts = list(itertools.product([box.m1, (box.m1 + box.M1) / 2, box.M1], [box.m2, (box.m2 + box.M2) / 2, box.M2]))
        for n in (1, 2, 3):
            for combo in itertools.product(pts, repeat=n):
                data = catalog.DiscreteData([p[0] for p in combo], [p[1] for p in combo], box)
                rep = eval_discrete_family("OimsClassical", data)
                grid_fail += rep.lhs[0, 0].real > rep.rhs[0, 0].real * (1 + 1e-12)
    worst = 0.0
    for i in range(200):
        inst = random_instance("OimsVector", 66, i)
        a, b = eval_oims("Phi1", inst).lhs[0, 0].real, eval_oims("VectorOOI", inst).lhs[0, 0].real
        worst = max(worst, abs(a - b) / max(1.0, abs(b)))
    ok = not bad and grid_fail == 0 and worst <= 1e-10
    report(6, "OIMS and variance bounds", ok, f"{len(bad)} bad, {grid_fail} grid failures, vector-state mismatch {worst:.1e}")


def _strip_timestamp(text):
    doc = json.loads(text)
    doc["meta"].pop("timestamp")
    return json.dumps(doc, sort_keys=True)


def test_criterion_7_determinism(tmp_path):
    outs = []
    for workers in (1, 4):
        path = tmp_path / f"r{workers}.json"
        assert main(["verify", "--random", "DM1", "1000", "--seed", "42", "--workers", str(workers), "--out", str(path)]) == 0
        outs.append(path.read_text(encoding="utf-8"))
    a, b = (_strip_timestamp(t) for t in outs)
    lines = [[ln for ln in t.splitlines() if '"timestamp"' not in ln] for t in outs]
    report(7, "parallel determinism", a == b and lines[0] == lines[1], "workers 1 vs 4, 1000 DM1 instances")


def test_criterion_8_cli_contract(tmp_path, monkeypatch):
    out = tmp_path / "w.json"
    code_w = main(["verify", str(witness_path()), "--out", str(out)])
    verdicts = {r["verdict"] for r in json.loads(out.read_text())["records"]}

    corrupted = io.encode_instance(*equality_witnesses()[1])
    corrupted["payload"]["bounds"] = {"type": "Ratio", "m": 0.9, "M": 1.1}
    bad_path = tmp_path / "corrupted.json"
    bad_path.write_text(json.dumps(corrupted), encoding="utf-8")
    code_c = main(["verify", str(bad_path), "--out", str(out)])
    unmet = json.loads(out.read_text())["records"][0]["verdict"] == "HypothesisUnmet"

    # negative control: the DM1 checker with its comparison reversed must trip exit 1
    inst = OperatorInstance(np.eye(2), np.eye(2), Identity(2), Ratio(0.5, 2))
    fixture = tmp_path / "dm1.json"
    fixture.write_text(json.dumps(io.encode_instance("DM1", inst)), encoding="utf-8")
    orig = catalog.FAMILIES["DM1"]

    def reversed_eval(i, cfg):
        r = orig.evaluate(i, cfg)
        return make_report(r.family, r.hypothesis_ok, r.rhs, r.lhs, cfg)

    monkeypatch.setitem(catalog.FAMILIES, "DM1", Family("DM1", orig.kind, reversed_eval))
    code_f = main(["verify", str(fixture), "--out", str(out)])
    ok = code_w == 0 and verdicts == {"HoldsAtEquality"} and code_c == 0 and unmet and code_f == 1
    report(8, "CLI exit-code contract", ok, f"witnesses exit {code_w}, corrupted exit {code_c}, flipped exit {code_f}")
