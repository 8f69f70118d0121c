"""Acceptance battery: ten criteria at their stated sizes, tolerances and time limits.

Each test prints one PASS/FAIL line straight to the terminal (also under capture).
"""

import time

import pytest

from schurlab.verify import run_suite

# (number, label, suite, trials, seconds, extra suite kwargs)
CRITERIA = [
    (1, "exact LR product rule, 20 trials, n<=3, r_E=r_F=2, k<=3", "lr", 20, 30, {}),
    (2, "FL expansion vs Jacobi-Trudi, k,r<=3, 10 matrices, err<=1e-9", "fl", 10, 10, {}),
    (3, "psi decomposition k=2, 5 seeds, err<=1e-8, exact A=0 collapse", "psi", 5, 20, {"k_max": 2}),
    (4, "Nakano and dual Nakano Schur positivity, 20 seeds each", "nakano", 20, 20, {}),
    (5, "type II Schur positivity and exact block decomposition, 20 seeds", "type2", 20, 30, {}),
    (6, "type I weak positivity, 10 seeds, default budget", "type1", 10, 60, {}),
    (7, "hook content, k,r<=6, exact and >=1", "hook", 1, 5, {}),
    (8, "criteria round trips, 10 seeds per class", "criteria", 10, 20, {}),
    (9, "coefficient vs complement Gram, 100 forms, n<=4", "gram", 100, 10, {}),
    (10, "positive wedge closure, 50 pairs, n=4", "wedge", 50, 10, {}),
]


@pytest.mark.parametrize("number, label, suite, trials, limit, kwargs", CRITERIA, ids=[c[2] for c in CRITERIA])
def test_criterion(capsys, number, label, suite, trials, limit, kwargs):
    start = time.perf_counter()
    report = run_suite(suite, trials, seed=0, **kwargs)
    elapsed = time.perf_counter() - start
    ok = report.green and report.passes == trials and elapsed < limit
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        print(f"\n[acceptance {number:2d}] {status} {label}: {report.passes}/{trials} in {elapsed:.2f}s (limit {limit}s)")
        if suite == "type1":
            margins = [m for rec in report.records for m in rec.get("weak_margins", {}).values()]
            if margins:
                print(f"[acceptance {number:2d}] weak margins: min {min(margins):.3e} over {len(margins)} forms")
    assert report.green, report.failures
    assert report.passes == trials
    assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
