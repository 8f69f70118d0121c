import json

import numpy as np
import pytest

from schurlab import verify
from schurlab.curvature import ABFactorization, CurvatureTensor, SplitSpec, chern_forms, generate, schur_form
from schurlab.multilinear import Form
from schurlab.positivity import WEAK_SAMPLED, FalsificationError, is_positive, is_weakly_positive
from schurlab.verify import DEFAULT_TRIALS, SUITES, SuiteReport, psi_schur_sum, psi_schur_sum_exact, resolve_threads, run_suite, trial_seed

SMALL = {"lr": 2, "fl": 2, "hook": 1, "psi": 1, "nakano": 2, "type1": 1, "type2": 2, "criteria": 1, "gram": 10, "wedge": 3}


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_green_on_small_runs(name):
    report = run_suite(name, SMALL[name], seed=3)
    assert report.green, report.failures
    assert report.trials == SMALL[name] and report.passes == report.trials
    assert report.tolerances


def test_every_suite_has_a_default():
    assert set(DEFAULT_TRIALS) == set(SUITES)


def test_report_invariant():
    with pytest.raises(AssertionError):
        SuiteReport("lr", 3, 1, [{"seed": 1}])


def test_json_is_deterministic_without_timing():
    a = run_suite("criteria", 2, seed=1).to_json()
    b = run_suite("criteria", 2, seed=1).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert "wall_ms" not in a
    assert "wall_ms" in run_suite("hook", 1).to_json(timing=True)


def test_threads_give_identical_reports():
    serial = run_suite("gram", 8, seed=2).to_json()
    parallel = run_suite("gram", 8, seed=2, threads=2).to_json()
    assert serial == parallel


def test_trial_seeds_depend_on_suite_seed_and_index():
    seeds = {trial_seed(s, base, t) for s in ("lr", "fl") for base in (0, 1) for t in range(3)}
    assert len(seeds) == 12
    assert trial_seed("lr", 0, 0) == trial_seed("lr", 0, 0)


def test_unknown_suite_and_bad_trials():
    with pytest.raises(KeyError):
        run_suite("nope")
    with pytest.raises(ValueError):
        run_suite("lr", -1)


def test_resolve_threads(monkeypatch):
    monkeypatch.delenv("SCHURLAB_THREADS", raising=False)
    assert resolve_threads(None) == 1
    assert resolve_threads("3") == 3
    assert resolve_threads("auto") >= 1
    monkeypatch.setenv("SCHURLAB_THREADS", "2")
    assert resolve_threads("5") == 2
    monkeypatch.delenv("SCHURLAB_THREADS")
    with pytest.raises(ValueError):
        resolve_threads("0")


def test_near_miss_window():
    assert verify._near_miss("x", 5e-9, 1e-8)
    assert verify._near_miss("x", 5e-8, 1e-8)
    assert not verify._near_miss("x", 1e-12, 1e-8)
    assert not verify._near_miss("x", 0.0, 0.0)


def test_falsification_aborts_with_bundle(monkeypatch):
    negative = is_positive(Form.kahler(2, [1, -1]))
    monkeypatch.setattr(verify, "is_positive", lambda *args, **kwargs: negative)
    with pytest.raises(FalsificationError) as info:
        run_suite("nakano", 1)
    bundle = info.value.bundle
    assert {"seed", "curvature", "partition", "verdict"} <= set(bundle)
    assert CurvatureTensor.from_json(bundle["curvature"]).is_exact()


def test_psi_sum_matches_schur_form():
    R, f, _ = generate("decomposable", 2, 2, seed=4)
    for lam in [(1,), (2, 0), (1, 1)]:
        target = schur_form(lam, R).to_complex()
        assert psi_schur_sum(f, lam).max_abs_diff(target) <= 1e-8


def test_psi_zero_factors():
    f = ABFactorization.zero(2, 2)
    assert psi_schur_sum(f, (1, 1)).max_abs_diff(Form.zero(2, 2, 2)) == 0


def test_psi_single_epsilon_collapse_is_exact():
    R, f, _ = generate("nakano", 2, 2, seed=5)
    for lam in [(1,), (2, 0), (1, 1)]:
        only_b = psi_schur_sum_exact(f, lam, eps_filter=lambda eps: all(eps))
        assert only_b == schur_form(lam, R)
        assert psi_schur_sum_exact(f, lam) == only_b


def test_lr_degree_one_is_additive():
    rng = np.random.default_rng(0)
    E, F = verify._random_curvature(rng, 2, 1), verify._random_curvature(rng, 2, 1)
    cE, cF = chern_forms(E), chern_forms(F)
    assert chern_forms(CurvatureTensor.direct_sum(E, F))[1] == cE[1] + cF[1]


def test_type1_four_dimensional_example():
    R, _, _ = generate("type1", 4, 2, seed=0, split=SplitSpec("type1", (1, 2)))
    assert is_weakly_positive(schur_form((1, 1), R)).level == WEAK_SAMPLED
