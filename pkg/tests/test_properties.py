import json
from types import SimpleNamespace

import numpy as np
import pytest

from config import DEFAULT_CONFIG
from kernels import isomorphisms
from operators.paired import PairedSpec
from properties import checks
from properties.checks import CHECKS, replay_matches, run_check
from properties.coordinator import SuiteCoordinator, run_all
from properties.generators import Family, GeneratorConfig, SymbolGenerator, gen_symbol
from properties.suites import SUITES, SuiteRun
from properties.trial_report import (
    EXIT_AMBIGUITY,
    EXIT_PASS,
    EXIT_VIOLATION,
    TrialReport,
    Violation,
    aggregate,
    decode_value,
    encode_value,
)
from symbols.parser import parse_symbol
from symbols.rational import RationalSymbol
from symbols.roots import circle_distance, laurent_roots

SMALL = GeneratorConfig(seed=11, trials=2)


# generators ----------------------------------------------------------------

def test_symbols_are_reproducible_per_trial():
    first, second = SymbolGenerator(SMALL), SymbolGenerator(SMALL)
    for trial in (5, 0, 3):
        first.symbol(trial)
    assert first.symbol(3, 1) == second.symbol(3, 1)
    assert first.symbol(3, 0) != first.symbol(3, 1)
    assert gen_symbol(SMALL, 3, 1) == second.symbol(3, 1)


def test_suite_seeds_differ():
    config = GeneratorConfig(seed=11)
    assert config.for_suite("kernels").seed != config.for_suite("coburn").seed
    assert config.for_suite("kernels") == config.for_suite("kernels")


@pytest.mark.parametrize("kwargs", [
    {"seed": -1},
    {"degree_range": (3, 1)},
    {"coefficient_scale": 0.0},
    {"trials": -2},
])
def test_generator_config_validation(kwargs):
    with pytest.raises(ValueError):
        GeneratorConfig(**kwargs)


def test_model_space_and_norm_suites_reach_degree_six():
    for name in ("model_space", "norm_bounds"):
        config = GeneratorConfig(seed=11).for_suite(name)
        assert config.degree_range == (1, 6)
        generator = SymbolGenerator(config)
        degrees = {generator.symbol(trial, family=Family.ANALYTIC).kmax for trial in range(60)}
        assert max(degrees) == 6
    assert GeneratorConfig(seed=11).for_suite("kernels").degree_range == (1, 4)
    assert GeneratorConfig(degree_range=(1, 8)).for_suite("model_space").degree_range == (1, 8)


def test_families_respect_their_bands():
    generator = SymbolGenerator(SMALL)
    for trial in range(10):
        assert generator.symbol(trial, family=Family.ANALYTIC).kmin >= 0
        assert generator.symbol(trial, family=Family.COANALYTIC).kmax <= 0
        assert generator.symbol(trial, family=Family.COANALYTIC_VANISHING).kmax <= -1
        assert circle_distance(generator.symbol(trial, family=Family.INVERTIBLE_ON_T)) > 1e-3
        theta = generator.symbol(trial, family=Family.BLASCHKE)
        assert isinstance(theta, RationalSymbol)
        assert theta.modulus_deviation(256) <= 1e-10


def test_polynomial_kernel_pairs_split_their_roots():
    generator = SymbolGenerator(SMALL)
    for trial in range(10):
        a, b = generator.polynomial_kernel_pair(trial)
        assert all(abs(r) < 1 for r in laurent_roots(a))
        assert all(abs(r) > 1 for r in laurent_roots(b))
        assert b.kmin >= 0


# report codec and exit codes ----------------------------------------------

def test_value_codec_survives_json():
    values = [parse_symbol("z^-1 + 2i"), PairedSpec.of("1", "z"), 1.5 - 2j, np.int64(3), [np.float64(0.25)]]
    for value in values:
        restored = decode_value(json.loads(json.dumps(encode_value(value))))
        if isinstance(value, list):
            assert restored == [0.25]
        else:
            assert restored == value


def test_report_exit_codes():
    clean = TrialReport("a", trials=1, checks_run=1)
    ambiguous = TrialReport("b", trials=1, checks_run=1, ambiguities=[{"trial": 0}])
    violated = TrialReport("c", trials=1, checks_run=1)
    violated.add_violation(Violation(0, "norm_zero", {}, {}))
    assert clean.exit_code == EXIT_PASS
    assert ambiguous.exit_code == EXIT_AMBIGUITY
    assert violated.exit_code == EXIT_VIOLATION
    assert aggregate([clean, ambiguous], 0).exit_code == EXIT_AMBIGUITY
    assert aggregate([ambiguous, violated, clean], 0).exit_code == EXIT_VIOLATION
    assert [r.suite for r in aggregate([violated, clean], 0).reports] == ["a", "c"]


def test_empty_report_is_flagged_as_no_evidence():
    report = TrialReport("empty")
    assert report.no_evidence and report.passed
    assert "runtime" not in report.to_json(include_runtime=False)


# checks and replay ---------------------------------------------------------

def test_checks_are_registered():
    assert {"norm_bounds", "coburn", "band_kernel", "jtilde_round_trip"} <= set(CHECKS)
    with pytest.raises(KeyError):
        run_check("no_such_check", {})


def test_recorded_violation_replays():
    run = SuiteRun("replay", SMALL)
    result = run.check(0, "norm_value", spec=PairedSpec.of("1", "z"), band=4, expected=2.0, tol=1e-12)
    assert not result.ok
    [violation] = run.report.violations
    restored = Violation.from_json(json.loads(json.dumps(violation.to_json())))
    assert restored.check == "norm_value"
    assert replay_matches(restored)


def test_passing_check_records_no_violation():
    run = SuiteRun("replay", SMALL)
    run.check(0, "coburn", spec=PairedSpec.of("z^-1", "z"))
    assert run.report.checks_run == 1
    assert run.report.passed


# suites --------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(SUITES))
def test_suites_pass_on_a_few_trials(name):
    report = SUITES[name](SMALL)
    assert report.suite == name
    assert report.checks_run > 0
    assert report.pinned
    assert report.passed, report.violations


def test_runs_are_deterministic():
    names = ["coburn", "norm_bounds"]
    first = run_all(SMALL, names).dumps(include_runtime=False)
    second = run_all(SMALL, names).dumps(include_runtime=False)
    assert first == second
    assert [suite["suite"] for suite in json.loads(first)["suites"]] == names


def test_coordinator_rejects_unknown_suites():
    with pytest.raises(KeyError):
        SuiteCoordinator(SMALL).select(["kernels", "nope"])
    assert SuiteCoordinator(SMALL).select("all").suites.keys() == SUITES.keys()


def test_zero_trials_still_run_the_pinned_cases():
    report = run_all(GeneratorConfig(seed=1, trials=0), ["commutant"])
    [suite] = report.reports
    assert suite.trials == 0
    assert suite.pinned and suite.checks_run == len(suite.pinned)
    assert suite.no_evidence and suite.passed
    assert "no evidence: no random checks were run" in suite.notes
    assert not run_all(GeneratorConfig(seed=1, trials=1), ["commutant"]).reports[0].no_evidence


# kernels solved rather than counted ----------------------------------------

def test_off_circle_pairs_keep_their_roots_away_from_the_circle():
    generator = SymbolGenerator(SMALL)
    for trial in range(10):
        for symbol in generator.off_circle_pair(trial):
            assert all(abs(abs(root) - 1) >= 0.3 - 1e-9 for root in laurent_roots(symbol))


def test_band_coburn_matches_the_exact_counts():
    generator = SymbolGenerator(SMALL)
    band = DEFAULT_CONFIG["suites"]["coburn_band"]
    for trial in range(5):
        spec = PairedSpec(*generator.off_circle_pair(trial))
        result = run_check("coburn", {"spec": spec, "method": "band", "band": band})
        assert result.ok, result.residuals
        assert list(result.residuals["exact_dims"]) == [
            result.residuals[key] for key in ("dim_ab", "dim_ba", "dim_conj", "dim_adjoint")
        ]


def test_kernel_checks_fail_when_the_solver_disagrees(monkeypatch):
    def wrong_basis(spec, band, *args, **kwargs):
        return SimpleNamespace(dimension=1)

    monkeypatch.setattr(checks, "kernel_basis", wrong_basis)
    monkeypatch.setattr(isomorphisms, "kernel_basis", wrong_basis)
    monkeypatch.setattr(isomorphisms, "adjoint_kernel_basis", wrong_basis)
    assert not run_check("kernel_trivial", {"spec": PairedSpec.of("1 + z", "z^-1"), "band": 12}).ok
    result = run_check("coburn", {"spec": PairedSpec.of("z^-1", "1 - 2*z"), "method": "band", "band": 12})
    assert not result.ok
    assert result.residuals["exact_dims"] == [2, 0, 0, 0]


def test_random_coburn_trials_solve_by_band(monkeypatch):
    calls = []
    original = CHECKS["coburn"]

    def recording(**inputs):
        calls.append(inputs)
        return original(**inputs)

    monkeypatch.setitem(CHECKS, "coburn", recording)
    report = SUITES["coburn"](SMALL)
    assert report.passed, report.violations
    assert sum(inputs.get("method") == "band" for inputs in calls) == 1 + SMALL.trials


# acceptance-scale runs -----------------------------------------------------

def _assert_clean(report):
    for suite in report.reports:
        assert not suite.violations, (suite.suite, suite.violations)
        assert not suite.skipped, (suite.suite, suite.skipped)
        assert not suite.no_evidence


@pytest.mark.slow
def test_default_run_passes_every_suite():
    config = GeneratorConfig()
    assert config.seed == 0 and config.trials == DEFAULT_CONFIG["suites"]["trials"] == 100
    report = run_all(config)
    assert [suite.suite for suite in report.reports] == sorted(SUITES)
    assert all(suite.trials == 100 for suite in report.reports)
    _assert_clean(report)


@pytest.mark.slow
def test_coburn_passes_two_hundred_trials():
    report = run_all(GeneratorConfig(seed=0, trials=200), ["coburn"])
    _assert_clean(report)
    assert len(report.reports[0].statistics["dim_ab"]) == 200
