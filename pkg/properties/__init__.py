from properties.checks import CHECKS, CheckResult, replay, replay_matches, run_check
from properties.coordinator import SuiteCoordinator, run_all
from properties.generators import Family, GeneratorConfig, SymbolGenerator, gen_symbol
from properties.suites import (
    SUITES,
    suite_brown_halmos,
    suite_coburn,
    suite_commutant,
    suite_eta_f,
    suite_kernels,
    suite_model_space,
    suite_norm_bounds,
)
from properties.trial_report import AggregateReport, TrialReport, Violation, aggregate
