"""Trial accounting for the property suites, and the JSON codec for check inputs."""
import json
from dataclasses import dataclass, field

import numpy as np

from operators.paired import PairedSpec
from symbols.laurent import LaurentPoly
from symbols.rational import RationalSymbol

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_AMBIGUITY = 2


def encode_value(value):
    """Tagged JSON for the values the checks take as inputs."""
    if isinstance(value, LaurentPoly):
        return {"laurent": value.to_json()}
    if isinstance(value, RationalSymbol):
        return {"rational": value.to_json()}
    if isinstance(value, PairedSpec):
        return {"pair": value.to_json()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    if isinstance(value, (complex, np.complexfloating)):
        return {"complex": [float(value.real), float(value.imag)]}
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def decode_value(data):
    if isinstance(data, list):
        return [decode_value(v) for v in data]
    if isinstance(data, dict):
        if "laurent" in data:
            return LaurentPoly.from_json(data["laurent"])
        if "rational" in data:
            return RationalSymbol.from_json(data["rational"])
        if "pair" in data:
            return PairedSpec.from_json(data["pair"])
        if "complex" in data:
            return complex(*data["complex"])
    return data


def encode_inputs(inputs):
    return {name: encode_value(value) for name, value in inputs.items()}


def decode_inputs(data):
    return {name: decode_value(value) for name, value in data.items()}


@dataclass(frozen=True)
class Violation:
    trial: int
    check: str
    inputs: dict
    residuals: dict

    def to_json(self):
        return {"trial": self.trial, "check": self.check, "inputs": self.inputs, "residuals": self.residuals}

    @classmethod
    def from_json(cls, data):
        return cls(data["trial"], data["check"], data["inputs"], data["residuals"])


@dataclass
class TrialReport:
    suite: str
    trials: int = 0
    checks_run: int = 0
    violations: list = field(default_factory=list)
    max_residual: float = 0.0
    runtime: float = 0.0
    resamples: int = 0
    ambiguities: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    pinned: list = field(default_factory=list)
    statistics: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    @property
    def no_evidence(self):
        """True when no random check ran; pinned cases alone are not evidence."""
        return self.checks_run <= len(self.pinned)

    @property
    def exit_code(self):
        if self.violations:
            return EXIT_VIOLATION
        if self.ambiguities:
            return EXIT_AMBIGUITY
        return EXIT_PASS

    def record_residual(self, residual):
        if np.isfinite(residual):
            self.max_residual = max(self.max_residual, float(residual))

    def add_violation(self, violation):
        self.violations.append(violation)

    def add_statistic(self, name, value):
        self.statistics.setdefault(name, []).append(float(value))

    def summary_statistics(self):
        return {
            name: {"count": len(values), "min": min(values), "max": max(values), "mean": float(np.mean(values))}
            for name, values in sorted(self.statistics.items()) if values
        }

    def to_json(self, include_runtime=True):
        data = {
            "suite": self.suite,
            "trials": self.trials,
            "checks_run": self.checks_run,
            "passed": self.passed,
            "no_evidence": self.no_evidence,
            "max_residual": self.max_residual,
            "resamples": self.resamples,
            "ambiguities": list(self.ambiguities),
            "skipped": list(self.skipped),
            "pinned": list(self.pinned),
            "statistics": self.summary_statistics(),
            "notes": list(self.notes),
            "violations": [v.to_json() for v in self.violations],
        }
        if include_runtime:
            data["runtime"] = self.runtime
        return data


@dataclass(frozen=True)
class AggregateReport:
    reports: tuple
    seed: int

    @property
    def passed(self):
        return all(report.passed for report in self.reports)

    @property
    def exit_code(self):
        return max((report.exit_code for report in self.reports), key=_severity, default=EXIT_PASS)

    def to_json(self, include_runtime=True):
        return {
            "seed": self.seed,
            "passed": self.passed,
            "exit_code": self.exit_code,
            "suites": [report.to_json(include_runtime) for report in self.reports],
        }

    def dumps(self, include_runtime=True):
        return json.dumps(self.to_json(include_runtime), indent=2, sort_keys=True)


def _severity(code):
    # a violation outranks an ambiguity
    return {EXIT_PASS: 0, EXIT_AMBIGUITY: 1, EXIT_VIOLATION: 2}[code]


def aggregate(reports, seed):
    return AggregateReport(tuple(sorted(reports, key=lambda report: report.suite)), seed)
