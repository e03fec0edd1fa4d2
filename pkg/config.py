# Configuration settings
import json
import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from dotenv import load_dotenv

DEFAULT_CONFIG = {
    "band": 32,
    "grid_points": 1024,
    "seed": 0,
    "format": "pretty",
    "tolerances": {
        "exact": 1e-12,
        "numeric": 1e-8,
        "null_threshold": 1e-8,
        "gap_ratio": 10.0,
        "membership": 1e-10,
        "rational": 1e-9,
        "circle": 1e-8,
    },
    "sup_norm": {
        "oversampling": 16,
        "min_points": 256,
    },
    "norm_bands": [8, 16, 32, 64, 128],
    "norm_allowance": 0.05,  # finite-section lower-bound slack at the largest band
    "rational": {
        "band_margin": 2,  # conversion band = margin x working band (at least)
        "chop": 1e-14,
        "boundary": 1e-6,  # closest a denominator root may come to the circle
    },
    "suites": {
        "trials": 100,
        "degree_range": [1, 4],
        "coefficient_scale": 1.0,
        "section_band": 8,
        "kernel_band": 12,
        "coburn_band": 96,  # 0.7^96 keeps truncated rational kernels far below the null threshold
        "root_margin": 0.7,  # polynomial-kernel constructions keep roots inside 0.7D / outside D/0.7
        "converse_floor": 1e-8,
        # suites whose symbols reach a higher degree than degree_range allows
        "max_degree": {"model_space": 6, "norm_bounds": 6},
    },
}

ENV_OVERRIDES = {
    "PAIRED_N": ("band", int),
    "PAIRED_GRID": ("grid_points", int),
    "PAIRED_SEED": ("seed", int),
    "PAIRED_FORMAT": ("format", str),
}

FORMATS = ("json", "csv", "pretty")


def _default_tolerances():
    return dict(DEFAULT_CONFIG["tolerances"])


@dataclass(frozen=True)
class RunConfig:
    band: int = DEFAULT_CONFIG["band"]
    grid_points: int = DEFAULT_CONFIG["grid_points"]
    tolerances: dict = field(default_factory=_default_tolerances)
    seed: int = DEFAULT_CONFIG["seed"]
    output: str = None
    format: str = DEFAULT_CONFIG["format"]

    def __post_init__(self):
        if self.band < 1:
            raise ValueError(f"band N must be at least 1, got {self.band}")
        if self.grid_points < 1:
            raise ValueError(f"grid_points must be positive, got {self.grid_points}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")
        for name, value in self.tolerances.items():
            if not value > 0:
                raise ValueError(f"tolerance {name!r} must be positive, got {value}")

    def tol(self, name):
        return self.tolerances.get(name, DEFAULT_CONFIG["tolerances"][name])

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        values = dict(data)
        if "tolerances" in values:
            values["tolerances"] = {**_default_tolerances(), **values["tolerances"]}
        return cls(**values)

    def save(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True), encoding="utf-8")


def environment_overrides(dotenv_path=None):
    """RunConfig fields taken from PAIRED_* environment variables (a .env file is honoured)."""
    load_dotenv(dotenv_path)
    overrides = {}
    for variable, (name, cast) in ENV_OVERRIDES.items():
        raw = os.environ.get(variable)
        if raw is not None and raw != "":
            overrides[name] = cast(raw)
    return overrides


def load_run_config(path=None, use_environment=True):
    """Merge defaults < config file < environment; command line flags go on top via with_overrides."""
    data = {}
    if path is not None:
        data.update(json.loads(Path(path).read_text(encoding="utf-8")))
    if use_environment:
        data.update(environment_overrides())
    return RunConfig.from_dict(data)


def with_overrides(config, **changes):
    """Replace the fields given as not None; the result is validated again."""
    return replace(config, **{k: v for k, v in changes.items() if v is not None})
