"""Seeded random symbols for the property suites.

Every draw comes from its own substream keyed by (seed, trial, draw), so a
trial can be regenerated on its own and trial order never matters.
"""
import logging
import zlib
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from config import DEFAULT_CONFIG
from symbols.factorization import blaschke
from symbols.laurent import LaurentPoly
from symbols.roots import circle_distance

LOGGER = logging.getLogger(__name__)

INVERTIBLE_MARGIN = 1e-3
BLASCHKE_RADIUS = 0.8
MAX_RESAMPLES = 100
MAX_FACTOR_ROOTS = 2
MAX_BLASCHKE_ZEROS = 4
MAX_SHIFT = 2


class Family(str, Enum):
    GENERAL = "general"
    ANALYTIC = "analytic"
    COANALYTIC = "coanalytic"
    COANALYTIC_VANISHING = "coanalytic_vanishing"
    BLASCHKE = "blaschke"
    INVERTIBLE_ON_T = "invertible_on_T"


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = DEFAULT_CONFIG["seed"]
    degree_range: tuple = tuple(DEFAULT_CONFIG["suites"]["degree_range"])
    coefficient_scale: float = DEFAULT_CONFIG["suites"]["coefficient_scale"]
    family: Family = Family.GENERAL
    trials: int = DEFAULT_CONFIG["suites"]["trials"]

    def __post_init__(self):
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        lo, hi = self.degree_range
        if not 0 <= lo <= hi:
            raise ValueError(f"degree_range must satisfy 0 <= lo <= hi, got {self.degree_range}")
        if not self.coefficient_scale > 0:
            raise ValueError(f"coefficient_scale must be positive, got {self.coefficient_scale}")
        if self.trials < 0:
            raise ValueError(f"trials must be nonnegative, got {self.trials}")
        object.__setattr__(self, "degree_range", (int(lo), int(hi)))
        object.__setattr__(self, "family", Family(self.family))

    def for_suite(self, name):
        """Sub-configuration with a seed derived from the suite name and the suite's degree ceiling."""
        lo, hi = self.degree_range
        hi = max(hi, DEFAULT_CONFIG["suites"]["max_degree"].get(name, hi))
        seed = (self.seed ^ zlib.crc32(name.encode("utf-8"))) % 2 ** 64
        return replace(self, seed=seed, degree_range=(lo, hi))

    def to_json(self):
        return {
            "seed": self.seed,
            "degree_range": list(self.degree_range),
            "coefficient_scale": self.coefficient_scale,
            "family": self.family.value,
            "trials": self.trials,
        }


class SymbolGenerator:
    def __init__(self, config):
        self.config = config

    def rng(self, trial, draw=0, attempt=0):
        key = (trial, draw, attempt) if attempt else (trial, draw)
        return np.random.default_rng(np.random.SeedSequence(self.config.seed, spawn_key=key))

    def _degree(self, rng, minimum=0):
        lo, hi = self.config.degree_range
        return max(int(rng.integers(lo, hi + 1)), minimum)

    def _gaussian(self, rng, count):
        values = rng.standard_normal(count) + 1j * rng.standard_normal(count)
        return values * (self.config.coefficient_scale / np.sqrt(2.0))

    def _dense(self, rng, kmin, kmax):
        values = self._gaussian(rng, kmax - kmin + 1)
        # keep the requested band exactly
        values[0] = values[0] if values[0] != 0 else 1.0
        values[-1] = values[-1] if values[-1] != 0 else 1.0
        return LaurentPoly(kmin, values)

    def symbol(self, trial, draw=0, family=None, attempt=0):
        """A LaurentPoly (RationalSymbol for the blaschke family) from one substream."""
        family = Family(family or self.config.family)
        rng = self.rng(trial, draw, attempt)
        if family == Family.BLASCHKE:
            return self._blaschke(rng)
        if family == Family.INVERTIBLE_ON_T:
            for _ in range(MAX_RESAMPLES):
                candidate = self._laurent(rng, Family.GENERAL)
                if circle_distance(candidate) > INVERTIBLE_MARGIN:
                    return candidate
            raise RuntimeError(f"no symbol invertible on the circle after {MAX_RESAMPLES} draws")
        return self._laurent(rng, family)

    def _laurent(self, rng, family):
        if family == Family.ANALYTIC:
            return self._dense(rng, 0, self._degree(rng))
        if family == Family.COANALYTIC:
            return self._dense(rng, -self._degree(rng), 0)
        if family == Family.COANALYTIC_VANISHING:
            return self._dense(rng, -self._degree(rng, minimum=1), -1)
        degree = self._degree(rng)
        kmin = -int(rng.integers(0, degree + 1))
        return self._dense(rng, kmin, kmin + degree)

    def _blaschke(self, rng):
        count = min(self._degree(rng, minimum=1), MAX_BLASCHKE_ZEROS)
        return blaschke(self._disk_points(rng, count, BLASCHKE_RADIUS), np.exp(2j * np.pi * rng.random()))

    @staticmethod
    def _disk_points(rng, count, radius):
        moduli = radius * np.sqrt(rng.random(count))
        return moduli * np.exp(2j * np.pi * rng.random(count))

    def rooted(self, trial, draw, count, inside=True, margin=None):
        """Polynomial with `count` roots in margin*D (inside) or in 1/margin < |z| < 2/margin."""
        margin = DEFAULT_CONFIG["suites"]["root_margin"] if margin is None else margin
        rng = self.rng(trial, draw)
        if inside:
            roots = self._disk_points(rng, count, margin)
        else:
            moduli = (1.0 + rng.random(count)) / margin
            roots = moduli * np.exp(2j * np.pi * rng.random(count))
        lead = self._gaussian(rng, 1)[0]
        values = np.polynomial.polynomial.polyfromroots(roots) if count else np.ones(1)
        return LaurentPoly(0, values * lead)

    def polynomial_kernel_pair(self, trial, draw=0):
        """(a, b) = (z^-k A, z^m B), A with roots inside, B with roots outside the circle.

        Its kernel consists of trigonometric polynomials, so band kernels are exact.
        """
        rng = self.rng(trial, draw)
        hi = self.config.degree_range[1]
        k = int(rng.integers(0, hi + 1))
        m = int(rng.integers(0, hi + 1))
        A = self.rooted(trial, draw + 1, int(rng.integers(0, MAX_FACTOR_ROOTS + 1)), inside=True)
        B = self.rooted(trial, draw + 2, int(rng.integers(0, MAX_FACTOR_ROOTS + 1)), inside=False)
        return A.shift(-k), B.shift(m)

    def off_circle_pair(self, trial, draw=0):
        """(a, b), each z^s times a polynomial with up to two roots in margin*D and two outside D/margin.

        Kernels are rational with poles off the circle, so band kernels converge geometrically
        in the band and their dimension settles on the exact one.
        """
        rng = self.rng(trial, draw)
        pair = []
        for offset in (1, 3):
            inside, outside = (int(n) for n in rng.integers(0, MAX_FACTOR_ROOTS + 1, size=2))
            shift = int(rng.integers(-MAX_SHIFT, MAX_SHIFT + 1))
            symbol = self.rooted(trial, draw + offset, inside, inside=True) \
                * self.rooted(trial, draw + offset + 1, outside, inside=False)
            pair.append(symbol.shift(shift))
        return tuple(pair)


def gen_symbol(config, trial, draw=0, family=None):
    return SymbolGenerator(config).symbol(trial, draw, family)
