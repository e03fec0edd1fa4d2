"""The randomized verification suites.

Every suite takes a GeneratorConfig, draws its symbols from per-trial
substreams and returns a TrialReport. Pinned cases run first with trial -1.
"""
import logging
import math
import time

import numpy as np

from config import DEFAULT_CONFIG
from errors import ConditioningError, KernelAmbiguityError
from kernels.exact import kernel_dimension, rational_kernel_generators
from operators.paired import PairedSpec
from operators.projections import riesz_minus
from properties.checks import run_check
from properties.generators import MAX_RESAMPLES, Family, SymbolGenerator
from properties.trial_report import TrialReport, Violation, encode_inputs, encode_value
from symbols.laurent import LaurentPoly
from symbols.parser import parse_symbol
from symbols.rational import RationalSymbol
from symbols.roots import circle_distance

LOGGER = logging.getLogger(__name__)

SETTINGS = DEFAULT_CONFIG["suites"]
PINNED = -1
# random phi and factorization inputs keep their zeros this far from the circle
OFF_CIRCLE = 1e-3
FACTOR_OFF_CIRCLE = 1e-6

Z = LaurentPoly.monomial(1)
Z_BAR = LaurentPoly.monomial(-1)


def _pair(a, b):
    return PairedSpec.of(a, b)


class SuiteRun:
    """One suite's generator, report and check dispatch."""

    def __init__(self, name, config):
        self.name = name
        self.config = config.for_suite(name)
        self.generator = SymbolGenerator(self.config)
        self.report = TrialReport(name, trials=config.trials)

    def check(self, trial, name, **inputs):
        self.report.checks_run += 1
        try:
            result = run_check(name, inputs)
        except KernelAmbiguityError as error:
            LOGGER.warning("%s trial %d: %s ambiguous at band %s", self.name, trial, name, error.band)
            self.report.ambiguities.append({"trial": trial, "check": name, "band": error.band})
            return None
        except ConditioningError as error:
            LOGGER.warning("%s trial %d: %s skipped: %s", self.name, trial, name, error)
            self.report.skipped.append({"trial": trial, "check": name, "reason": str(error)})
            return None
        self.report.record_residual(result.residual)
        if not result.ok:
            residuals = {key: encode_value(value) for key, value in result.residuals.items()}
            LOGGER.info("%s trial %d: %s violated: %s", self.name, trial, name, residuals)
            self.report.add_violation(Violation(trial, name, encode_inputs(inputs), residuals))
        return result

    def pinned(self, label, name, **inputs):
        self.report.pinned.append(label)
        return self.check(PINNED, name, **inputs)

    def symbol(self, trial, draw, family=Family.GENERAL):
        return self.generator.symbol(trial, draw, family)

    def nondegenerate(self, trial, draw, families=(Family.GENERAL, Family.GENERAL)):
        """A nondegenerate pair from draws (draw, draw + 1), resampling a - b = 0."""
        for attempt in range(MAX_RESAMPLES):
            a = self.generator.symbol(trial, draw, families[0], attempt)
            b = self.generator.symbol(trial, draw + 1, families[1], attempt)
            spec = PairedSpec(a, b)
            if spec.nondegenerate:
                return spec
            self.report.resamples += 1
        raise RuntimeError(f"{self.name} trial {trial}: no nondegenerate pair after {MAX_RESAMPLES} draws")

    def off_circle(self, trial, draw, family, margin):
        for attempt in range(MAX_RESAMPLES):
            symbol = self.generator.symbol(trial, draw, family, attempt)
            if symbol.width == 0 or circle_distance(symbol) > margin:
                return symbol
            self.report.resamples += 1
        raise RuntimeError(f"{self.name} trial {trial}: no symbol off the circle after {MAX_RESAMPLES} draws")

    def finish(self, started):
        self.report.runtime = time.perf_counter() - started
        LOGGER.info("%s: %d trials, %d checks, %d violations, %d ambiguities",
                    self.name, self.report.trials, self.report.checks_run,
                    len(self.report.violations), len(self.report.ambiguities))
        return self.report


def _with_negative_exponent(symbol):
    return symbol if symbol.kmin < 0 else symbol.shift(-symbol.kmin - 1)


def _with_positive_exponent(symbol):
    return symbol if symbol.kmax > 0 else symbol.shift(1 - symbol.kmax)


def suite_norm_bounds(config):
    """The M <= ||S|| <= min(sqrt2 M, A + B) sandwich, monotone sections and the zero case."""
    started = time.perf_counter()
    run = SuiteRun("norm_bounds", config)
    bands = list(DEFAULT_CONFIG["norm_bands"])
    allowance = DEFAULT_CONFIG["norm_allowance"]
    small = bands[0]
    run.pinned("(1, z) attains sqrt2 M", "norm_value", spec=_pair(1, "z"), band=small,
               expected=math.sqrt(2.0), tol=1e-9)
    run.pinned("(1, 1) attains M", "norm_value", spec=_pair(1, 1), band=small, expected=1.0, tol=1e-12)
    run.pinned("(3, 0) attains A + B", "norm_value", spec=_pair(3, 0), band=small, expected=3.0, tol=1e-12)
    run.pinned("(0, 0) is the zero operator", "norm_zero", spec=_pair(0, 0), band=small)
    for trial in range(config.trials):
        spec = run.nondegenerate(trial, 0)
        result = run.check(trial, "norm_bounds", spec=spec, bands=bands, allowance=allowance)
        if result is not None:
            run.report.add_statistic("gap", result.residuals["gap"])
            run.report.add_statistic("lower_deficit", result.residuals["lower_deficit"])
        run.check(trial, "norm_zero", spec=spec, band=small)
    return run.finish(started)


def suite_brown_halmos(config):
    """Products of paired operators, their transposed versions, and the adjoint/conjugation relations."""
    started = time.perf_counter()
    run = SuiteRun("brown_halmos", config)
    band = SETTINGS["section_band"]
    run.pinned("analytic a~, coanalytic b~", "composition", spec=_pair(1, "z"), other=_pair("z", "z^-1"),
               band=band, expect_zero=True)
    run.pinned("a~ = conj z with a - b = 1 - z", "composition", spec=_pair(1, "z"),
               other=_pair("z^-1", "z^-1"), band=band, expect_zero=False)
    run.pinned("a = b", "composition", spec=_pair("z", "z"), other=_pair("z^-1", "z"), band=band,
               expect_zero=True)
    for trial in range(config.trials):
        spec = run.nondegenerate(trial, 0)
        conforming = PairedSpec(run.symbol(trial, 2, Family.ANALYTIC), run.symbol(trial, 3, Family.COANALYTIC))
        run.check(trial, "composition", spec=spec, other=conforming, band=band, expect_zero=True)
        nonconforming = PairedSpec(_with_negative_exponent(run.symbol(trial, 4)), run.symbol(trial, 5))
        run.check(trial, "composition", spec=spec, other=nonconforming, band=band, expect_zero=False)

        other = run.nondegenerate(trial, 8)
        sigma_spec = PairedSpec(run.symbol(trial, 6, Family.COANALYTIC), run.symbol(trial, 7, Family.ANALYTIC))
        run.check(trial, "sigma_composition", spec=sigma_spec, other=other, band=band, expect_zero=True)
        sigma_nonconforming = PairedSpec(_with_positive_exponent(run.symbol(trial, 10)), spec.b)
        run.check(trial, "sigma_composition", spec=sigma_nonconforming, other=other, band=band,
                  expect_zero=False)

        run.check(trial, "adjoint_compression", spec=spec, band=16)
        run.check(trial, "conjugation_relation", spec=spec, f=run.symbol(trial, 11))
    return run.finish(started)


def suite_commutant(config):
    """Multiplication by eta commutes with S_{a,b} exactly when eta is constant."""
    started = time.perf_counter()
    run = SuiteRun("commutant", config)
    band = SETTINGS["section_band"]
    run.pinned("eta = z against (1, z)", "commutator", spec=_pair(1, "z"), eta=Z, band=band)
    run.pinned("eta = 2 against (1, z)", "commutator", spec=_pair(1, "z"), eta=LaurentPoly.constant(2.0),
               band=band)
    for trial in range(config.trials):
        spec = run.nondegenerate(trial, 0)
        eta = run.symbol(trial, 2)
        if eta.width == 0:
            eta = eta + Z
        run.check(trial, "commutator", spec=spec, eta=eta, band=band)
        constant = LaurentPoly.constant(complex(run.symbol(trial, 3).values[0]))
        run.check(trial, "commutator", spec=spec, eta=constant, band=band)
    return run.finish(started)


def _hankel_member(eta, g_plus, g_minus):
    """f with f+ in ker H_eta and f- in ker H~_eta."""
    plus = g_plus.shift(max(0, -eta.kmin) - g_plus.kmin)
    minus = g_minus.shift(-1 - max(eta.kmax, 0) - g_minus.kmax)
    return plus + minus


def suite_eta_f(config):
    """The four equivalent conditions for eta and f, and invariance of paired kernels under eta."""
    started = time.perf_counter()
    run = SuiteRun("eta_f", config)
    band = SETTINGS["kernel_band"]
    run.pinned("eta = z, f = e_-2", "projection_commutation", eta=Z, f=LaurentPoly.monomial(-2), expect=True)
    run.pinned("eta = z, f = e_-1", "projection_commutation", eta=Z, f=Z_BAR, expect=False)
    run.pinned("eta = conj z^2, f = z^2 (1 + z) + conj z", "projection_commutation",
               eta=LaurentPoly.monomial(-2), f=parse_symbol("z^2 + z^3 + z^-1"), expect=True)
    for trial in range(config.trials):
        eta = run.symbol(trial, 0)
        run.check(trial, "projection_commutation", eta=eta, f=run.symbol(trial, 1))

        eta = _with_negative_exponent(eta)
        member = _hankel_member(eta, run.symbol(trial, 2, Family.ANALYTIC),
                                run.symbol(trial, 3, Family.COANALYTIC))
        run.check(trial, "projection_commutation", eta=eta, f=member, expect=True)
        run.check(trial, "projection_commutation", eta=eta, f=member + LaurentPoly.one(), expect=False)

        a, b = run.generator.polynomial_kernel_pair(trial, 4)
        spec = PairedSpec(a, b)
        if not spec.nondegenerate or kernel_dimension(spec) == 0:
            continue
        f = rational_kernel_generators(spec)[0].element.as_laurent()
        run.check(trial, "eta_invariance", spec=spec, eta=run.symbol(trial, 7), f=f)
        run.check(trial, "eta_invariance", spec=spec, eta=_hankel_eta(f, run.symbol(trial, 8, Family.ANALYTIC)),
                  f=f)
    return run.finish(started)


def _hankel_eta(f, g):
    """Analytic eta of degree below -kmax(P-f), so f lies in ker H_eta + ker H~_eta."""
    eta = g.restrict(0, -1 - riesz_minus(f).kmax)
    return LaurentPoly.one() if eta.is_zero else eta


def _model_space_eta(theta, p, alpha):
    """alpha conj(theta) h with h = p / (theta's denominator), so eta is coanalytic."""
    h = RationalSymbol(p, theta.denominator)
    return theta.conj_reflect() * h * alpha


PINNED_CIRCLE_ROOTS = (
    (1.0,),
    (-1.0,),
    (1j, -1j),
    (1.0, 0.5),
    (1j, 2.0),
    (np.exp(1j * np.pi / 3),),
    (-1.0, 0.3, 3.0),
    (np.exp(2j * np.pi / 5), 0.0),
    (1.0, -1.0, 0.5j),
    (np.exp(1j * np.pi / 4), 1.5),
)


def suite_model_space(config):
    """P+-(eta f) = eta P+-f on the orthogonal complement of a model space, model-space bases,
    and inner-outer factorizations."""
    started = time.perf_counter()
    run = SuiteRun("model_space", config)
    band = DEFAULT_CONFIG["band"]
    basis_band = 4 * band
    theta_z2 = LaurentPoly.monomial(2)
    eta_z2 = LaurentPoly.monomial(-2)
    run.pinned("theta = z^2, f = z^3", "model_space_identity", eta=eta_z2, f=LaurentPoly.monomial(3), band=band)
    run.pinned("theta = z^2, f = conj z", "model_space_identity", eta=eta_z2, f=Z_BAR, band=band)
    run.pinned("K_{z^2}", "model_space_basis", theta=theta_z2, band=basis_band, degree=2)
    for roots in PINNED_CIRCLE_ROOTS:
        p = LaurentPoly(0, np.polynomial.polynomial.polyfromroots(roots))
        run.pinned(f"circle roots {p.to_expression()}", "inner_outer", p=p)
    for trial in range(config.trials):
        theta = run.symbol(trial, 0, Family.BLASCHKE)
        degree = theta.numerator.kmax
        rng = run.generator.rng(trial, 1)
        p = LaurentPoly(0, rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1))
        eta = _model_space_eta(theta, p, np.exp(2j * np.pi * rng.random()))
        f = run.symbol(trial, 2, Family.COANALYTIC_VANISHING) + theta * run.symbol(trial, 3, Family.ANALYTIC)
        run.check(trial, "model_space_identity", eta=eta, f=f, band=band)
        run.check(trial, "model_space_basis", theta=theta, band=basis_band, degree=degree)
        run.check(trial, "inner_outer", p=run.off_circle(trial, 4, Family.ANALYTIC, FACTOR_OFF_CIRCLE))
    return run.finish(started)


def _random_phi(run, trial, draw):
    """phi whose analytic part and reflected coanalytic part are zero-free near the circle."""
    plus = run.off_circle(trial, draw, Family.ANALYTIC, OFF_CIRCLE)
    reflected = run.off_circle(trial, draw + 1, Family.ANALYTIC, OFF_CIRCLE)
    return plus + Z_BAR * reflected.conj_reflect()


def suite_kernels(config):
    """Trivial and explicit kernels, the equality criterion, pairs from a function, the Toeplitz bridge."""
    started = time.perf_counter()
    run = SuiteRun("kernels", config)
    band = SETTINGS["kernel_band"]
    conversion = DEFAULT_CONFIG["band"]
    run.pinned("(z^-1, z) band kernel", "band_kernel", spec=_pair("z^-1", "z"), band=band)
    run.pinned("(z^-1, 1) band kernel", "band_kernel", spec=_pair("z^-1", 1), band=band)
    run.pinned("(1, 1 - z) band kernel", "band_kernel", spec=_pair(1, "1 - z"), band=band)
    run.pinned("(a, b) against (eta a, eta b)", "kernel_equality", first=_pair("z^-1", "z"),
               second=_pair("z^-1 + 2", "z + 2*z^2"), band=band)
    run.pinned("1 - conj z from k_(conj z, 1)", "pair_from_kernel", spec=_pair("z^-1", 1),
               phi=parse_symbol("1 - z^-1"), band=conversion)
    run.pinned("1 - conj z^2 from k_(conj z, z)", "pair_from_kernel", spec=_pair("z^-1", "z"),
               phi=parse_symbol("1 - z^-2"), band=conversion)
    run.pinned("analytic phi = z - 1/2", "pair_from_function", phi=parse_symbol("z - 0.5"), band=conversion)
    for trial in range(config.trials):
        trivial = run.nondegenerate(trial, 0, (Family.ANALYTIC, Family.COANALYTIC))
        run.check(trial, "kernel_trivial", spec=trivial, band=band)
        run.check(trial, "invariance", spec=trivial,
                  other=PairedSpec(run.symbol(trial, 2, Family.ANALYTIC), run.symbol(trial, 3, Family.COANALYTIC)),
                  band=band)

        inner_count = 1 + int(run.generator.rng(trial, 4).integers(0, 2))
        b = run.generator.rooted(trial, 5, inner_count, inside=True) * run.generator.rooted(trial, 6, 1, inside=False)
        run.check(trial, "kernel_element_inner", a=run.symbol(trial, 7, Family.COANALYTIC), b=b, band=conversion)
        run.check(trial, "kernel_element_iii", a=run.symbol(trial, 8, Family.COANALYTIC_VANISHING),
                  b=run.symbol(trial, 9, Family.ANALYTIC))

        first = PairedSpec(*run.generator.polynomial_kernel_pair(trial, 10))
        if first.nondegenerate:
            run.check(trial, "band_kernel", spec=first, band=band)
            shift = int(run.generator.rng(trial, 13).integers(0, 3))
            eta = run.generator.rooted(trial, 14, 1, inside=True).shift(-shift)
            run.check(trial, "kernel_equality", first=first, second=first.scaled(eta), band=band)
            second = PairedSpec(*run.generator.polynomial_kernel_pair(trial, 15))
            if second.nondegenerate:
                run.check(trial, "kernel_equality", first=first, second=second, band=band)
            if kernel_dimension(first):
                phi = rational_kernel_generators(first)[0].element.as_laurent()
                run.check(trial, "pair_from_kernel", spec=first, phi=phi, band=conversion)

        sigma_spec = PairedSpec(
            run.generator.rooted(trial, 18, 2, inside=False).conj_reflect(),
            run.generator.rooted(trial, 19, 1, inside=False).shift(1),
        )
        sigma_other = PairedSpec(run.symbol(trial, 20, Family.COANALYTIC), run.symbol(trial, 21, Family.ANALYTIC))
        if sigma_spec.nondegenerate:
            run.check(trial, "invariance", spec=sigma_spec, other=sigma_other, band=band)

        run.check(trial, "pair_from_function", phi=_random_phi(run, trial, 22), band=conversion)

        k = int(run.generator.rng(trial, 24).integers(0, 4))
        count = int(run.generator.rng(trial, 25).integers(0, 4))
        run.check(trial, "toeplitz_bridge", G=run.generator.rooted(trial, 26, count, inside=True).shift(-k),
                  band=band)
    run.report.notes.append("ker S_{a,b} invariance for analytic a and coanalytic b is vacuous: the kernel is {0}")
    return run.finish(started)


def suite_coburn(config):
    """k_{a,b} = {0} or k_{b,a} = {0}, with the J and J~ dimension bookkeeping."""
    started = time.perf_counter()
    run = SuiteRun("coburn", config)
    band = SETTINGS["kernel_band"]
    coburn_band = SETTINGS["coburn_band"]
    for a, b in (("1", "z"), ("z^-1", "z"), ("1", "1 - z")):
        run.pinned(f"({a}, {b})", "coburn", spec=_pair(a, b))
    run.pinned("(z^-1, 1 - 2z) solved by band", "coburn", spec=_pair("z^-1", "1 - 2*z"), method="band",
               band=coburn_band)
    run.pinned("J on (z^-1, z)", "j_map", spec=_pair("z^-1", "z"), band=band)
    run.pinned("J~ on (z, 1)", "jtilde_round_trip", spec=_pair("z", 1), band=band)
    for trial in range(config.trials):
        spec = PairedSpec(*run.generator.off_circle_pair(trial, 0))
        if spec.nondegenerate:
            result = run.check(trial, "coburn", spec=spec, method="band", band=coburn_band)
            if result is not None:
                run.report.add_statistic("dim_ab", result.residuals["dim_ab"])
        first = PairedSpec(*run.generator.polynomial_kernel_pair(trial, 5))
        if not first.nondegenerate:
            continue
        run.check(trial, "j_map", spec=first, band=band)
        run.check(trial, "jtilde_round_trip", spec=first.conj(), band=band)
    return run.finish(started)


SUITES = {
    "brown_halmos": suite_brown_halmos,
    "coburn": suite_coburn,
    "commutant": suite_commutant,
    "eta_f": suite_eta_f,
    "kernels": suite_kernels,
    "model_space": suite_model_space,
    "norm_bounds": suite_norm_bounds,
}
