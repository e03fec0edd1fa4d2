"""Named, replayable checks.

Each check takes plain keyword inputs (symbols, pairs, bands) and returns a
CheckResult. Suites record the inputs of every failing call, so feeding them
back through ``run_check`` reproduces the measured residuals.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from config import DEFAULT_CONFIG
from errors import MembershipError
from kernels.construction import kernel_element_inner, kernel_element_iii, pair_from_function
from kernels.criteria import (
    eta_invariance_test,
    invariance_check,
    kernel_inclusion,
    same_kernel_test,
    toeplitz_kernel_bridge,
)
from kernels.exact import kernel_dimension
from kernels.isomorphisms import J_map, coburn_check, invertibility_cases, jtilde_round_trip
from kernels.null_space import adjoint_kernel_basis, kernel_basis
from operators.identities import (
    commutator_residual,
    composition_residual,
    projection_commutation,
    projection_identity_residual,
    sigma_composition_residual,
)
from operators.paired import PairedSpec, apply_S, conjugation_relation_residual
from operators.sections import NormReport, SectionKind, finite_section, op_norm
from properties.trial_report import decode_inputs
from symbols.factorization import inner_outer_factor
from symbols.laurent import AnalyticityClass, classify, sup_norm
from symbols.model_space import model_space_basis, model_space_orthogonality
from symbols.roots import circle_distance

LOGGER = logging.getLogger(__name__)

TOL = DEFAULT_CONFIG["tolerances"]
SUITES = DEFAULT_CONFIG["suites"]
ADJOINT_TOL = 1e-14
# J~ inverses are only formed for divisors whose zeros stay this far from the circle
WELL_CONDITIONED = 1e-3

CHECKS = {}


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    residuals: dict = field(default_factory=dict)
    residual: float = 0.0


def check(name):
    def register(function):
        CHECKS[name] = function
        return function
    return register


def run_check(name, inputs):
    try:
        function = CHECKS[name]
    except KeyError:
        raise KeyError(f"unknown check {name!r}; known checks: {sorted(CHECKS)}") from None
    return function(**inputs)


def replay(violation):
    """Re-run a recorded violation from its serialized inputs."""
    return run_check(violation.check, decode_inputs(violation.inputs))


def replay_matches(violation, tol=1e-12):
    result = replay(violation)
    for key, recorded in violation.residuals.items():
        value = result.residuals.get(key)
        if isinstance(recorded, float) and isinstance(value, float):
            if not (math.isclose(value, recorded, abs_tol=tol) or (math.isnan(value) and math.isnan(recorded))):
                return False
        elif value != recorded:
            return False
    return True


def _scale(*symbols):
    return max([1.0] + [s.norm() for s in symbols])


# norms --------------------------------------------------------------------------------------------


@check("norm_bounds")
def norm_bounds(spec, bands, allowance):
    sigmas = [op_norm(spec, n) for n in bands]
    report = NormReport(spec, bands[-1], sigmas[-1], sup_norm(spec.a), sup_norm(spec.b))
    drop = max([0.0] + [x - y for x, y in zip(sigmas, sigmas[1:])])
    deficit = (report.M - report.sigma_max) / report.M if report.M > 0 else 0.0
    excess = report.sigma_max - report.upper_bound
    gap = report.sum_ab - report.sigma_max
    strict = spec.a.is_zero or spec.b.is_zero or gap > 0
    ok = (strict
          and drop <= TOL["exact"] * max(1.0, report.sigma_max)
          and deficit <= allowance
          and excess <= report.tolerance * max(1.0, report.M))
    residuals = {
        "sigma_max": report.sigma_max,
        "M": report.M,
        "upper_bound": report.upper_bound,
        "lower_deficit": deficit,
        "upper_excess": excess,
        "monotone_drop": drop,
        "gap": gap,
    }
    return CheckResult(ok, residuals, max(excess, drop, 0.0))


@check("norm_value")
def norm_value(spec, band, expected, tol):
    sigma = op_norm(spec, band)
    error = abs(sigma - expected)
    return CheckResult(error <= tol, {"sigma_max": sigma, "error": error}, error)


@check("norm_zero")
def norm_zero(spec, band):
    sigma = op_norm(spec, band)
    zero = spec.a.is_zero and spec.b.is_zero
    return CheckResult((sigma <= TOL["exact"]) == zero, {"sigma_max": sigma, "zero_pair": zero})


@check("adjoint_compression")
def adjoint_compression(spec, band):
    s_section = finite_section(spec, SectionKind.S, band)
    sigma_section = finite_section(spec.conj(), SectionKind.SIGMA, band)
    error = float(np.max(np.abs(s_section.adjoint() - sigma_section.matrix)))
    return CheckResult(error <= ADJOINT_TOL, {"max_abs": error}, error)


@check("conjugation_relation")
def conjugation_relation(spec, f):
    residual = conjugation_relation_residual(spec, f)
    return CheckResult(residual <= TOL["exact"] * _scale(spec.a, spec.b) * _scale(f),
                       {"residual": residual}, residual)


# products and commutators -------------------------------------------------------------------------


def _product_result(report, expect_zero, scale):
    tol = TOL["exact"] * scale
    residuals = {
        "residual_norm": report.residual_norm,
        "discrepancy": report.discrepancy,
        "witness_f_1": report.column(0),
        "witness_f_zbar": report.column(-1),
    }
    if expect_zero:
        ok = report.residual_norm <= tol
    else:
        ok = report.residual_norm >= SUITES["converse_floor"]
    return CheckResult(ok and report.discrepancy <= tol, residuals, report.discrepancy)


@check("composition")
def composition(spec, other, band, expect_zero):
    report = composition_residual(spec, other, band)
    return _product_result(report, expect_zero, _scale(spec.a, spec.b) * _scale(other.a, other.b))


@check("sigma_composition")
def sigma_composition(spec, other, band, expect_zero):
    report = sigma_composition_residual(spec, other, band)
    return _product_result(report, expect_zero, _scale(spec.a, spec.b) * _scale(other.a, other.b))


@check("commutator")
def commutator(spec, eta, band):
    """[S_{a,b}, eta] vanishes exactly for constant eta."""
    report = commutator_residual(spec, PairedSpec(eta, eta), band)
    tol = TOL["exact"] * _scale(spec.a, spec.b) * _scale(eta)
    constant = classify(eta) == AnalyticityClass.CONSTANT
    ok = (report.commutator_norm <= tol) == constant and report.discrepancy <= tol
    residuals = {
        "commutator_norm": report.commutator_norm,
        "discrepancy": report.discrepancy,
        "constant_eta": constant,
    }
    return CheckResult(ok, residuals, report.discrepancy)


@check("projection_commutation")
def projection_commutation_check(eta, f, expect=None):
    report = projection_commutation(eta, f)
    ok = report.consistent and (expect is None or report.commutes == expect)
    residuals = {name: float(r) for name, r in zip(("S", "hankel", "plus", "minus"), report.residuals)}
    residuals["commutes"] = report.commutes
    return CheckResult(ok, residuals)


@check("eta_invariance")
def eta_invariance(spec, eta, f):
    report = eta_invariance_test(spec, eta, f)
    residuals = {
        "invariant": report.invariant,
        "hankel_condition": report.hankel_condition,
        "invariant_residual": report.invariant_residual,
        "hankel_residual": report.hankel_residual,
    }
    return CheckResult(report.equivalent, residuals)


# model spaces and factorization -------------------------------------------------------------------


@check("model_space_identity")
def model_space_identity(eta, f, band):
    report = projection_identity_residual(eta, f, band)
    residuals = {"plus_residual": report.plus_residual, "minus_residual": report.minus_residual}
    return CheckResult(report.residual <= TOL["numeric"], residuals, report.residual)


@check("model_space_basis")
def model_space_basis_check(theta, band, degree):
    basis = model_space_basis(theta, band)
    matrix = np.column_stack([v.to_vector(0, band) for v in basis]) if basis else np.zeros((band + 1, 0))
    gram_error = float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(len(basis))))) if basis else 0.0
    orthogonality = model_space_orthogonality(theta, basis, band, range(band - degree + 1))
    ok = len(basis) == degree and gram_error <= TOL["membership"] and orthogonality <= TOL["numeric"]
    residuals = {"dimension": len(basis), "gram_error": gram_error, "orthogonality": orthogonality}
    return CheckResult(ok, residuals, max(gram_error, orthogonality))


@check("inner_outer")
def inner_outer(p):
    factorization = inner_outer_factor(p)
    deviation = factorization.inner_deviation()
    product = factorization.product_residual(p) / max(1.0, p.max_abs())
    at_zero = complex(factorization.outer(0.0))
    outer_roots_ok = bool(np.all(np.abs(factorization.outer_zeros) >= 1.0 - DEFAULT_CONFIG["rational"]["boundary"]))
    ok = (deviation <= TOL["numeric"] and product <= TOL["numeric"]
          and at_zero.real > 0 and abs(at_zero.imag) <= TOL["exact"] * max(1.0, abs(at_zero))
          and outer_roots_ok)
    residuals = {
        "inner_deviation": deviation,
        "product_residual": product,
        "outer_at_zero": at_zero.real,
        "outer_roots_ok": outer_roots_ok,
    }
    return CheckResult(ok, residuals, max(deviation, product))


# kernels ------------------------------------------------------------------------------------------


@check("kernel_trivial")
def kernel_trivial(spec, band):
    """The solved band kernel is {0}, and so is the exact count."""
    try:
        basis = kernel_basis(spec, band)
    except MembershipError as error:
        return CheckResult(False, {"membership_residual": error.residual})
    exact = kernel_dimension(spec)
    return CheckResult(basis.dimension == 0 and exact == 0,
                       {"dimension": basis.dimension, "exact_dimension": exact})


@check("kernel_element_inner")
def kernel_element_inner_check(a, b, band):
    try:
        f = kernel_element_inner(a, b, band)
    except MembershipError as error:
        return CheckResult(False, {"residual": error.residual})
    residual = apply_S(PairedSpec(a, b), f).norm() / f.norm()
    return CheckResult(residual <= TOL["rational"] and f.norm() > 0, {"residual": residual, "norm": f.norm()},
                       residual)


@check("kernel_element_iii")
def kernel_element_iii_check(a, b):
    f = kernel_element_iii(a, b)
    residual = apply_S(PairedSpec(a, b), f).norm()
    return CheckResult(residual <= TOL["exact"] * _scale(a, b) ** 2 and not f.is_zero,
                       {"residual": residual}, residual)


@check("band_kernel")
def band_kernel_check(spec, band):
    """Band SVD kernel against the root-count dimension."""
    kernel = kernel_basis(spec, band)
    residual = kernel.max_residual()
    ok = kernel.dimension == kernel.exact_dimension and kernel.stabilized and residual <= TOL["membership"]
    residuals = {"dimension": kernel.dimension, "exact_dimension": kernel.exact_dimension,
                 "stabilized": kernel.stabilized, "residual": residual}
    return CheckResult(ok, residuals, residual)


@check("kernel_equality")
def kernel_equality(first, second, band):
    """Equal kernels exactly when a b~ = a~ b; shared vectors force equality; inclusions are equalities."""
    report = kernel_inclusion(first, second, band)
    criterion = same_kernel_test(first, second)
    agrees = report.first_dimension == 0 or criterion == report.equal
    ok = agrees and report.dichotomy_holds and report.intersection_rule_holds
    residuals = {
        "first_dimension": report.first_dimension,
        "second_dimension": report.second_dimension,
        "intersection_dimension": report.intersection_dimension,
        "included": report.included,
        "criterion": criterion,
        "cross_residual": report.cross_residual,
    }
    return CheckResult(ok, residuals)


@check("invariance")
def invariance(spec, other, band):
    report = invariance_check(spec, other, band)
    residuals = {
        "s_vacuous": report.s_vacuous,
        "sigma_kernel_dimension": report.sigma_kernel_dimension,
        "sigma_residual": report.sigma_residual,
    }
    return CheckResult(report.holds, residuals, report.sigma_residual)


@check("pair_from_function")
def pair_from_function_check(phi, band):
    pair = pair_from_function(phi, band)
    tol = TOL["rational"] * max(1.0, phi.norm())
    return CheckResult(pair.residual <= tol, {"residual": pair.residual}, pair.residual)


@check("pair_from_kernel")
def pair_from_kernel(spec, phi, band):
    pair = pair_from_function(phi, band)
    same = same_kernel_test(pair, spec, band=band)
    ok = pair.residual <= TOL["rational"] * max(1.0, phi.norm()) and same
    return CheckResult(ok, {"residual": pair.residual, "same_kernel": same}, pair.residual)


@check("toeplitz_bridge")
def toeplitz_bridge(G, band):
    report = toeplitz_kernel_bridge(G, band)
    ok = report.toeplitz_dimension == report.paired_dimension and report.angle <= TOL["numeric"]
    residuals = {"toeplitz_dimension": report.toeplitz_dimension,
                 "paired_dimension": report.paired_dimension, "angle": report.angle}
    return CheckResult(ok, residuals, report.angle)


# dichotomy and isomorphisms -----------------------------------------------------------------------


@check("coburn")
def coburn(spec, method="exact", band=None):
    """The dichotomy on the measured dimensions.

    With method="band" the four kernels are solved by SVD and must also match the exact counts.
    """
    try:
        report = coburn_check(spec, band, method)
    except MembershipError as error:
        return CheckResult(False, {"membership_residual": error.residual})
    residuals = {
        "dim_ab": report.dim_ab,
        "dim_ba": report.dim_ba,
        "dim_conj": report.dim_conj,
        "dim_adjoint": report.dim_adjoint,
        "violations": list(report.violations),
    }
    ok = report.passed
    if method != "exact":
        exact = coburn_check(spec, method="exact")
        residuals["exact_dims"] = list(_coburn_dims(exact))
        ok = ok and exact.passed and _coburn_dims(report) == _coburn_dims(exact)
    return CheckResult(ok, residuals)


def _coburn_dims(report):
    return report.dim_ab, report.dim_ba, report.dim_conj, report.dim_adjoint


@check("j_map")
def j_map(spec, band):
    """J maps a band basis of k_{a,b} into k_{conj b, conj a}, with equal dimensions, and J J = id."""
    source = kernel_basis(spec, band)
    target = kernel_basis(spec.conj_swapped(), band)
    images = [J_map(v, spec) for v in source.basis]
    involution = max([0.0] + [(J_map(w, spec.conj_swapped()) - v).norm() for v, w in zip(source.basis, images)])
    ok = source.dimension == target.dimension and involution <= TOL["exact"]
    residuals = {"dimension": source.dimension, "target_dimension": target.dimension, "involution": involution}
    return CheckResult(ok, residuals, involution)


def well_conditioned_cases(spec):
    symbols = {"a_minus_b": spec.a - spec.b, "a": spec.a, "b": spec.b}
    return tuple(case for case in invertibility_cases(spec)
                 if symbols[case].width == 0 or circle_distance(symbols[case]) > WELL_CONDITIONED)


@check("jtilde_round_trip")
def jtilde_round_trip_check(spec, band):
    kernel = adjoint_kernel_basis(spec, band)
    cases = well_conditioned_cases(spec)
    errors, discrepancy = [0.0], 0.0
    for psi in kernel.basis:
        report = jtilde_round_trip(psi, spec, band, cases)
        errors.append(report.max_error)
        discrepancy = max(discrepancy, report.discrepancy)
    error = max(errors)
    ok = error <= TOL["rational"] and discrepancy <= TOL["rational"]
    if cases:
        ok = ok and kernel.dimension == kernel_dimension(spec.conj())
    residuals = {"dimension": kernel.dimension, "cases": list(cases), "error": error, "discrepancy": discrepancy}
    return CheckResult(ok, residuals, max(error, discrepancy))
