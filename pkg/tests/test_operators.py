import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from errors import BandViolationError
from operators.identities import (
    commutator_residual,
    composition_residual,
    projection_commutation,
    projection_identity_residual,
    sigma_composition_residual,
)
from operators.paired import (
    PairedSpec,
    adjoint_residual,
    apply_S,
    apply_Sigma,
    conjugation_relation_residual,
    hankel_apply,
    hankel_tilde_apply,
    toeplitz_apply,
)
from operators.projections import basis_vector, inner_product, mul_apply, riesz_minus, riesz_plus
from operators.sections import (
    SectionKind,
    block_decompose,
    exact_action_matrix,
    finite_section,
    norm_report,
    op_norm,
)
from symbols.factorization import blaschke
from symbols.laurent import LaurentPoly
from symbols.parser import parse_symbol
from symbols.rational import RationalSymbol
from strategies import analytic_polys, coanalytic_polys, laurent_polys

pairs = st.builds(PairedSpec, laurent_polys(), laurent_polys())


def scale_of(*symbols):
    return math.prod(1.0 + np.sum(np.abs(s.values)) for s in symbols)


# projections ---------------------------------------------------------------

@given(laurent_polys())
def test_riesz_projections_split_the_vector(v):
    plus, minus = riesz_plus(v), riesz_minus(v)
    assert plus + minus == v
    assert plus.is_zero or plus.kmin >= 0
    assert minus.is_zero or minus.kmax <= -1
    assert riesz_plus(plus) == plus and riesz_minus(plus).is_zero


def test_inner_product():
    z = parse_symbol("z")
    assert inner_product(z, z) == 1
    assert inner_product(parse_symbol("1 + 2z"), parse_symbol("1i*z")) == -2j
    assert inner_product(LaurentPoly.zero(), z) == 0


def test_mul_apply_grows_the_band():
    image = mul_apply(parse_symbol("z^-1 + 1"), parse_symbol("1 - z"))
    assert image == parse_symbol("z^-1 - z")
    assert mul_apply(parse_symbol("3"), LaurentPoly.zero()).is_zero


# paired operators ----------------------------------------------------------

@pytest.mark.parametrize("a, b, f, expected", [
    ("1", "z", "1 + z^-1", "2"),
    ("z^-1", "z", "1 - z^-2", "0"),
    ("1", "1", "z", "z"),
])
def test_apply_S_pinned(a, b, f, expected):
    image = apply_S(PairedSpec.of(a, b), parse_symbol(f))
    assert (image - parse_symbol(expected)).max_abs() <= 1e-14


def test_apply_Sigma_projects_after_multiplying():
    spec = PairedSpec.of("z^-1", "z")
    # P+(z^-1 * z) + P-(z * z) = 1
    assert apply_Sigma(spec, parse_symbol("z")) == LaurentPoly.one()
    assert apply_Sigma(spec, parse_symbol("z^-2")) == parse_symbol("z^-1")


def test_hankel_and_toeplitz_half_bands():
    eta = parse_symbol("z^-2 + z")
    assert hankel_apply(eta, parse_symbol("1 + z")) == parse_symbol("z^-2 + z^-1")
    assert hankel_tilde_apply(eta, parse_symbol("z^-1")) == LaurentPoly.one()
    assert toeplitz_apply(eta, parse_symbol("z^3")) == parse_symbol("z + z^4")
    with pytest.raises(BandViolationError):
        hankel_apply(eta, parse_symbol("z^-1"))
    with pytest.raises(BandViolationError):
        hankel_tilde_apply(eta, LaurentPoly.one())
    with pytest.raises(BandViolationError):
        toeplitz_apply(eta, parse_symbol("z^-1 + 1"))


@given(pairs, laurent_polys(), laurent_polys())
def test_sigma_of_conjugate_pair_is_the_adjoint(spec, u, v):
    assert adjoint_residual(spec, u, v) <= 1e-12 * scale_of(spec.a, spec.b, u, v)


@given(pairs, laurent_polys())
def test_conjugation_relation(spec, v):
    assert conjugation_relation_residual(spec, v) <= 1e-12 * scale_of(spec.a, spec.b, v)


@given(pairs, laurent_polys(), laurent_polys(), st.sampled_from([2.0, -1j]))
def test_apply_S_is_linear(spec, u, v, c):
    lhs = apply_S(spec, u * c + v)
    rhs = apply_S(spec, u) * c + apply_S(spec, v)
    assert (lhs - rhs).max_abs() <= 1e-12 * scale_of(spec.a, spec.b, u, v)


def test_pair_spec_helpers():
    spec = PairedSpec.of("z^-1 + 2", "3z")
    assert spec.nondegenerate
    assert spec.swapped() == PairedSpec.of("3z", "z^-1 + 2")
    assert spec.conj() == PairedSpec.of("z + 2", "3z^-1")
    assert spec.conj_swapped() == PairedSpec.of("3z^-1", "z + 2")
    assert spec.radius == 1
    assert PairedSpec.from_json(spec.to_json()) == spec
    assert not PairedSpec.of("1", "1").nondegenerate


# sections and norms --------------------------------------------------------

def test_extremal_norm(extremal_spec):
    assert op_norm(extremal_spec, 8) == pytest.approx(math.sqrt(2), abs=1e-9)
    report = norm_report(extremal_spec, 8)
    assert report.M == pytest.approx(1.0)
    assert report.sqrt2M == pytest.approx(math.sqrt(2))
    assert report.sum_ab == pytest.approx(2.0)
    assert report.sharp_upper and not report.sharp_lower
    assert report.within_bounds()


@pytest.mark.parametrize("band", [1, 8, 32])
def test_norm_of_identity(band):
    assert op_norm(PairedSpec.of("1", "1"), band) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("a, b, expected", [("3", "0", 3.0), ("0", "0", 0.0), ("2", "2i", 2.0)])
def test_constant_pair_norms(a, b, expected):
    assert op_norm(PairedSpec.of(a, b), 8) == pytest.approx(expected, abs=1e-12)


@given(pairs)
def test_section_norms_increase_with_the_band(spec):
    norms = [op_norm(spec, band) for band in (2, 4, 8)]
    assert all(x <= y + 1e-10 for x, y in zip(norms, norms[1:]))


@given(pairs)
def test_adjoint_compression(spec):
    s_section = finite_section(spec, SectionKind.S, 16)
    sigma_section = finite_section(spec.conj(), SectionKind.SIGMA, 16)
    assert np.max(np.abs(s_section.adjoint() - sigma_section.matrix)) <= 1e-14


@given(pairs)
def test_exact_action_columns_are_operator_images(spec):
    action = exact_action_matrix(spec, 4)
    lo, hi = int(action.rows[0]), int(action.rows[-1])
    for i, k in enumerate(action.cols):
        assert np.array_equal(action.matrix[:, i], apply_S(spec, basis_vector(int(k))).to_vector(lo, hi))


def test_toeplitz_section_entries():
    G = parse_symbol("z^-1 + 2 + 3z")
    section = finite_section(G, SectionKind.TOEPLITZ, 4)
    assert section.entry(1, 0) == 3 and section.entry(0, 1) == 1 and section.entry(2, 2) == 2
    action = exact_action_matrix(G, 4, SectionKind.TOEPLITZ)
    assert action.rows[-1] == 5
    for i in range(5):
        image = toeplitz_apply(G, basis_vector(i))
        assert np.array_equal(action.matrix[:, i], image.to_vector(0, 5))


def test_hankel_section_matches_the_operator():
    eta = parse_symbol("z^-2 + 4z^-1 + z")
    section = finite_section(eta, SectionKind.HANKEL, 3)
    for i, k in enumerate(section.cols):
        image = hankel_apply(eta, basis_vector(int(k)))
        assert np.array_equal(section.matrix[:, i], image.to_vector(-3, -1))


def test_block_decomposition():
    decomposition = block_decompose(PairedSpec.of("z^-1 + 2z", "1 - z^-2"), 6)
    assert decomposition.residual == 0.0
    top_left, bottom_left, top_right, bottom_right = decomposition.blocks()
    assert top_left.shape == (7, 7) and bottom_right.shape == (6, 6)


def test_section_validation(extremal_spec):
    with pytest.raises(ValueError):
        finite_section(extremal_spec, SectionKind.S, 0)
    with pytest.raises(TypeError):
        finite_section(parse_symbol("z"), SectionKind.S, 4)
    with pytest.raises(TypeError):
        finite_section(extremal_spec, SectionKind.TOEPLITZ, 4)


def test_section_json_is_sparse(extremal_spec):
    data = finite_section(extremal_spec, SectionKind.S, 2).to_json()
    assert data["n"] == data["m"] == 5
    assert len(data["entries"]) == 5


# identities ----------------------------------------------------------------

@given(pairs, analytic_polys(), coanalytic_polys())
def test_conforming_products_compose(spec, a2, b2):
    report = composition_residual(spec, PairedSpec(a2, b2), 4)
    tol = 1e-12 * scale_of(spec.a, spec.b, a2, b2)
    assert report.residual_norm <= tol
    assert report.discrepancy <= tol


@given(pairs, pairs)
def test_composition_matches_its_closed_form(spec, other):
    report = composition_residual(spec, other, 4)
    assert report.discrepancy <= 1e-12 * scale_of(spec.a, spec.b, other.a, other.b)


def test_nonconforming_composition_leaves_a_residual():
    report = composition_residual(PairedSpec.of("1", "z"), PairedSpec.of("z^-1", "z"), 4)
    assert report.residual_norm >= 1e-8
    assert report.witnesses(1e-8)
    assert report.to_json()["residual_norm"] == report.residual_norm


@given(laurent_polys(-3, 0), laurent_polys(0, 3), pairs)
def test_sigma_products_compose_for_coanalytic_a_and_analytic_b(a, b, other):
    report = sigma_composition_residual(PairedSpec(a, b), other, 4)
    tol = 1e-12 * scale_of(a, b, other.a, other.b)
    assert report.residual_norm <= tol
    assert report.discrepancy <= tol


def test_sigma_composition_fails_for_analytic_a():
    report = sigma_composition_residual(PairedSpec.of("z", "1"), PairedSpec.of("z^-1", "z"), 4)
    assert report.residual_norm >= 1e-8
    assert report.discrepancy <= 1e-12


@given(pairs, pairs)
def test_commutator_matches_the_identity(spec, other):
    report = commutator_residual(spec, other, 3)
    assert report.discrepancy <= 1e-12 * scale_of(spec.a, spec.b, other.a, other.b)


def test_multiplication_commutes_only_for_constants(extremal_spec):
    assert commutator_residual(extremal_spec, PairedSpec.of("2", "2"), 4).commutes
    report = commutator_residual(extremal_spec, PairedSpec.of("z", "z"), 4)
    assert not report.commutes
    assert report.commutator_norm == pytest.approx(math.sqrt(2))


def test_projection_commutation_conditions_agree():
    eta = parse_symbol("z")
    holds = projection_commutation(eta, parse_symbol("1 + z"))
    assert holds.holds and holds.consistent
    fails = projection_commutation(eta, parse_symbol("z^-1"))
    assert fails.consistent and not fails.holds
    assert fails.to_json()["hankel_kernel"] is False


def test_projection_identity_for_rational_symbols():
    f = RationalSymbol.reciprocal(parse_symbol("2 - z"))
    report = projection_identity_residual(blaschke([0.5]), f, 16)
    assert report.residual <= 1e-10
    assert report.conversion_band >= 32
    mixed = projection_identity_residual(parse_symbol("z^-1"), f, 16)
    assert mixed.plus_residual >= 0.1
