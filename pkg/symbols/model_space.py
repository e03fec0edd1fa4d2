"""Truncated orthonormal bases of model spaces K_theta = H^2 minus theta H^2."""
import logging

import numpy as np
import scipy.linalg

from errors import SymbolDomainError
from symbols.laurent import LaurentPoly
from symbols.rational import as_rational, rational_to_coeffs
from symbols.roots import laurent_roots

LOGGER = logging.getLogger(__name__)

INNER_TOL = 1e-8
CLUSTER_TOL = 1e-6
MAX_MULTIPLICITY = 2


def _cluster(roots, tol=CLUSTER_TOL):
    """Group numerically repeated roots as (representative, multiplicity)."""
    clusters = []
    for r in roots:
        for entry in clusters:
            if abs(entry[0] - r) <= tol:
                entry[1].append(r)
                break
        else:
            clusters.append([r, [r]])
    return [(complex(np.mean(members)), len(members)) for _, members in clusters]


def _kernel_column(zero, order, band):
    """Coefficients on 0..band of d^order/d(conj zero)^order of 1/(1 - conj(zero) z)."""
    k = np.arange(band + 1)
    w = np.conj(zero)
    if order == 0:
        return w ** k
    column = np.zeros(band + 1, dtype=complex)
    column[1:] = k[1:] * w ** (k[1:] - 1)
    return column


def inner_zeros(theta):
    theta = as_rational(theta)
    numerator = theta.numerator
    roots = laurent_roots(numerator) if numerator.width > 0 else np.zeros(0, dtype=complex)
    return numerator.kmin, roots


def model_space_basis(theta, band, grid_points=None):
    """Orthonormal vectors spanning K_theta, truncated to exponents 0..band."""
    theta = as_rational(theta)
    deviation = theta.modulus_deviation(grid_points)
    if deviation > INNER_TOL:
        raise SymbolDomainError(f"theta is not inner: | |theta| - 1 | reaches {deviation:.3e}")
    origin_order, roots = inner_zeros(theta)
    columns = []
    for j in range(origin_order):
        column = np.zeros(band + 1, dtype=complex)
        if j <= band:
            column[j] = 1.0
        columns.append(column)
    for zero, multiplicity in _cluster(roots):
        if abs(zero) >= 1.0:
            raise SymbolDomainError(f"theta has a zero of modulus {abs(zero):.6f} outside the disk")
        if multiplicity > MAX_MULTIPLICITY:
            raise SymbolDomainError(
                f"zero {zero:.6g} has multiplicity {multiplicity}; at most {MAX_MULTIPLICITY} is supported"
            )
        for order in range(multiplicity):
            columns.append(_kernel_column(zero, order, band))
    if not columns:
        return []
    if len(columns) > band + 1:
        raise SymbolDomainError(f"band {band} is too small for a model space of dimension {len(columns)}")
    q, r = scipy.linalg.qr(np.column_stack(columns), mode="economic")
    phases = np.diag(r) / np.abs(np.diag(r))
    q = q * phases
    LOGGER.debug("model_space_basis: dimension %d at band %d", q.shape[1], band)
    return [LaurentPoly(0, q[:, i]) for i in range(q.shape[1])]


def model_space_orthogonality(theta, basis, band, shifts):
    """Largest |<v, theta e_j>| over basis vectors v and the given shifts j."""
    theta = as_rational(theta)
    worst = 0.0
    for j in shifts:
        image = rational_to_coeffs(theta * LaurentPoly.monomial(j), band).to_vector(0, band)
        for v in basis:
            worst = max(worst, abs(np.vdot(image, v.to_vector(0, band))))
    return worst

