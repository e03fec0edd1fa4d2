"""Band-exact paired kernels from the SVD of the exact action matrix."""
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from config import DEFAULT_CONFIG
from errors import KernelAmbiguityError, MembershipError
from kernels.exact import kernel_dimension, sigma_kernel_dimension
from operators.paired import PairedSpec, apply_S, apply_Sigma
from operators.projections import riesz_minus, riesz_plus
from operators.sections import SectionKind, exact_action_matrix
from symbols.laurent import LaurentPoly

LOGGER = logging.getLogger(__name__)

CHOP = 1e-15


def null_space_svd(matrix, threshold=None, gap_ratio=None, band=None):
    """Orthonormal null-space columns and ascending singular values.

    A singular value s counts as null when s <= threshold * smax / gap_ratio and as
    nonzero when s >= threshold * smax * gap_ratio; anything in between is ambiguous.
    """
    tolerances = DEFAULT_CONFIG["tolerances"]
    threshold = tolerances["null_threshold"] if threshold is None else threshold
    gap_ratio = tolerances["gap_ratio"] if gap_ratio is None else gap_ratio
    _, s, vh = scipy.linalg.svd(matrix, full_matrices=True)
    cols = matrix.shape[1]
    s = np.concatenate([s, np.zeros(cols - len(s))])
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        return np.eye(cols, dtype=complex), np.sort(s)
    relative = s / smax
    ambiguous = (relative > threshold / gap_ratio) & (relative < threshold * gap_ratio)
    if np.any(ambiguous):
        LOGGER.warning("null space ambiguous at band %s: %s", band, relative[ambiguous])
        raise KernelAmbiguityError(np.sort(s), threshold, band)
    rank = int(np.sum(relative >= threshold * gap_ratio))
    return vh[rank:].conj().T, np.sort(s)


def _canonical(column, lo):
    column = np.where(np.abs(column) > CHOP, column, 0)
    pivot = column[np.argmax(np.abs(column))]
    return LaurentPoly(lo, column * (abs(pivot) / pivot))


def band_kernel(operand, band, kind=SectionKind.S, threshold=None, gap_ratio=None):
    """Kernel vectors of the exact action restricted to input exponents of the section."""
    action = exact_action_matrix(operand, band, kind)
    null, singular_values = null_space_svd(action.matrix, threshold, gap_ratio, band)
    lo = int(action.cols[0])
    vectors = [_canonical(null[:, i], lo) for i in range(null.shape[1])]
    return vectors, singular_values


@dataclass(frozen=True)
class KernelBasis:
    spec: PairedSpec
    band: int
    basis: tuple
    singular_values: tuple
    stabilized: bool
    operator: SectionKind = SectionKind.S
    exact_dimension: int = None

    @property
    def dimension(self):
        return len(self.basis)

    def apply(self, v):
        return apply_S(self.spec, v) if self.operator == SectionKind.S else apply_Sigma(self.spec, v)

    def max_residual(self):
        return max((self.apply(v).norm() / v.norm() for v in self.basis), default=0.0)

    def matrix(self, lo=None, hi=None):
        lo = -self.band if lo is None else lo
        hi = self.band if hi is None else hi
        if not self.basis:
            return np.zeros((hi - lo + 1, 0), dtype=complex)
        return np.column_stack([v.to_vector(lo, hi) for v in self.basis])

    def gram(self):
        m = self.matrix()
        return m.conj().T @ m

    def to_json(self):
        return {
            "spec": self.spec.to_json(),
            "operator": self.operator.value,
            "N": self.band,
            "dim": self.dimension,
            "exact_dim": self.exact_dimension,
            "stabilized": self.stabilized,
            "singular_values": [float(s) for s in self.singular_values],
            "basis": [v.to_json() for v in self.basis],
        }


def _exact_dimension(spec, kind):
    if kind == SectionKind.S:
        return kernel_dimension(spec)
    return sigma_kernel_dimension(spec.a, spec.b)


def kernel_basis(spec, band, kind=SectionKind.S, threshold=None, gap_ratio=None, membership=None):
    """Orthonormal basis of {v : band(v) within [-N, N], Op v = 0} for Op = S_{a,b} or Sigma_{a,b}."""
    spec.require_nondegenerate()
    kind = SectionKind(kind)
    membership = DEFAULT_CONFIG["tolerances"]["membership"] if membership is None else membership
    vectors, singular_values = band_kernel(spec, band, kind, threshold, gap_ratio)
    try:
        wider, _ = band_kernel(spec, band + 2, kind, threshold, gap_ratio)
        stabilized = len(wider) == len(vectors)
    except KernelAmbiguityError:
        stabilized = False
    result = KernelBasis(spec, band, tuple(vectors), tuple(float(s) for s in singular_values),
                         stabilized, kind, _exact_dimension(spec, kind))
    residual = result.max_residual()
    if residual > membership:
        raise MembershipError(f"computed kernel vector of {spec} fails the exact action", residual)
    LOGGER.debug("kernel_basis %s %s N=%d: dim %d (exact %d), stabilized %s",
                 kind.value, spec, band, result.dimension, result.exact_dimension, stabilized)
    return result


def adjoint_kernel_basis(spec, band, **kwargs):
    """ker S_{a,b}* computed as the kernel of Sigma_{conj a, conj b}."""
    return kernel_basis(spec.conj(), band, SectionKind.SIGMA, **kwargs)


@dataclass(frozen=True)
class KernelProjections:
    plus: tuple
    minus: tuple

    def reconstruction_error(self, basis):
        return max(((p + m) - v).max_abs() for p, m, v in zip(self.plus, self.minus, basis.basis)) \
            if basis.basis else 0.0

    def to_json(self):
        return {"plus": [v.to_json() for v in self.plus], "minus": [v.to_json() for v in self.minus]}


def kernel_projections(kernel):
    return KernelProjections(
        tuple(riesz_plus(v) for v in kernel.basis),
        tuple(riesz_minus(v) for v in kernel.basis),
    )
