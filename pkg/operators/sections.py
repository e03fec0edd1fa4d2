"""Finite sections, exact action matrices, norms and block structure.

Sections are indexed by ascending exponents; the H^2 / conj(H^2_0) split is
taken afterwards by selecting rows and columns, never by reordering storage.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg

from config import DEFAULT_CONFIG
from operators.paired import PairedSpec
from symbols.laurent import sup_norm

LOGGER = logging.getLogger(__name__)


class SectionKind(str, Enum):
    S = "S"
    SIGMA = "Sigma"
    TOEPLITZ = "Toeplitz"
    HANKEL = "Hankel"
    HANKEL_TILDE = "HankelTilde"
    MULT = "Mult"


def _exponents(lo, hi):
    return np.arange(lo, hi + 1)


def symbol_block(c, rows, cols):
    """Matrix [c_{j-k}] for ascending contiguous exponent ranges rows (j) and cols (k)."""
    r0, r1, c0, c1 = int(rows[0]), int(rows[-1]), int(cols[0]), int(cols[-1])
    first_column = c.to_vector(r0 - c0, r1 - c0)
    first_row = c.to_vector(r0 - c1, r0 - c0)[::-1]
    return scipy.linalg.toeplitz(first_column, first_row)


def _paired_block(spec, kind, rows, cols):
    ma = symbol_block(spec.a, rows, cols)
    mb = symbol_block(spec.b, rows, cols)
    if kind == SectionKind.S:
        return np.where(cols[None, :] >= 0, ma, mb)
    return np.where(rows[:, None] >= 0, ma, mb)


@dataclass(frozen=True)
class FiniteSection:
    operand: object
    kind: SectionKind
    band: int
    rows: np.ndarray
    cols: np.ndarray
    matrix: np.ndarray
    exact: bool = False

    def entry(self, j, k):
        """<Op e_k, e_j> for exponents j, k."""
        return complex(self.matrix[j - int(self.rows[0]), k - int(self.cols[0])])

    def sub_block(self, row_exponents, col_exponents):
        i = np.asarray(row_exponents) - int(self.rows[0])
        k = np.asarray(col_exponents) - int(self.cols[0])
        return self.matrix[np.ix_(i, k)]

    def adjoint(self):
        return self.matrix.conj().T

    def to_json(self):
        n, m = self.matrix.shape
        i, j = np.nonzero(self.matrix)
        entries = [[int(r), int(c), float(self.matrix[r, c].real), float(self.matrix[r, c].imag)]
                   for r, c in zip(i, j)]
        return {
            "kind": self.kind.value,
            "N": self.band,
            "rows": [int(self.rows[0]), int(self.rows[-1])],
            "cols": [int(self.cols[0]), int(self.cols[-1])],
            "n": n,
            "m": m,
            "entries": entries,
        }


def section_exponents(kind, band):
    """(row exponents, column exponents) of the compression of each kind to band N."""
    full = _exponents(-band, band)
    plus = _exponents(0, band)
    minus = _exponents(-band, -1)
    return {
        SectionKind.S: (full, full),
        SectionKind.SIGMA: (full, full),
        SectionKind.MULT: (full, full),
        SectionKind.TOEPLITZ: (plus, plus),
        SectionKind.HANKEL: (minus, plus),
        SectionKind.HANKEL_TILDE: (plus, minus),
    }[SectionKind(kind)]


def _build(operand, kind, rows, cols):
    if kind in (SectionKind.S, SectionKind.SIGMA):
        if not isinstance(operand, PairedSpec):
            raise TypeError(f"{kind.value} sections need a PairedSpec, got {type(operand).__name__}")
        return _paired_block(operand, kind, rows, cols)
    if isinstance(operand, PairedSpec):
        raise TypeError(f"{kind.value} sections take a single symbol")
    return symbol_block(operand, rows, cols)


def finite_section(operand, kind, band):
    """Matrix of Pi_N Op Pi_N in the exponent basis."""
    if band < 1:
        raise ValueError(f"band N must be at least 1, got {band}")
    kind = SectionKind(kind)
    rows, cols = section_exponents(kind, band)
    return FiniteSection(operand, kind, band, rows, cols, _build(operand, kind, rows, cols))


def exact_action_matrix(operand, band, kind=SectionKind.S):
    """Columns Op e_k for the section's input exponents, with the output band left untruncated.

    Null vectors of this matrix are genuine kernel elements: the operator maps
    trigonometric polynomials to trigonometric polynomials without loss.
    """
    if band < 1:
        raise ValueError(f"band N must be at least 1, got {band}")
    kind = SectionKind(kind)
    if kind in (SectionKind.S, SectionKind.SIGMA, SectionKind.MULT):
        radius = operand.radius
        cols = _exponents(-band, band)
        rows = _exponents(-band - radius, band + radius)
    elif kind == SectionKind.TOEPLITZ:
        cols = _exponents(0, band)
        rows = _exponents(0, band + max(operand.kmax, 0))
    else:
        raise ValueError(f"no exact action matrix for kind {kind.value}")
    return FiniteSection(operand, kind, band, rows, cols, _build(operand, kind, rows, cols), exact=True)


def op_norm(spec, band):
    """Largest singular value of the S-section; nondecreasing in N, tends to ||S_{a,b}||."""
    section = finite_section(spec, SectionKind.S, band)
    return float(scipy.linalg.svdvals(section.matrix)[0])


@dataclass(frozen=True)
class NormReport:
    spec: PairedSpec
    band: int
    sigma_max: float
    sup_a: float
    sup_b: float
    tolerance: float = 1e-9

    @property
    def M(self):
        return max(self.sup_a, self.sup_b)

    @property
    def sqrt2M(self):
        return math.sqrt(2.0) * self.M

    @property
    def sum_ab(self):
        return self.sup_a + self.sup_b

    @property
    def upper_bound(self):
        return min(self.sqrt2M, self.sum_ab)

    @property
    def sharp_lower(self):
        return abs(self.sigma_max - self.M) <= self.tolerance

    @property
    def sharp_upper(self):
        return abs(self.sigma_max - self.sqrt2M) <= self.tolerance

    def within_bounds(self, allowance=None):
        allowance = DEFAULT_CONFIG["norm_allowance"] if allowance is None else allowance
        lower_ok = self.sigma_max >= self.M - allowance * self.M
        upper_ok = self.sigma_max <= self.upper_bound + self.tolerance
        return lower_ok and upper_ok

    def to_json(self):
        return {
            "spec": self.spec.to_json(),
            "N": self.band,
            "sigma_max": self.sigma_max,
            "bounds": {"M": self.M, "sqrt2M": self.sqrt2M, "sumAB": self.sum_ab},
            "sharp_lower": self.sharp_lower,
            "sharp_upper": self.sharp_upper,
        }


def norm_report(spec, band, grid_points=None):
    sigma = op_norm(spec, band)
    report = NormReport(spec, band, sigma, sup_norm(spec.a, grid_points), sup_norm(spec.b, grid_points))
    LOGGER.debug("norm_report %s N=%d: sigma %.12g, M %.12g", spec, band, sigma, report.M)
    return report


@dataclass(frozen=True)
class BlockDecomposition:
    top_left: np.ndarray
    bottom_left: np.ndarray
    top_right: np.ndarray
    bottom_right: np.ndarray
    residual: float

    def blocks(self):
        return self.top_left, self.bottom_left, self.top_right, self.bottom_right


def block_decompose(spec, band):
    """Split the S-section along {0..N} + {-N..-1} and compare with the four operator blocks.

    top-left P+aP+ (Toeplitz of a), bottom-left P-aP+ (Hankel of a),
    top-right P+bP- (H~ of b), bottom-right P-bP- (coanalytic Toeplitz block of b).
    """
    section = finite_section(spec, SectionKind.S, band)
    plus = _exponents(0, band)
    minus = _exponents(-band, -1)
    blocks = (
        section.sub_block(plus, plus),
        section.sub_block(minus, plus),
        section.sub_block(plus, minus),
        section.sub_block(minus, minus),
    )
    direct = (
        finite_section(spec.a, SectionKind.TOEPLITZ, band).matrix,
        finite_section(spec.a, SectionKind.HANKEL, band).matrix,
        finite_section(spec.b, SectionKind.HANKEL_TILDE, band).matrix,
        symbol_block(spec.b, minus, minus),
    )
    residual = max(float(np.max(np.abs(x - y))) if x.size else 0.0 for x, y in zip(blocks, direct))
    return BlockDecomposition(*blocks, residual=residual)
