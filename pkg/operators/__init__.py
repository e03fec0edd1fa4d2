from operators.identities import (
    ColumnResidualReport,
    CommutatorReport,
    ProjectionCommutation,
    ProjectionIdentityReport,
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
from operators.projections import CoeffVector, inner_product, mul_apply, riesz_minus, riesz_plus
from operators.sections import (
    BlockDecomposition,
    FiniteSection,
    NormReport,
    SectionKind,
    block_decompose,
    exact_action_matrix,
    finite_section,
    norm_report,
    op_norm,
)
