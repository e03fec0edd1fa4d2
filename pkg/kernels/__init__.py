from kernels.construction import (
    KernelPair,
    annihilation_residual,
    kernel_element_iii,
    kernel_element_inner,
    pair_from_function,
)
from kernels.criteria import (
    BridgeReport,
    EtaInvarianceReport,
    InclusionReport,
    InvarianceReport,
    cross_product_residual,
    eta_invariance_test,
    invariance_check,
    kernel_inclusion,
    same_kernel_test,
    subspace_distance,
    toeplitz_kernel_bridge,
)
from kernels.exact import (
    adjoint_kernel_dimension,
    adjoint_kernel_generators,
    kernel_dimension,
    rational_kernel_generators,
    sigma_kernel_dimension,
)
from kernels.isomorphisms import (
    CoburnReport,
    J_map,
    Jtilde_inverse,
    Jtilde_map,
    RoundTripReport,
    coburn_check,
    invertibility_cases,
    jtilde_round_trip,
)
from kernels.null_space import (
    KernelBasis,
    KernelProjections,
    adjoint_kernel_basis,
    kernel_basis,
    kernel_projections,
    null_space_svd,
)
