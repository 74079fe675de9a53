"""specfam: spectral families of self-adjoint matrices.

Growth subspaces, exact jump-list resolutions of the identity, splitting
into nonpositive/nonnegative parts through the bounded transform, and
Stieltjes reconstruction with explicit error bounds.
"""

__version__ = "0.1.0"

from .core import (
    ConvergenceError,
    EigenDecomposition,
    as_hermitian,
    eigen_oracle,
    frobenius,
    hermitian_defect,
    hermitize,
    inner,
    norm,
    orthonormalize,
    projector_from_basis,
)
from .family import (
    DomainProfile,
    SpectralFamily,
    build_general,
    build_positive,
    density_check,
    domain_profile,
    family_defects,
    merge_families,
    negate_family,
    shift_family,
)
from .mmio import read_matrix_market, write_matrix_market
from .operators import (
    OperatorSpec,
    diagonal,
    generate,
    laplacian1d,
    oscillator,
    random_hermitian,
)
from .quadrature import (
    PartitionSum,
    bilinear_form,
    integral_form,
    partition_sum,
    per_cell_bounds,
    reconstruct_operator,
    smallest_cap,
)
from .report import CheckRecord, Report, VerifyConfig, run_verify
from .splitting import (
    SplitDecomposition,
    bounded_transform,
    check_form_identity,
    check_sign_inequalities,
    split,
)
from .subspace import (
    GeometricSubspace,
    MembershipVerdict,
    check_S_chain,
    check_inclusion_shift,
    check_inverse_inclusion,
    check_sandwich,
    check_square_identity,
    check_strict_lower,
    membership,
    sandwich_holds,
    subspace,
)
