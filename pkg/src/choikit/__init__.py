"""Choi-type transforms of linear maps between matrix algebras, bilinear forms, and positivity cones."""
from .errors import (
    ChoikitError,
    DimensionMismatch,
    InvalidK,
    NotHermitian,
    NotPSD,
    NotSymmetric,
    NumericalBreakdown,
    SingularBasis,
    SingularForm,
    SingularIsomorphism,
    SingularS,
)
from .linalg import BipartiteOperator, flip, partial_trace, partial_transpose, schmidt_rank, swap_operator
from .forms import (
    BasisFamily,
    BilinearForm,
    dual_basis,
    form_from_basis_pair,
    forms_equal,
    orthonormalize_symmetric,
    pair,
    pauli_basis,
    standard_form,
    trace_form,
    weyl_basis,
)
from .maps import (
    LinearMapRep,
    ad_map,
    adjoint,
    adjoint_general,
    apply,
    choi,
    choi_sigma,
    compose,
    from_choi,
    gamma,
    identity_map,
    inverse_choi,
    kraus_map,
    pairing,
    star,
    tensor,
    transpose_map,
)
from .cones import (
    ConeVerdict,
    Status,
    check_prop46,
    check_theorem43,
    detect_ad,
    is_cp,
    is_k_blockpositive,
    is_k_positive,
    is_k_superpositive,
    is_ppt,
    schmidt_number_bounds,
)
from .identities import run_suite, table1_suite, verify_prop52

__version__ = "0.1.0"
