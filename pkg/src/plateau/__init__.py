"""Design and classification of s-plateaued Boolean functions in the Walsh domain."""

from .bitfn import (
    AnfPolynomial,
    BinaryMatrix,
    BooleanFunction,
    SingularMatrixError,
    anf_to_tt,
    apply_affine,
    lex_index,
    matrix_inverse,
    matrix_rank,
    monomial,
    random_invertible,
    tt_to_anf,
    var,
    vector_from_index,
)
from .classify import (
    BudgetExceeded,
    EaFingerprint,
    EquivalenceVerdict,
    LinearStructureSpace,
    SupportRelation,
    check_dual_relation,
    classify_plateaued,
    ea_equivalent_small,
    ea_fingerprint,
    find_support_relation,
    is_affine_subspace,
    is_partially_bent,
    linear_structures,
    support_rank,
)
from .construct import (
    ConditionError,
    DuplicateRowError,
    NotPlateauedError,
    PlateauedFamily,
    SpectralSpec,
    VectorialBent,
    bent_distance_to_profile,
    build_from_spectrum,
    concat_bent,
    construct_spectral,
    construct_thm41,
    construct_thm42,
    construct_thm43,
    disjoint_family,
    mm_bent,
    mm_plateaued_family,
    q_partition,
    search_duals,
    subspace_indicator,
    support_from_columns,
)
from .spectral import (
    DualFunction,
    NotBentError,
    NotBooleanSpectrum,
    PlateauedProfile,
    WalshSpectrum,
    WalshSupport,
    autocorrelation,
    bent_distance_ok,
    bent_dual,
    canonical_order,
    extract_dual,
    inverse_wht,
    is_bent,
    order_support,
    plateaued_profile,
    sequence_profile_column,
    walsh_support,
    wht,
)
from .textio import ParseError, format_function, parse_function
from .transform import (
    AlphaNotAffine,
    Form27Decomposition,
    VectorialMap,
    compose,
    decompose_form27,
    hou_langevin_transform,
    lp_membership,
    sigma_permutation,
    span_subset_lp,
    tau_permutation,
)
