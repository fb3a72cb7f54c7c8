"""triple-lab: a numerical laboratory for finite-dimensional JB*-triples.

Builds generalized real Cartan factors as structure-constant tensors,
computes derivation spaces of the triple and symmetrized products, and
reproduces the finite-dimensional separation between local triple
derivations and triple derivations.
"""

from .errors import (
    EmptySpec,
    InvalidInput,
    InvalidSpec,
    NoConvergence,
    NotTripotent,
    SystemMismatch,
    TooLarge,
    TripleLabError,
    Unsupported,
)
from .factors import (
    FactorSpec,
    Quaternion,
    as_real_form,
    build_factor,
    canonical_rank_witness,
    canonical_tripotents,
    complexify,
    direct_sum,
    element_norm,
    extend_map_complex,
)
from .report import Report
from .derivations import (
    DerivationSpace,
    check_IAP_finite,
    check_complex_linearity,
    derivation_space,
    exp_flow_check,
    inner_derivation,
    is_derivation,
    local_derivation_residual,
    rank_one_local_witness,
    two_local_lift,
)
from .repro import repro_all, repro_example_counterexample, repro_hilbert_lemmas, repro_theorem_surrogate
from .structure import (
    OrthogonalSystem,
    PeirceSystem,
    are_orthogonal,
    check_peirce_arithmetic,
    cube_root,
    is_minimal_tripotent,
    is_tripotent,
    peirce,
    verify_rank_witness,
)
from .triple_core import (
    Element,
    L_operator,
    LinearMap,
    Q_operator,
    TripleSystem,
    check_jordan_identity,
    check_norm_axiom,
    load_system,
    save_system,
    symmetrized_product,
    triple_product,
)

__version__ = "0.1.0"

__all__ = [
    "DerivationSpace",
    "Element",
    "EmptySpec",
    "FactorSpec",
    "InvalidInput",
    "InvalidSpec",
    "L_operator",
    "LinearMap",
    "NoConvergence",
    "NotTripotent",
    "OrthogonalSystem",
    "PeirceSystem",
    "Q_operator",
    "Quaternion",
    "Report",
    "SystemMismatch",
    "TooLarge",
    "TripleLabError",
    "TripleSystem",
    "Unsupported",
    "are_orthogonal",
    "as_real_form",
    "build_factor",
    "canonical_rank_witness",
    "canonical_tripotents",
    "check_IAP_finite",
    "check_complex_linearity",
    "check_jordan_identity",
    "check_norm_axiom",
    "check_peirce_arithmetic",
    "complexify",
    "cube_root",
    "derivation_space",
    "direct_sum",
    "element_norm",
    "exp_flow_check",
    "extend_map_complex",
    "inner_derivation",
    "is_derivation",
    "is_minimal_tripotent",
    "is_tripotent",
    "load_system",
    "local_derivation_residual",
    "peirce",
    "rank_one_local_witness",
    "repro_all",
    "repro_example_counterexample",
    "repro_hilbert_lemmas",
    "repro_theorem_surrogate",
    "save_system",
    "symmetrized_product",
    "triple_product",
    "two_local_lift",
    "verify_rank_witness",
]
