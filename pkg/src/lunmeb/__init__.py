"""Locally generated entangled qudit bases, their unextendibility
certificates, an unambiguous-discrimination measurement, and dense-coding
capacity analysis."""

from .bases import (
    ExtendabilityCertificate,
    OrthoClass,
    SubspaceBasis,
    build_all_classes,
    build_class,
    build_subspace_basis,
    check_class_family,
    cross_class_orthogonality,
    extendability_check,
    fourier_unextendibility,
)
from .discrimination import (
    DualFamily,
    InvalidPovmError,
    PovmSet,
    Representatives,
    build_duals,
    build_povm,
    build_representatives,
    max_feasible_A,
    outcome_probabilities,
    paper_A,
    paper_success_error,
    success_comparison,
    unambiguity_matrix,
)
from .linalg import (
    TOLERANCES,
    Tolerances,
    determinant,
    fourier_matrix,
    gram_matrix,
    hermitian_eigenvalues,
    nullspace,
    tensor_product,
)
from .operators import (
    LocalOperator,
    OperatorCombination,
    apply_local,
    combination,
    combine,
    hs_inner,
    is_unitary,
    subspace_weyl,
    weyl,
)
from .sdc import (
    CapacityReport,
    SimulationResult,
    build_capacity_report,
    capacity_asymptotic,
    capacity_nme,
    capacity_subspace,
    crossover_range,
    f_threshold,
    fd_curve,
    simulate_protocol,
)
from .states import (
    GeneralClassVector,
    SchmidtState,
    entanglement_entropy,
    general_class_vector,
    make_schmidt_state,
    subspace_max_entangled,
    to_vector,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Tolerances",
    "TOLERANCES",
    "tensor_product",
    "gram_matrix",
    "hermitian_eigenvalues",
    "nullspace",
    "determinant",
    "fourier_matrix",
    "SchmidtState",
    "make_schmidt_state",
    "to_vector",
    "subspace_max_entangled",
    "entanglement_entropy",
    "GeneralClassVector",
    "general_class_vector",
    "LocalOperator",
    "OperatorCombination",
    "weyl",
    "subspace_weyl",
    "combination",
    "combine",
    "apply_local",
    "hs_inner",
    "is_unitary",
    "OrthoClass",
    "SubspaceBasis",
    "ExtendabilityCertificate",
    "build_class",
    "build_all_classes",
    "build_subspace_basis",
    "cross_class_orthogonality",
    "extendability_check",
    "fourier_unextendibility",
    "check_class_family",
    "Representatives",
    "DualFamily",
    "PovmSet",
    "InvalidPovmError",
    "build_representatives",
    "build_duals",
    "build_povm",
    "paper_A",
    "max_feasible_A",
    "outcome_probabilities",
    "paper_success_error",
    "unambiguity_matrix",
    "success_comparison",
    "CapacityReport",
    "SimulationResult",
    "capacity_nme",
    "capacity_subspace",
    "capacity_asymptotic",
    "f_threshold",
    "crossover_range",
    "fd_curve",
    "build_capacity_report",
    "simulate_protocol",
]
