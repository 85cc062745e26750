"""PT-symmetry, pseudo-Hermiticity and Krein-signature analysis for finite-dimensional Hamiltonians."""

from .errors import (
    DimensionError,
    IllConditionedError,
    NumericalError,
    PairingError,
    PreconditionError,
    PTKreinError,
    TheoremViolationError,
)
from .jordan import JordanBlockSpec, JordanDecomposition, eigen_cluster, jordan_decompose, structure_signature
from .kh import (
    FIG1_PARAMETERS,
    KHEigensystem,
    KHParameters,
    kh_eigensystem,
    kh_family,
    kh_hamiltonian,
    kh_metric,
)
from .krein import (
    CollisionEvent,
    KreinClassification,
    SweepReport,
    classify_eigenvalues,
    count_kinds,
    krein_product,
    locate_collision,
    strong_stability,
    sweep,
)
from .linalg import DEFAULT_TOL, Inertia, Tolerance, evolve, hermitian_residual, inertia
from .metric import (
    MetricCertificate,
    PTReport,
    check_pseudo_with,
    check_pt,
    construct_metric,
    find_generalized_parity,
    g_hamiltonian_split,
    random_pt_hamiltonian,
    similar_to_conjugate,
)

__version__ = "0.1.0"
