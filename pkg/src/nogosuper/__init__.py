"""Superposition no-go toolkit: dependent states in, independent states out,
forbidden tasks unlocked."""

from .discrimination import (
    CloneResult,
    DiscriminationOutcome,
    USDMeasurement,
    build_usd,
    probabilistic_clone,
    simulate_usd,
    success_probabilities,
)
from .linalg import (
    RankResult,
    gram,
    max_eigenvalue_hermitian,
    numerical_rank,
    reciprocal_basis,
)
from .pipeline import (
    CounterexampleParams,
    DegeneracyLocus,
    DemoReport,
    DependenceCertificate,
    PhaseTriple,
    ScanResult,
    apply_superposer_to_set,
    apply_with_phases,
    build_counterexample,
    certify_independence,
    forbidden_task_demo,
    scan_degeneracy_numeric,
    solve_degeneracy_analytic,
    standard_params,
)
from .states import (
    CanonicalForm,
    PureState,
    StateSet,
    basis_state,
    canonicalize,
    is_linearly_independent,
    normalize,
)
from .superposer import (
    AlwaysSucceed,
    CanonicalHashPhase,
    ConstantPhase,
    ConstantSuccess,
    OverlapArgPhase,
    OverlapScaledSuccess,
    SuperposeOutcome,
    SuperposerConfig,
    superpose,
    superpose_deterministic,
)

__version__ = "0.1.0"
