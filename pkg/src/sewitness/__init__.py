"""Detect initial system-environment correlations from system-only measurements."""
from ._accel import NUMBA_ENABLED, backend
from .detection import (
    EPS_FEAS,
    AffineDecomposition,
    AlphaInterval,
    DetectionResult,
    Verdict,
    affine_decomposition,
    alpha_bounds,
    ball_least_squares,
    detect,
    grid_oracle_distance,
    p_threshold,
    scan_alpha,
    witness_distance,
    z_relation,
)
from .dynamics import canonical_alpha, evolve_product, evolve_reduced, exchange_unitary
from .entanglement import concurrence, eof, spin_flip
from .qcore import (
    BlochVector,
    DensityMatrix,
    ValidationError,
    bloch_to_density,
    density_to_bloch,
    frobenius,
    partial_trace_env,
    pauli,
    tensor,
)
from .robustness import RobustnessResult, robustness_check, tau_prime
from .states import (
    Kind,
    StateFamily,
    analytic_reduced_final,
    analytic_reduced_initial,
    build_state,
    max_entangled,
    pure_mixed,
    werner_like,
)

__version__ = "0.1.0"

__all__ = [
    "NUMBA_ENABLED",
    "backend",
    "EPS_FEAS",
    "AffineDecomposition",
    "AlphaInterval",
    "DetectionResult",
    "Verdict",
    "affine_decomposition",
    "alpha_bounds",
    "ball_least_squares",
    "detect",
    "grid_oracle_distance",
    "p_threshold",
    "scan_alpha",
    "witness_distance",
    "z_relation",
    "canonical_alpha",
    "evolve_product",
    "evolve_reduced",
    "exchange_unitary",
    "concurrence",
    "eof",
    "spin_flip",
    "BlochVector",
    "DensityMatrix",
    "ValidationError",
    "bloch_to_density",
    "density_to_bloch",
    "frobenius",
    "partial_trace_env",
    "pauli",
    "tensor",
    "RobustnessResult",
    "robustness_check",
    "tau_prime",
    "Kind",
    "StateFamily",
    "analytic_reduced_final",
    "analytic_reduced_initial",
    "build_state",
    "max_entangled",
    "pure_mixed",
    "werner_like",
]
