"""Exchange-interaction unitary and the reduced dynamics it induces on the system."""
import math

import numpy as np

from .qcore import (
    DensityMatrix,
    BlochVector,
    as_matrix,
    bloch_to_density,
    partial_trace_env,
    tensor,
)

PERIOD = math.pi / 2


def canonical_alpha(alpha: float) -> float:
    """Map ``alpha`` into [0, pi/2); the reduced dynamics has this period."""
    a = math.fmod(float(alpha), PERIOD)
    return a + PERIOD if a < 0 else a


def exchange_unitary(alpha: float) -> np.ndarray:
    """Exchange-interaction propagator in the |00>,|01>,|10>,|11> basis.

    Equals exp(-i alpha (XX + YY + ZZ - 2)), i.e. the bare exponential times
    the global phase exp(2i alpha).  The phase fixes U(pi/4) = exp(i pi/4) SWAP
    and U(pi/2) = iI and has no effect on any conjugated state.
    """
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    outer = np.exp(1j * alpha)
    inner = np.exp(3j * alpha)
    c = math.cos(2 * alpha)
    s = math.sin(2 * alpha)
    u = np.zeros((4, 4), dtype=np.complex128)
    u[0, 0] = u[3, 3] = outer
    u[1, 1] = u[2, 2] = inner * c
    u[1, 2] = u[2, 1] = -1j * inner * s
    return u


def swap() -> np.ndarray:
    return np.eye(4, dtype=np.complex128)[[0, 2, 1, 3]]


def evolve_joint(rho_se, alpha: float) -> np.ndarray:
    u = exchange_unitary(alpha)
    return u @ as_matrix(rho_se, dim=4) @ u.conj().T


def evolve_reduced_matrix(rho_se, alpha: float) -> np.ndarray:
    """Tr_E[U rho_SE U^H] without validation (linear in ``rho_se``)."""
    return partial_trace_env(evolve_joint(rho_se, alpha))


def evolve_reduced(rho_se, alpha: float) -> DensityMatrix:
    if not isinstance(rho_se, DensityMatrix):
        rho_se = DensityMatrix(rho_se)
    return DensityMatrix(evolve_reduced_matrix(rho_se.mat, alpha))


def evolve_product(rho_s, v_env, alpha: float) -> DensityMatrix:
    """Final system state when the joint state starts as ``rho_s`` (x) env(v_env)."""
    if not isinstance(rho_s, DensityMatrix):
        rho_s = DensityMatrix(rho_s)
    env = bloch_to_density(v_env)
    return DensityMatrix(evolve_reduced_matrix(tensor(rho_s.mat, env.mat), alpha))


__all__ = [
    "BlochVector",
    "PERIOD",
    "canonical_alpha",
    "evolve_joint",
    "evolve_product",
    "evolve_reduced",
    "evolve_reduced_matrix",
    "exchange_unitary",
    "swap",
]
