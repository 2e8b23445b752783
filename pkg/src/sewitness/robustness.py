"""Joint fit of initial and final system states by an uncorrelated preparation.

A measured pair (rho_S, rho'_S) is explained by a product preparation when
some system Bloch vector ``n`` and environment Bloch vector ``m`` reproduce
both states at once.  The check minimises

    F(n, m) = |rho_S - tau_S(n)|_F^2 + |rho'_S - tau'_S(n, m)|_F^2

over the product of two unit balls with a deterministic grid scan followed by
projected gradient descent from the best seeds.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .qcore import BlochVector, DensityMatrix, as_matrix, bloch_matrix

EPS_ROB = 1e-6
GRID_POINTS = 7
N_SEEDS = 5
MAX_ITER = 500
STEP_TOL = 1e-12


@dataclass(frozen=True)
class RobustnessResult:
    feasible: bool
    best_n: BlochVector
    best_m: BlochVector
    residual: float


def _bloch(v) -> BlochVector:
    return v if isinstance(v, BlochVector) else BlochVector.from_array(v)


def tau_prime_matrix(n, m, alpha: float) -> np.ndarray:
    """Closed-form final system state of the product n (x) m, unvalidated."""
    n1, n2, n3 = np.asarray(n, dtype=float)
    m1, m2, m3 = np.asarray(m, dtype=float)
    br, pp, qq = kernels.tau_prime_parts(n1, n2, n3, m1, m2, m3, math.cos(4 * alpha), math.sin(4 * alpha))
    low = (pp + 1j * qq) / 4
    return np.array([[(2 + br) / 4, np.conj(low)], [low, (2 - br) / 4]], dtype=np.complex128)


def tau_prime(n, m, alpha: float) -> DensityMatrix:
    n = _bloch(n)
    m = _bloch(m)
    return DensityMatrix(tau_prime_matrix(n.as_array(), m.as_array(), alpha))


def ball_grid(points: int = GRID_POINTS) -> np.ndarray:
    axis = np.linspace(-1.0, 1.0, points)
    cube = np.array(list(itertools.product(axis, repeat=3)))
    return cube[np.einsum("ij,ij->i", cube, cube) <= 1.0 + kernels.BALL_SLACK]


def _target(rho_s, rho_final) -> np.ndarray:
    parts = []
    for m in (as_matrix(rho_s, dim=2), as_matrix(rho_final, dim=2)):
        for z in m.ravel():
            parts.extend((z.real, z.imag))
    return np.array(parts)


def objective(n, m, rho_s, rho_final, alpha: float) -> float:
    w = np.concatenate([np.asarray(n, float), np.asarray(m, float)])
    return float(kernels.robust_objective(w, _target(rho_s, rho_final), math.cos(4 * alpha), math.sin(4 * alpha)))


def robustness_check(rho_s, rho_final, alpha: float, tol: float = EPS_ROB,
                     grid_points: int = GRID_POINTS, n_seeds: int = N_SEEDS) -> RobustnessResult:
    target = _target(rho_s, rho_final)
    c4, s4 = math.cos(4 * alpha), math.sin(4 * alpha)
    pts = ball_grid(grid_points)
    values = kernels.robust_grid(pts, target, c4, s4)
    # stable sort keeps lexicographic grid order among equal residuals
    order = np.argsort(values, kind="stable")[:n_seeds]

    best_w, best_f = None, math.inf
    npts = len(pts)
    for idx in order:
        w0 = np.concatenate([pts[idx // npts], pts[idx % npts]])
        w, f = kernels.pgd_refine(w0, target, c4, s4, MAX_ITER, STEP_TOL)
        if f < best_f:
            best_w, best_f = w, f
    best_f = max(best_f, 0.0)
    return RobustnessResult(
        feasible=best_f <= tol,
        best_n=BlochVector.from_array(best_w[:3]),
        best_m=BlochVector.from_array(best_w[3:]),
        residual=best_f,
    )


def tau_initial_matrix(n) -> np.ndarray:
    return bloch_matrix(*np.asarray(n, dtype=float))
