"""Correlation witness for a system qubit coupled to a one-qubit environment.

Given the initial and final reduced states of the system, the witness asks
whether *some* environment state, taken as a product with the system,
reproduces the final state under the exchange unitary.  The mismatch

    D(v) = rho'_S - Tr_E[U (rho_S (x) env(v)) U^H]

is affine in the environment Bloch vector ``v``, so the smallest Frobenius
norm over the Bloch ball is a ball-constrained linear least-squares problem,
which is solved exactly here (trust-region subproblem with a secular
equation).  A strictly positive minimum certifies initial correlations.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import kernels
from .dynamics import PERIOD, evolve_reduced_matrix
from .qcore import (
    BlochVector,
    DensityMatrix,
    as_matrix,
    bloch_matrix,
    frobenius,
    partial_trace_env,
    tensor,
)
from .states import Kind, StateFamily, build_state

EPS_FEAS = 1e-9
EIG_CUTOFF = 1e-12
DEGENERATE_TOL = 1e-12
SINGULAR_TOL = 1e-12

_UNIT = np.eye(3)


class Verdict(enum.Enum):
    CORRELATED = "correlated"
    CONSISTENT = "consistent-with-product"
    # every environment reproduces the data; nothing can be learned at this alpha
    DEGENERATE = "degenerate"


@dataclass(frozen=True, eq=False)
class AffineDecomposition:
    """D(x, y, z) = d0 + x*dx + y*dy + z*dz."""

    d0: np.ndarray
    dx: np.ndarray
    dy: np.ndarray
    dz: np.ndarray

    def at(self, v) -> np.ndarray:
        x, y, z = np.asarray(v, dtype=float)
        return self.d0 + x * self.dx + y * self.dy + z * self.dz

    def real_system(self):
        """Return ``(A, b0)`` with ``||D(v)||_F = ||b0 + A v||_2`` (A is 8x3)."""
        def flat(m):
            return np.concatenate([m.real.ravel(), m.imag.ravel()])

        amat = np.column_stack([flat(self.dx), flat(self.dy), flat(self.dz)])
        return amat, flat(self.d0)

    def is_flat(self, tol=DEGENERATE_TOL) -> bool:
        return max(frobenius(self.dx), frobenius(self.dy), frobenius(self.dz)) <= tol


@dataclass(frozen=True, eq=False)
class DetectionResult:
    distance: float
    minimizer: BlochVector
    verdict: Verdict
    residual_matrix: np.ndarray
    tol: float = EPS_FEAS
    diagnostics: dict = field(default_factory=dict)

    @property
    def correlated(self) -> bool:
        return self.verdict is Verdict.CORRELATED


def _product_final(rho_s: np.ndarray, v, alpha: float) -> np.ndarray:
    return evolve_reduced_matrix(tensor(rho_s, bloch_matrix(*v)), alpha)


def affine_decomposition(rho_s, rho_final, alpha: float) -> AffineDecomposition:
    """Split the mismatch into its constant part and its Bloch-linear parts.

    Exact because the channel is linear in the environment state.
    """
    rs = as_matrix(rho_s, dim=2)
    rp = as_matrix(rho_final, dim=2)
    base = _product_final(rs, (0.0, 0.0, 0.0), alpha)
    parts = [-(_product_final(rs, _UNIT[k], alpha) - base) for k in range(3)]
    return AffineDecomposition(rp - base, *parts)


def ball_least_squares(amat, b0, cutoff=EIG_CUTOFF):
    """Minimise ``||b0 + amat @ v||`` subject to ``|v| <= 1``.

    Rank-deficient directions (eigenvalues of A^T A below ``cutoff``) are
    dropped, which yields the minimum-norm minimiser.  On the boundary the
    multiplier ``mu >= 0`` solving ``|(G + mu I)^-1 g| = 1`` is found by
    safeguarded Newton iteration on ``1/|v(mu)| - 1``, which is concave and
    increasing in ``mu``.

    Returns ``(v, info)`` where ``info`` holds ``mu``, ``rank`` and
    ``on_boundary``.
    """
    amat = np.asarray(amat, dtype=float)
    b0 = np.asarray(b0, dtype=float)
    gram = amat.T @ amat
    rhs = -amat.T @ b0
    lam, vecs = kernels.jacobi_eigh(gram.astype(np.complex128))
    vecs = vecs.real
    keep = lam > cutoff * max(1.0, float(lam[-1]))
    lam = lam[keep]
    vecs = vecs[:, keep]
    beta = vecs.T @ rhs
    info = {"mu": 0.0, "rank": int(keep.sum()), "on_boundary": False}
    if lam.size == 0:
        return np.zeros(3), info

    def coeffs(mu):
        return beta / (lam + mu)

    c = coeffs(0.0)
    if np.linalg.norm(c) <= 1.0:
        return vecs @ c, info

    lo, hi = 0.0, float(np.linalg.norm(beta))
    mu = 0.0
    for _ in range(200):
        c = coeffs(mu)
        nrm = float(np.linalg.norm(c))
        if abs(nrm - 1.0) <= 4e-16:
            break
        if nrm > 1.0:
            lo = mu
        else:
            hi = mu
        dphi = float(np.sum(beta**2 / (lam + mu) ** 3)) / nrm**3
        step = (1.0 / nrm - 1.0) / dphi
        nxt = mu - step
        if not (lo < nxt < hi):
            nxt = 0.5 * (lo + hi)
        if nxt == mu:
            break
        mu = nxt
    c = coeffs(mu)
    v = vecs @ c
    v /= max(1.0, float(np.linalg.norm(v)))
    info.update(mu=mu, on_boundary=True)
    return v, info


def witness_distance(rho_s, rho_final, alpha: float, tol: float = EPS_FEAS) -> DetectionResult:
    """Smallest Frobenius mismatch over all physical product environments."""
    dec = affine_decomposition(rho_s, rho_final, alpha)
    amat, b0 = dec.real_system()
    v, info = ball_least_squares(amat, b0)
    residual = dec.at(v)
    dist = frobenius(residual)
    if dist > tol:
        verdict = Verdict.CORRELATED
    elif dec.is_flat():
        verdict = Verdict.DEGENERATE
    else:
        verdict = Verdict.CONSISTENT
    info["alpha"] = float(alpha)
    return DetectionResult(dist, BlochVector.from_array(v), verdict, residual, tol, info)


def detect(rho_se, alpha: float, tol: float = EPS_FEAS) -> DetectionResult:
    if not isinstance(rho_se, DensityMatrix):
        rho_se = DensityMatrix(rho_se)
    rho_s = partial_trace_env(rho_se.mat)
    rho_final = evolve_reduced_matrix(rho_se.mat, alpha)
    return witness_distance(rho_s, rho_final, alpha, tol)


def family_states(f: StateFamily, alpha: float):
    """(rho_S, rho'_S) of a family, via the generic partial-trace path."""
    rho = build_state(f).mat
    return partial_trace_env(rho), evolve_reduced_matrix(rho, alpha)


def grid_oracle_distance(rho_s, rho_final, alpha: float, spacing: float = 0.02):
    """Exhaustive search over a cubic grid of Bloch-ball points.

    Independent of :func:`ball_least_squares`; returns ``(distance, v)``.
    """
    amat, b0 = affine_decomposition(rho_s, rho_final, alpha).real_system()
    return kernels.grid_min(amat, b0, spacing)


# -- closed forms for the families ------------------------------------------

def z_relation(f: StateFamily, alpha: float):
    """Environment z (with x = y = 0) making D vanish, or None where singular."""
    s2 = math.sin(2 * alpha)
    if abs(s2) < SINGULAR_TOL:
        return None
    if f.kind is Kind.MAX_ENTANGLED:
        return -2 * math.sin(4 * alpha) / (math.cos(4 * alpha) - 1)
    cot2 = math.cos(2 * alpha) / s2
    if f.kind is Kind.PURE_MIXED:
        return 2 * cot2 - f.p * (2 * cot2 + 1)
    return -2 * (-1 + f.p) * cot2


@dataclass(frozen=True)
class AlphaInterval:
    """Closed interval [lo, hi] repeated with ``period``; ``punctures`` are
    excluded values given modulo the period."""

    lo: float
    hi: float
    period: float = PERIOD
    punctures: tuple = ()

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval lower end exceeds upper end")

    @property
    def empty(self) -> bool:
        return self.hi <= self.lo

    def _offset(self, alpha):
        return (float(alpha) - self.lo) % self.period

    def contains(self, alpha: float, strict: bool = True, puncture_tol: float = 1e-12) -> bool:
        if self.empty:
            return False
        t = self._offset(alpha)
        width = self.hi - self.lo
        inside = 0.0 < t < width if strict else t <= width
        if not inside:
            return False
        for q in self.punctures:
            gap = (float(alpha) - q) % self.period
            if min(gap, self.period - gap) <= puncture_tol:
                return False
        return True

    def endpoints_in(self, start: float, stop: float):
        """All interval endpoints (lo or hi shifted by periods) in [start, stop]."""
        out = []
        for base in (self.lo, self.hi):
            k = math.ceil((start - base) / self.period)
            while base + k * self.period <= stop:
                out.append(base + k * self.period)
                k += 1
        return sorted(out)


def alpha_bounds(f: StateFamily) -> AlphaInterval:
    """Alpha values at which every correlation of the family is detected."""
    lo = 0.5 * math.atan(-2.0)
    if f.kind is Kind.MAX_ENTANGLED:
        return AlphaInterval(lo, 0.5 * math.atan(2.0), PERIOD, (0.0,))
    if f.kind is Kind.PURE_MIXED:
        if f.p >= 1.0:
            return AlphaInterval(0.0, 0.0, PERIOD, (0.0, math.pi / 4))
        hi = 0.5 * math.atan(2 * (1 - f.p) / (1 + f.p))
        return AlphaInterval(lo, hi, PERIOD, (0.0, math.pi / 4))
    raise ValueError("werner-like detectability is a threshold on p; use p_threshold")


def p_threshold(alpha: float) -> float:
    """Largest p (exclusive) at which a werner-like state is still detected."""
    s2 = math.sin(2 * alpha)
    if abs(s2) < SINGULAR_TOL:
        raise ValueError(f"alpha={alpha} is singular (U proportional to identity)")
    c2 = math.cos(2 * alpha)
    if c2 == 0.0:
        return 0.0
    return min(1.0, max(0.0, 1.0 - abs(s2 / c2) / 2))


# -- scans -------------------------------------------------------------------

class ScanRow(NamedTuple):
    alpha: float
    distance: float
    x: float
    y: float
    z: float
    verdict: Verdict


def scan_alpha(f: StateFamily, alphas, tol: float = EPS_FEAS):
    alphas = list(alphas)
    if not alphas:
        raise ValueError("alpha grid is empty")
    rows = []
    for a in alphas:
        res = witness_distance(*family_states(f, a), a, tol)
        m = res.minimizer
        rows.append(ScanRow(float(a), res.distance, m.x, m.y, m.z, res.verdict))
    return rows


def fmt(v) -> str:
    if v is None:
        return ""
    out = f"{float(v):.12g}"
    return "0" if out == "-0" else out


def write_scan_csv(rows, fh) -> None:
    fh.write("alpha,distance,x,y,z,verdict\n")
    for r in rows:
        fh.write(",".join([fmt(r.alpha), fmt(r.distance), fmt(r.x), fmt(r.y), fmt(r.z), r.verdict.value]) + "\n")
