"""The three correlated joint-state families and their closed-form reduced states.

All closed forms follow from the literal exchange unitary with the system as
the first tensor factor.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .qcore import DensityMatrix


class Kind(enum.Enum):
    MAX_ENTANGLED = "max-entangled"
    PURE_MIXED = "pure-mixed"
    WERNER_LIKE = "werner-like"


@dataclass(frozen=True)
class StateFamily:
    kind: Kind
    p: float = 0.0

    def __post_init__(self):
        kind = Kind(self.kind) if not isinstance(self.kind, Kind) else self.kind
        object.__setattr__(self, "kind", kind)
        p = float(self.p)
        if not (0.0 <= p <= 1.0):
            raise ValueError(f"mixing parameter p={p} outside [0, 1]")
        object.__setattr__(self, "p", 0.0 if kind is Kind.MAX_ENTANGLED else p)

    @classmethod
    def parse(cls, name: str, p: float = 0.0) -> "StateFamily":
        try:
            kind = Kind(name)
        except ValueError:
            choices = ", ".join(k.value for k in Kind)
            raise ValueError(f"unknown family {name!r} (choose from {choices})") from None
        return cls(kind, p)

    def __str__(self):
        if self.kind is Kind.MAX_ENTANGLED:
            return self.kind.value
        return f"{self.kind.value}(p={self.p:g})"


def max_entangled():
    return StateFamily(Kind.MAX_ENTANGLED)


def pure_mixed(p):
    return StateFamily(Kind.PURE_MIXED, p)


def werner_like(p):
    return StateFamily(Kind.WERNER_LIKE, p)


def psi_ket() -> np.ndarray:
    """(|01> + i|10>)/sqrt(2)."""
    return np.array([0, 1, 1j, 0], dtype=np.complex128) / math.sqrt(2)


def _psi_projector():
    k = psi_ket()
    return np.outer(k, k.conj())


def build_state(f: StateFamily) -> DensityMatrix:
    psi = _psi_projector()
    if f.kind is Kind.MAX_ENTANGLED:
        return DensityMatrix(psi)
    if f.kind is Kind.PURE_MIXED:
        ket01 = np.zeros((4, 4), dtype=np.complex128)
        ket01[1, 1] = 1.0
        return DensityMatrix(f.p * ket01 + (1 - f.p) * psi)
    return DensityMatrix(f.p * np.eye(4) / 4 + (1 - f.p) * psi)


def analytic_reduced_initial(f: StateFamily) -> DensityMatrix:
    if f.kind is Kind.PURE_MIXED:
        return DensityMatrix(np.diag([f.p + (1 - f.p) / 2, (1 - f.p) / 2]).astype(np.complex128))
    return DensityMatrix(np.eye(2, dtype=np.complex128) / 2)


def analytic_reduced_final(f: StateFamily, alpha: float) -> DensityMatrix:
    s4 = math.sin(4 * alpha)
    c4 = math.cos(4 * alpha)
    if f.kind is Kind.MAX_ENTANGLED:
        top = 0.5 * (1 + s4)
    elif f.kind is Kind.PURE_MIXED:
        top = 0.5 * (1 + f.p * c4 + (1 - f.p) * s4)
    else:
        top = 0.5 * (1 + (1 - f.p) * s4)
    return DensityMatrix(np.diag([top, 1 - top]).astype(np.complex128))
