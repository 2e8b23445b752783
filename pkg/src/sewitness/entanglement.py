"""Two-qubit concurrence and entanglement of formation (Wootters)."""
import math

import numpy as np

from .kernels import jacobi_eigh
from .qcore import DensityMatrix, ValidationError, as_matrix, pauli

CLAMP_TOL = 1e-10

_YY = np.kron(pauli("Y"), pauli("Y"))


def spin_flip(rho) -> np.ndarray:
    m = as_matrix(rho, dim=4)
    return _YY @ m.conj() @ _YY


def _clamp(w):
    if np.any(w < -CLAMP_TOL):
        raise ValidationError(f"eigenvalue {w.min():.3e} below -{CLAMP_TOL:g}; corrupt input")
    return np.where(w < 0.0, 0.0, w)


def product_eigenvalues(rho) -> np.ndarray:
    """Eigenvalues of rho @ spin_flip(rho), descending.

    They coincide with those of the Hermitian sqrt(rho) rho~ sqrt(rho), which
    is what is diagonalised.
    """
    m = rho.mat if isinstance(rho, DensityMatrix) else as_matrix(rho, dim=4)
    w, v = jacobi_eigh(m)
    root = (v * np.sqrt(_clamp(w))) @ v.conj().T
    herm = root @ spin_flip(m) @ root
    return _clamp(jacobi_eigh(herm)[0])[::-1]


def concurrence(rho) -> float:
    lam = np.sqrt(product_eigenvalues(rho))
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def binary_entropy(a: float) -> float:
    if a <= 0.0 or a >= 1.0:
        return 0.0
    return -a * math.log2(a) - (1 - a) * math.log2(1 - a)


def eof_from_concurrence(c: float) -> float:
    c = min(max(float(c), 0.0), 1.0)
    return binary_entropy((1 + math.sqrt(1 - c * c)) / 2)


def eof(rho) -> float:
    return eof_from_concurrence(concurrence(rho))


def eof_curve(family_ctor, step: float = 0.005):
    """(p, eof) rows for ``family_ctor(p)`` on a p-grid over [0, 1]."""
    from .states import build_state

    n = int(round(1.0 / step))
    if n < 1 or abs(n * step - 1.0) > 1e-9:
        raise ValueError(f"step {step} does not divide [0, 1]")
    return [(k / n, eof(build_state(family_ctor(k / n)))) for k in range(n + 1)]
