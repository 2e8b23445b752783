"""Dense 2x2 / 4x4 complex linear algebra for one system qubit and one environment qubit.

Basis convention: two-qubit matrices are ordered |00>, |01>, |10>, |11> with
the *system* as the first tensor factor.  Matrices are plain ``complex128``
numpy arrays; :class:`DensityMatrix` and :class:`BlochVector` are validated,
immutable wrappers.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .kernels import jacobi_eigh

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
BLOCH_TOL = 1e-12

_PAULI = {
    "I": np.array([[1, 0], [0, 1]], dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


class ValidationError(ValueError):
    """A matrix or vector violates a physical invariant."""


def as_matrix(a, dim=None) -> np.ndarray:
    """Coerce to a square complex128 array of size 2 or 4 (or ``dim``)."""
    if isinstance(a, DensityMatrix):
        a = a.mat
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4):
        raise ValidationError(f"expected a 2x2 or 4x4 matrix, got shape {m.shape}")
    if dim is not None and m.shape[0] != dim:
        raise ValidationError(f"expected dimension {dim}, got {m.shape[0]}")
    return m


def pauli(which: str) -> np.ndarray:
    try:
        return _PAULI[which.upper()].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli operator {which!r}") from None


def eigvalsh(a) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian 2x2 (closed form) or 4x4 (Jacobi)."""
    m = as_matrix(a)
    if m.shape[0] == 2:
        tr = 0.5 * (m[0, 0].real + m[1, 1].real)
        half_gap = 0.5 * (m[0, 0].real - m[1, 1].real)
        off = 0.5 * (abs(m[0, 1]) + abs(m[1, 0]))
        rad = math.hypot(half_gap, off)
        return np.array([tr - rad, tr + rad])
    return jacobi_eigh(m)[0]


def eigh(a):
    """Ascending eigenvalues and unitary eigenvectors of a Hermitian matrix."""
    return jacobi_eigh(as_matrix(a))


def check_density(m: np.ndarray) -> None:
    """Raise :class:`ValidationError` naming the first violated invariant."""
    herm = float(np.max(np.abs(m - m.conj().T)))
    if herm > HERMITIAN_TOL:
        raise ValidationError(f"not Hermitian: max |rho - rho^H| = {herm:.3e}")
    tr = np.trace(m)
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValidationError(f"trace is {tr.real:.12g}{tr.imag:+.3g}j, expected 1")
    lam = float(eigvalsh(m)[0])
    if lam < -PSD_TOL:
        raise ValidationError(f"not positive semidefinite: min eigenvalue {lam:.3e}")


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite 2x2 or 4x4 matrix."""

    mat: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.mat).copy()
        check_density(m)
        m.flags.writeable = False
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.mat if dtype is None else self.mat.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, mat={np.array2string(self.mat, precision=6)})"


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            val = float(getattr(self, name))
            if not math.isfinite(val):
                raise ValidationError(f"Bloch component {name} is not finite")
            object.__setattr__(self, name, val)
        if self.norm_sq() > 1.0 + BLOCH_TOL:
            raise ValidationError(f"unphysical Bloch vector, |v| = {math.sqrt(self.norm_sq()):.12g} > 1")

    @classmethod
    def from_array(cls, v) -> "BlochVector":
        x, y, z = (float(c) for c in v)
        return cls(x, y, z)

    def norm_sq(self) -> float:
        return self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


def _as_bloch(v) -> BlochVector:
    return v if isinstance(v, BlochVector) else BlochVector.from_array(v)


def bloch_matrix(x: float, y: float, z: float) -> np.ndarray:
    """(I + xX + yY + zZ)/2 without any physicality check."""
    return 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]], dtype=np.complex128)


def bloch_to_density(v) -> DensityMatrix:
    b = _as_bloch(v)
    return DensityMatrix(bloch_matrix(b.x, b.y, b.z))


def density_to_bloch(rho) -> BlochVector:
    m = as_matrix(rho, dim=2)
    comps = [float(np.trace(m @ _PAULI[k]).real) for k in "XYZ"]
    return BlochVector(*comps)


def tensor(a, b) -> np.ndarray:
    """Kronecker product with ``a`` (the system) as the first factor."""
    return np.kron(as_matrix(a, dim=2), as_matrix(b, dim=2))


def partial_trace_env(rho) -> np.ndarray:
    """Trace out the second (environment) qubit of a 4x4 operator."""
    m = as_matrix(rho, dim=4)
    return np.einsum("ijkj->ik", m.reshape(2, 2, 2, 2))


def frobenius(a) -> float:
    m = np.asarray(a.mat if isinstance(a, DensityMatrix) else a)
    return float(np.sqrt(np.sum(np.abs(m) ** 2)))


def is_density(a) -> bool:
    try:
        check_density(as_matrix(a))
    except ValidationError:
        return False
    return True


# -- matrix file format: {"dim": n, "re": [[...]], "im": [[...]]} ------------

def matrix_to_json(m) -> dict:
    m = as_matrix(m)
    return {"dim": int(m.shape[0]), "re": m.real.tolist(), "im": m.imag.tolist()}


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        dim = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed matrix object: {exc}") from None
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise ValidationError(f"matrix entries do not match dim={dim}")
    return as_matrix(re + 1j * im)


def load_matrix(path) -> np.ndarray:
    with open(Path(path)) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    return matrix_from_json(obj)


def save_matrix(path, m) -> None:
    with open(Path(path), "w") as fh:
        json.dump(matrix_to_json(m), fh)
