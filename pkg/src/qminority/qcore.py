"""Dense complex matrix helpers and N-qubit density matrices.

Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of a
computational basis index.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
UNITARY_TOL = 1e-10

I2 = np.eye(2, dtype=np.complex128)
SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)


def as_matrix(rows) -> np.ndarray:
    """Build a square complex matrix, rejecting ragged or non-square input."""
    if isinstance(rows, np.ndarray):
        arr = rows.astype(np.complex128)
    else:
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("rows must be non-empty and of equal length")
        arr = np.array(rows, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {arr.shape}")
    return arr


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(ops: Sequence[np.ndarray]) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.complex128)
    for op in ops:
        out = np.kron(out, op)
    return out


def embed_single_qubit(op: np.ndarray, k: int, n: int) -> np.ndarray:
    """Return ``I^(k) (x) op (x) I^(n-k-1)``."""
    op = as_matrix(op)
    if op.shape != (2, 2):
        raise ValueError("op must be 2x2")
    if not 0 <= k < n:
        raise IndexError(f"qubit index {k} out of range for {n} qubits")
    return kron_all([I2] * k + [op] + [I2] * (n - k - 1))


def unitarity_error(u: np.ndarray) -> float:
    u = np.asarray(u)
    return float(np.abs(u @ u.conj().T - np.eye(u.shape[0])).max())


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    return unitarity_error(u) < tol


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Game state on ``n_qubits`` qubits.

    Construction only checks the shape; use :func:`validate_density` for the
    physical invariants so that broken states can still be inspected.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix).copy()
        dim = m.shape[0]
        if dim & (dim - 1):
            raise ValueError(f"dimension {dim} is not a power of two")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    @classmethod
    def from_ket(cls, ket) -> "DensityMatrix":
        ket = np.asarray(ket, dtype=np.complex128).ravel()
        return cls(np.outer(ket, ket.conj()))

    @classmethod
    def basis(cls, index: int, n: int) -> "DensityMatrix":
        m = np.zeros((2**n, 2**n), dtype=np.complex128)
        m[index, index] = 1.0
        return cls(m)

    @classmethod
    def from_bits(cls, bits: str) -> "DensityMatrix":
        return cls.basis(int(bits, 2), len(bits))

    @classmethod
    def maximally_mixed(cls, n: int) -> "DensityMatrix":
        return cls(np.eye(2**n, dtype=np.complex128) / 2**n)


@dataclass(frozen=True)
class StateVector:
    """Pure state helper, used only to cross-check the noiseless pipeline."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=np.complex128).ravel().copy()
        if a.size < 2 or a.size & (a.size - 1):
            raise ValueError("amplitude count must be a power of two >= 2")
        norm = float(np.vdot(a, a).real)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state is not normalised (norm^2 = {norm})")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @property
    def n_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    @classmethod
    def zero(cls, n: int) -> "StateVector":
        a = np.zeros(2**n, dtype=np.complex128)
        a[0] = 1.0
        return cls(a)

    def evolve(self, u: np.ndarray) -> "StateVector":
        return StateVector(np.asarray(u) @ self.amplitudes)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def conjugate_by(rho: DensityMatrix, u: np.ndarray) -> DensityMatrix:
    u = as_matrix(u)
    if u.shape != rho.matrix.shape:
        raise ValueError(f"operator shape {u.shape} does not match state {rho.matrix.shape}")
    err = unitarity_error(u)
    if err >= UNITARY_TOL:
        raise ValueError(f"operator is not unitary (max |UU^dag - I| = {err:.3g})")
    return DensityMatrix(u @ rho.matrix @ u.conj().T)


def computational_probabilities(rho: DensityMatrix) -> np.ndarray:
    return np.real(np.diag(rho.matrix)).copy()


@dataclass(frozen=True)
class DensityReport:
    hermiticity_error: float
    trace_error: float
    min_eigenvalue: float

    @property
    def hermitian(self) -> bool:
        return self.hermiticity_error <= HERMITIAN_TOL

    @property
    def unit_trace(self) -> bool:
        return self.trace_error <= TRACE_TOL

    @property
    def positive(self) -> bool:
        return self.min_eigenvalue >= -PSD_TOL

    @property
    def ok(self) -> bool:
        return self.hermitian and self.unit_trace and self.positive

    def problems(self) -> list[str]:
        out = []
        if not self.hermitian:
            out.append(f"hermiticity error {self.hermiticity_error:.3g}")
        if not self.unit_trace:
            out.append(f"trace error {self.trace_error:.3g}")
        if not self.positive:
            out.append(f"minimum eigenvalue {self.min_eigenvalue:.3g}")
        return out


class InvalidStateError(ValueError):
    """A computed state violates the density-matrix invariants."""


def require_valid(rho: DensityMatrix) -> DensityMatrix:
    report = validate_density(rho)
    if not report.ok:
        raise InvalidStateError("invalid density matrix: " + ", ".join(report.problems()))
    return rho


def validate_density(rho: DensityMatrix | np.ndarray) -> DensityReport:
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=np.complex128)
    herm = float(np.abs(m - m.conj().T).max())
    trace_err = float(abs(np.trace(m) - 1.0))
    # LAPACK heevd on the Hermitian part; accurate to ~dim * eps * ||m||
    eigs = np.linalg.eigvalsh((m + m.conj().T) / 2)
    return DensityReport(herm, trace_err, float(eigs[0]))


def apply_local(m: np.ndarray, op: np.ndarray, k: int, n: int) -> np.ndarray:
    """Return ``A m A^dag`` where ``A`` acts as ``op`` on qubit ``k`` only.

    Works on the (2,)*2n tensor view so no 2^n x 2^n operator is formed.
    """
    t = np.asarray(m).reshape((2,) * (2 * n))
    t = np.moveaxis(np.tensordot(op, t, axes=([1], [k])), 0, k)
    t = np.moveaxis(np.tensordot(t, np.conj(op), axes=([n + k], [1])), -1, n + k)
    return t.reshape(2**n, 2**n)


def apply_product(m: np.ndarray, ops: Sequence[np.ndarray]) -> np.ndarray:
    """Conjugate ``m`` by ``ops[0] (x) ... (x) ops[n-1]``."""
    n = len(ops)
    for k, op in enumerate(ops):
        m = apply_local(m, op, k, n)
    return m
