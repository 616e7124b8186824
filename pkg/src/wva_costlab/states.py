"""Exact complex linear algebra for the qubit-system / qubit-meter model.

Provides normalized state vectors, Hermitian observables, unitaries, density
matrices, Bloch-sphere geometry and a small deterministic Hermitian
eigensolver. Only dimensions 2 (single qubit) and 4 (system plus meter) are
supported; the product space is ordered system-major, meter-minor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import (
    ContractViolationError,
    ModelDimensionError,
    NumericalFailureError,
)

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10
EIGENVALUE_FLOOR = -1e-10
BLOCH_UNIT_TOL = 1e-10

_VALID_DIMS = (2, 4)


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=complex, copy=True)
    out.setflags(write=False)
    return out


def _check_dim(dim: int, where: str) -> None:
    if dim not in _VALID_DIMS:
        raise ModelDimensionError(
            f"{where}: dimension {dim} outside the 2-qubit model (expected 2 or 4)"
        )


@dataclass(frozen=True)
class Ket:
    """Unit-norm complex state vector of dimension 2 or 4.

    The constructor normalizes its input; a vector of near-zero norm is
    rejected. Amplitudes are stored read-only.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        vec = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        _check_dim(vec.size, "Ket")
        norm = float(np.linalg.norm(vec))
        if norm < 1e-12:
            raise ContractViolationError("Ket: cannot normalize a null vector")
        object.__setattr__(self, "amplitudes", _readonly(vec / norm))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def inner(self, other: "Ket") -> complex:
        """Return the inner product <self|other>."""
        if self.dim != other.dim:
            raise ModelDimensionError("inner: dimension mismatch")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class HermitianOperator:
    """Hermitian observable on a 2- or 4-dimensional space."""

    entries: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.entries, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ContractViolationError("HermitianOperator: entries must be square")
        _check_dim(mat.shape[0], "HermitianOperator")
        if np.max(np.abs(mat - mat.conj().T)) > HERMITIAN_TOL:
            raise ContractViolationError("HermitianOperator: entries are not Hermitian")
        object.__setattr__(self, "entries", _readonly(mat))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def apply(self, psi: Ket) -> np.ndarray:
        """Return the raw (unnormalized) vector of the operator acting on a ket."""
        if self.dim != psi.dim:
            raise ModelDimensionError("apply: dimension mismatch")
        return self.entries @ psi.amplitudes

    def expectation(self, state: Union[Ket, "DensityMatrix"]) -> float:
        if isinstance(state, Ket):
            val = np.vdot(state.amplitudes, self.entries @ state.amplitudes)
        else:
            val = np.trace(state.entries @ self.entries)
        return float(np.real(val))


@dataclass(frozen=True)
class UnitaryOperator:
    """Unitary matrix on a 2- or 4-dimensional space (U U† = I within 1e-10)."""

    entries: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.entries, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ContractViolationError("UnitaryOperator: entries must be square")
        _check_dim(mat.shape[0], "UnitaryOperator")
        ident = np.eye(mat.shape[0])
        if np.max(np.abs(mat @ mat.conj().T - ident)) > UNITARY_TOL:
            raise ContractViolationError("UnitaryOperator: entries are not unitary")
        object.__setattr__(self, "entries", _readonly(mat))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def apply(self, psi: Ket) -> Ket:
        if self.dim != psi.dim:
            raise ModelDimensionError("apply: dimension mismatch")
        return Ket(self.entries @ psi.amplitudes)


@dataclass(frozen=True)
class DensityMatrix:
    """Positive unit-trace Hermitian matrix describing a (possibly mixed) state."""

    entries: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.entries, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ContractViolationError("DensityMatrix: entries must be square")
        _check_dim(mat.shape[0], "DensityMatrix")
        if np.max(np.abs(mat - mat.conj().T)) > HERMITIAN_TOL:
            raise ContractViolationError("DensityMatrix: entries are not Hermitian")
        if abs(np.trace(mat).real - 1.0) > 1e-12 or abs(np.trace(mat).imag) > 1e-12:
            raise ContractViolationError("DensityMatrix: trace must be 1")
        if np.min(np.linalg.eigvalsh(mat)) < EIGENVALUE_FLOOR:
            raise ContractViolationError("DensityMatrix: negative eigenvalue")
        object.__setattr__(self, "entries", _readonly(mat))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_ket(cls, psi: Ket) -> "DensityMatrix":
        return cls(psi.projector())

    @classmethod
    def mixture(cls, weights: Sequence[float], kets: Sequence[Ket]) -> "DensityMatrix":
        """Return the convex mixture sum_k w_k |k><k| (weights must sum to 1)."""
        w = np.asarray(weights, dtype=float)
        if w.size != len(kets) or w.size == 0:
            raise ContractViolationError("mixture: weights and kets must match")
        if np.any(w < -1e-12) or abs(w.sum() - 1.0) > 1e-12:
            raise ContractViolationError("mixture: weights must be a distribution")
        mat = sum(wk * k.projector() for wk, k in zip(w, kets))
        return cls(mat)

    def eigensystem(self) -> tuple[np.ndarray, list[Ket]]:
        return hermitian_eigs(HermitianOperator(self.entries))


@dataclass(frozen=True)
class BlochVector:
    """Real 3-vector r with rho = (I + r.sigma)/2; norm 1 for pure states."""

    r1: float
    r2: float
    r3: float

    def __post_init__(self):
        if self.norm() > 1.0 + 1e-12:
            raise ContractViolationError("BlochVector: norm exceeds 1")

    def as_array(self) -> np.ndarray:
        return np.array([self.r1, self.r2, self.r3], dtype=float)

    def norm(self) -> float:
        return float(np.sqrt(self.r1**2 + self.r2**2 + self.r3**2))


@dataclass(frozen=True)
class ReferenceBasis:
    """Orthonormal qubit basis, the +1/-1 eigenstates of the system observable."""

    ket0: Ket
    ket1: Ket

    def __post_init__(self):
        if self.ket0.dim != 2 or self.ket1.dim != 2:
            raise ModelDimensionError("ReferenceBasis: kets must be qubits")
        if abs(self.ket0.inner(self.ket1)) > 1e-12:
            raise ContractViolationError("ReferenceBasis: kets are not orthogonal")

    @classmethod
    def standard(cls) -> "ReferenceBasis":
        return cls(Ket(np.array([1.0, 0.0])), Ket(np.array([0.0, 1.0])))

    def superposition(self, angle: float) -> Ket:
        """Return cos(angle)*ket0 + sin(angle)*ket1."""
        vec = np.cos(angle) * self.ket0.amplitudes + np.sin(angle) * self.ket1.amplitudes
        return Ket(vec)

    def sigma(self) -> HermitianOperator:
        """The observable with eigenvalue +1 on ket0 and -1 on ket1."""
        return HermitianOperator(
            self.ket0.projector() - self.ket1.projector()
        )

    def pauli_triple(self) -> tuple[HermitianOperator, HermitianOperator, HermitianOperator]:
        """Right-handed Pauli triple (s1, s2, s3) with s3 = sigma()."""
        p01 = np.outer(self.ket0.amplitudes, self.ket1.amplitudes.conj())
        s1 = HermitianOperator(p01 + p01.conj().T)
        s2 = HermitianOperator(-1j * p01 + 1j * p01.conj().T)
        return s1, s2, self.sigma()


KetOrOperator = Union[Ket, HermitianOperator]


def tensor(a: KetOrOperator, b: KetOrOperator) -> KetOrOperator:
    """Kronecker product of two qubit kets or two qubit observables.

    The composite index is ordered system-major, meter-minor: basis state
    (i, j) of the factors maps to index 2*i + j of the product.
    """
    if isinstance(a, Ket) and isinstance(b, Ket):
        if a.dim != 2 or b.dim != 2:
            raise ModelDimensionError("tensor: both kets must be qubits")
        return Ket(np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, HermitianOperator) and isinstance(b, HermitianOperator):
        if a.dim != 2 or b.dim != 2:
            raise ModelDimensionError("tensor: both operators must act on qubits")
        return HermitianOperator(np.kron(a.entries, b.entries))
    raise ContractViolationError("tensor: operands must be two kets or two observables")


def _phase_fixed(vec: np.ndarray) -> np.ndarray:
    """Rotate a global phase so the first non-negligible amplitude is real-positive."""
    for v in vec:
        if abs(v) > 1e-12:
            return vec * (v.conjugate() / abs(v))
    return vec


def hermitian_eigs(H: HermitianOperator) -> tuple[np.ndarray, list[Ket]]:
    """Eigendecomposition of a Hermitian operator with deterministic ordering.

    Returns eigenvalues in descending order together with orthonormal
    eigenvector kets. Each vector carries the global-phase convention of a
    real-positive first nonzero amplitude; degenerate eigenvalues are ordered
    lexicographically by (real, imag) of the phase-fixed amplitudes.
    """
    if not isinstance(H, HermitianOperator):
        H = HermitianOperator(np.asarray(H, dtype=complex))
    try:
        vals, vecs = np.linalg.eigh(H.entries)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalFailureError(f"hermitian_eigs: eigensolver failed: {exc}") from exc

    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    columns = [_phase_fixed(vecs[:, k]) for k in order]

    # Deterministic order inside (near-)degenerate runs.
    def lex_key(v: np.ndarray):
        return tuple(x for c in v for x in (round(c.real, 10), round(c.imag, 10)))

    i = 0
    while i < len(vals):
        j = i + 1
        while j < len(vals) and abs(vals[j] - vals[i]) <= 1e-9 * max(1.0, abs(vals[i])):
            j += 1
        if j - i > 1:
            block = sorted(columns[i:j], key=lex_key, reverse=True)
            columns[i:j] = block
        i = j

    return vals.astype(float), [Ket(c) for c in columns]


def coupling_unitary(A: HermitianOperator, M: HermitianOperator, g: float) -> UnitaryOperator:
    """Return exp(-i g A (x) M) for qubit observables A and M.

    Computed by eigendecomposition of the product generator: each eigenvalue
    is phased by exp(-i g lambda) and the projectors are reassembled.
    """
    if not isinstance(A, HermitianOperator):
        A = HermitianOperator(np.asarray(A, dtype=complex))
    if not isinstance(M, HermitianOperator):
        M = HermitianOperator(np.asarray(M, dtype=complex))
    if A.dim != 2 or M.dim != 2:
        raise ModelDimensionError("coupling_unitary: A and M must act on qubits")
    generator = tensor(A, M)
    vals, vecs = hermitian_eigs(generator)
    mat = np.zeros((4, 4), dtype=complex)
    for lam, v in zip(vals, vecs):
        mat += np.exp(-1j * g * lam) * v.projector()
    return UnitaryOperator(mat)


def bloch_of(psi: Ket, basis: ReferenceBasis) -> BlochVector:
    """Bloch vector of a qubit ket, with the third axis along the basis observable."""
    if psi.dim != 2:
        raise ModelDimensionError("bloch_of: ket must be a qubit")
    c0 = basis.ket0.inner(psi)
    c1 = basis.ket1.inner(psi)
    z = c0.conjugate() * c1
    return BlochVector(2.0 * z.real, 2.0 * z.imag, abs(c0) ** 2 - abs(c1) ** 2)


def ket_from_bloch(r: BlochVector, basis: ReferenceBasis) -> Ket:
    """Rebuild a pure qubit ket from a unit Bloch vector (inverse of bloch_of)."""
    if abs(r.norm() - 1.0) > BLOCH_UNIT_TOL:
        raise ContractViolationError("ket_from_bloch: Bloch vector must be unit norm")
    polar = np.arccos(np.clip(r.r3, -1.0, 1.0))
    azimuth = np.arctan2(r.r2, r.r1)
    vec = (
        np.cos(polar / 2.0) * basis.ket0.amplitudes
        + np.exp(1j * azimuth) * np.sin(polar / 2.0) * basis.ket1.amplitudes
    )
    return Ket(vec)


def overlap_sq(a: Ket, b: Ket) -> float:
    """Squared overlap |<a|b>|^2, clamped into [0, 1]."""
    if a.dim != b.dim:
        raise ModelDimensionError("overlap_sq: dimension mismatch")
    return float(np.clip(abs(a.inner(b)) ** 2, 0.0, 1.0))


def bloch_angle(ra: BlochVector, rb: BlochVector) -> float:
    """Angle between two unit Bloch vectors, arccos of the clamped dot product."""
    for r in (ra, rb):
        if abs(r.norm() - 1.0) > BLOCH_UNIT_TOL:
            raise ContractViolationError("bloch_angle: vectors must be unit norm")
    dot = float(np.dot(ra.as_array(), rb.as_array()))
    return float(np.arccos(np.clip(dot, -1.0, 1.0)))
