"""Dense density-matrix core: construction, composition, reduction, entropies.

All entropies are in bits. Matrices are small (two qubits dominate), so
everything is dense numpy.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidSubsystem,
    NotAProbabilityVector,
    NotHermitian,
    NotPositive,
    NotUnitTrace,
    SupportViolation,
)

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
EIG_CLAMP = 1e-10
SUPPORT_TOL = 1e-8


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Positive semidefinite, unit-trace operator on a tensor product space.

    ``dims`` lists the subsystem dimensions; the matrix is
    ``prod(dims) x prod(dims)``.  Construction validates and freezes the data.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise DimensionMismatch(f"subsystem dimensions must be >= 2, got {dims}")
        total = int(np.prod(dims))
        if m.shape != (total, total):
            raise DimensionMismatch(f"matrix shape {m.shape} does not match dims {dims}")
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise NotHermitian("density matrix is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise NotUnitTrace(f"trace is {tr.real:.12g}, expected 1")
        m = 0.5 * (m + m.conj().T)
        lam_min = np.linalg.eigvalsh(m)[0]
        if lam_min < -EIG_CLAMP:
            raise NotPositive(f"smallest eigenvalue {lam_min:.3e} is negative")
        object.__setattr__(self, "matrix", _frozen(m))
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_bipartite(self) -> bool:
        return len(self.dims) == 2

    def eigenvalues(self) -> np.ndarray:
        """Spectrum in descending order, with round-off negatives clamped to 0."""
        lam = np.linalg.eigvalsh(self.matrix)[::-1]
        return np.where(lam < 0.0, 0.0, lam)

    def allclose(self, other: "DensityMatrix | np.ndarray", atol: float = 1e-10) -> bool:
        m = other.matrix if isinstance(other, DensityMatrix) else np.asarray(other)
        return m.shape == self.matrix.shape and bool(np.allclose(self.matrix, m, rtol=0.0, atol=atol))

    @classmethod
    def from_pure(cls, psi: "PureState | Sequence[complex]", dims: Sequence[int] | None = None) -> "DensityMatrix":
        if isinstance(psi, PureState):
            vec = psi.amplitudes
        else:
            vec = np.asarray(psi, dtype=complex)
            vec = vec / np.linalg.norm(vec)
        if dims is None:
            dims = (vec.size,)
        return cls(np.outer(vec, vec.conj()), tuple(dims))

    @classmethod
    def maximally_mixed(cls, dims: Sequence[int]) -> "DensityMatrix":
        d = int(np.prod(dims))
        return cls(np.eye(d) / d, tuple(dims))


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex).ravel()
        if abs(np.linalg.norm(a) - 1.0) > 1e-12:
            raise NotUnitTrace("pure state amplitudes must have unit norm")
        object.__setattr__(self, "amplitudes", _frozen(a))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def density(self, dims: Sequence[int] | None = None) -> DensityMatrix:
        return DensityMatrix.from_pure(self, dims)


def basis_ket(index: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def tensor_product(*states: DensityMatrix) -> DensityMatrix:
    """Kronecker product; subsystem dimension lists are concatenated."""
    if not states:
        raise ValueError("tensor_product needs at least one state")
    matrix = reduce(np.kron, (s.matrix for s in states))
    dims = tuple(d for s in states for d in s.dims)
    return DensityMatrix(matrix, dims)


def _reduce(matrix: np.ndarray, dims: tuple[int, ...], keep: tuple[int, ...]) -> np.ndarray:
    n = len(dims)
    t = matrix.reshape(dims + dims)
    # trace out from the highest index so earlier axis numbers stay valid
    for k in sorted(set(range(n)) - set(keep), reverse=True):
        t = np.trace(t, axis1=k, axis2=k + t.ndim // 2)
    d = int(np.prod([dims[k] for k in keep]))
    return t.reshape(d, d)


def partial_trace(rho: DensityMatrix, keep: int | Iterable[int]) -> DensityMatrix:
    """Reduced state on the subsystems listed in ``keep`` (0-based, order kept sorted)."""
    keep = (keep,) if isinstance(keep, (int, np.integer)) else tuple(keep)
    if not keep:
        raise InvalidSubsystem("keep must name at least one subsystem")
    for k in keep:
        if not 0 <= k < len(rho.dims):
            raise InvalidSubsystem(f"subsystem {k} does not exist for dims {rho.dims}")
    keep = tuple(sorted(set(keep)))
    reduced = _reduce(np.asarray(rho.matrix), rho.dims, keep)
    return DensityMatrix(reduced, tuple(rho.dims[k] for k in keep))


def eig_hermitian(m: np.ndarray | DensityMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues sorted in
    descending order and eigenvectors stored as columns.
    """
    m = m.matrix if isinstance(m, DensityMatrix) else np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
        raise NotHermitian("matrix is not Hermitian")
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return w[::-1].copy(), v[:, ::-1].copy()


def _entropy_of_spectrum(lam: np.ndarray) -> float:
    lam = np.asarray(lam, dtype=float)
    lam = lam[lam > 0.0]
    h = float(-np.sum(lam * np.log2(lam)))
    return h if h > 0.0 else 0.0


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -Tr rho log2 rho, with 0 log 0 = 0."""
    return _entropy_of_spectrum(rho.eigenvalues())


def shannon_entropy(p: Sequence[float] | np.ndarray) -> float:
    p = np.asarray(p, dtype=float).ravel()
    if p.size == 0:
        raise NotAProbabilityVector("empty probability vector")
    if np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-9:
        raise NotAProbabilityVector(f"not a probability vector: {p}")
    return _entropy_of_spectrum(np.clip(p, 0.0, None))


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """S(rho || sigma) = Tr rho log2 rho - Tr rho log2 sigma, in bits.

    Raises SupportViolation when rho has weight outside the support of sigma,
    i.e. when the relative entropy is infinite.
    """
    if rho.dims != sigma.dims:
        raise DimensionMismatch(f"dims differ: {rho.dims} vs {sigma.dims}")
    r_val, r_vec = eig_hermitian(rho.matrix)
    s_val, s_vec = eig_hermitian(sigma.matrix)
    kernel = s_vec[:, s_val <= EIG_CLAMP]
    if kernel.shape[1]:
        occupied = r_vec[:, r_val > EIG_CLAMP]
        leak = np.linalg.norm(kernel.conj().T @ occupied, axis=0)
        if leak.size and leak.max() > SUPPORT_TOL:
            raise SupportViolation("support of rho is not contained in support of sigma")
    support = s_val > EIG_CLAMP
    # <s_k| rho |s_k> for each eigenvector of sigma
    weights = np.real(np.einsum("ik,ij,jk->k", s_vec.conj(), rho.matrix, s_vec))
    cross = float(np.sum(weights[support] * np.log2(s_val[support])))
    value = -von_neumann_entropy(rho) - cross
    if -1e-9 <= value < 0.0:
        return 0.0
    return value
