"""Measurement bases, overlap functionals and local measurement channels on A."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidBasis, NeedAtLeastTwoBases, NotBipartite
from .qmat import DensityMatrix, _frozen

ORTHO_TOL = 1e-10
ZERO_PROB = 1e-12


@dataclass(frozen=True, eq=False)
class OrthonormalBasis:
    """Ordered orthonormal basis; ``vectors[i]`` is the i-th basis ket."""

    vectors: np.ndarray
    label: str = ""

    def __post_init__(self):
        v = np.atleast_2d(np.asarray(self.vectors, dtype=complex))
        if v.shape[0] != v.shape[1]:
            raise InvalidBasis(f"need exactly dim vectors of length dim, got shape {v.shape}")
        gram = v.conj() @ v.T
        if np.max(np.abs(gram - np.eye(v.shape[0]))) > ORTHO_TOL:
            raise InvalidBasis(f"basis {self.label!r} is not orthonormal")
        object.__setattr__(self, "vectors", _frozen(v))

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def projectors(self) -> np.ndarray:
        return np.einsum("ki,kj->kij", self.vectors, self.vectors.conj())

    def __len__(self):
        return self.dim


@dataclass(frozen=True, eq=False)
class MeasurementOutcome:
    """Result of measuring A in a basis.

    ``conditional_states[i]`` is None when outcome i has probability <= 1e-12.
    """

    probabilities: np.ndarray
    conditional_states: tuple[DensityMatrix | None, ...]
    post_state: DensityMatrix


_S2 = 1.0 / math.sqrt(2.0)
_PAULI = {
    "X": [[_S2, _S2], [-_S2, _S2]],
    "Y": [[1j * _S2, _S2], [-1j * _S2, _S2]],
    "Z": [[0.0, 1.0], [1.0, 0.0]],
}


def pauli_basis(which: str) -> OrthonormalBasis:
    """Eigenbasis of sigma_x, sigma_y or sigma_z, in the listed vector order.

    Note the Z ordering: the first vector is (0, 1), the second (1, 0).
    """
    key = which.upper()
    if key not in _PAULI:
        raise InvalidBasis(f"unknown Pauli basis {which!r}; expected X, Y or Z")
    return OrthonormalBasis(np.array(_PAULI[key], dtype=complex), label=key)


def computational_basis(dim: int) -> OrthonormalBasis:
    return OrthonormalBasis(np.eye(dim, dtype=complex), label="computational")


def load_basis(path: str | Path) -> OrthonormalBasis:
    """Read a basis from JSON: a list of vectors, each a list of ``[re, im]`` pairs."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
        vectors = np.array([[complex(re, im) for re, im in vec] for vec in raw], dtype=complex)
    except (OSError, ValueError, TypeError) as exc:
        raise InvalidBasis(f"cannot read basis from {path}: {exc}") from exc
    return OrthonormalBasis(vectors, label=path.stem)


def parse_basis(label: str) -> OrthonormalBasis:
    if label.startswith("custom:"):
        return load_basis(label[len("custom:"):])
    return pauli_basis(label)


def _check_same_dim(bases: Sequence[OrthonormalBasis]) -> int:
    dims = {b.dim for b in bases}
    if len(dims) != 1:
        raise DimensionMismatch(f"bases have different dimensions: {sorted(dims)}")
    return dims.pop()


def overlap_matrix(b1: OrthonormalBasis, b2: OrthonormalBasis) -> np.ndarray:
    """c[i, j] = |<b1_i|b2_j>|^2.

    Divided by the stored squared norms so that rounding in the vector entries
    (1/sqrt 2 is not representable) cancels and e.g. X/Z overlaps are exactly 1/2.
    """
    _check_same_dim((b1, b2))
    inner = b1.vectors.conj() @ b2.vectors.T
    n1 = np.sum(np.abs(b1.vectors) ** 2, axis=1)
    n2 = np.sum(np.abs(b2.vectors) ** 2, axis=1)
    return (inner.real**2 + inner.imag**2) / np.outer(n1, n2)


def incompatibility(b1: OrthonormalBasis, b2: OrthonormalBasis) -> float:
    """q_MU = log2(1 / max_ij c_ij)."""
    c = overlap_matrix(b1, b2).max()
    q = -math.log2(c)
    return q if q > 0.0 else 0.0


def _chain(bases: Sequence[OrthonormalBasis]) -> list[np.ndarray]:
    if len(bases) < 2:
        raise NeedAtLeastTwoBases(f"need at least two bases, got {len(bases)}")
    _check_same_dim(bases)
    return [overlap_matrix(bases[m], bases[m + 1]) for m in range(len(bases) - 1)]


def _chain_weights(overlaps: list[np.ndarray]) -> np.ndarray:
    """w[i_N] = sum over i_2..i_{N-1} of max_{i_1} prod_m c^m[i_m, i_{m+1}].

    Exhaustive enumeration over the middle indices; dims and N are tiny.
    """
    d = overlaps[0].shape[0]
    first_max = overlaps[0].max(axis=0)  # max over i_1, indexed by i_2
    n_middle = len(overlaps) - 1  # indices i_2 .. i_{N-1}
    w = np.zeros(d)
    for i_last in range(d):
        total = 0.0
        for middle in itertools.product(range(d), repeat=n_middle):
            idx = middle + (i_last,)  # i_2 .. i_N
            term = first_max[idx[0]]
            for m in range(1, len(overlaps)):
                term *= overlaps[m][idx[m - 1], idx[m]]
            total += term
        w[i_last] = total
    return w


def liu_b(bases: Sequence[OrthonormalBasis]) -> float:
    """Multi-measurement overlap b; for two bases this is max_ij c_ij."""
    return float(_chain_weights(_chain(bases)).max())


def _outcome_probabilities_A(rho_AB: DensityMatrix, basis: OrthonormalBasis) -> np.ndarray:
    _check_A(rho_AB, basis)
    d_a = rho_AB.dims[0]
    rho_a = np.trace(np.asarray(rho_AB.matrix).reshape(rho_AB.dims + rho_AB.dims), axis1=1, axis2=3)
    p = np.real(np.einsum("ki,ij,kj->k", basis.vectors.conj(), rho_a.reshape(d_a, d_a), basis.vectors))
    return np.clip(p, 0.0, None)


def zhang_ell(bases: Sequence[OrthonormalBasis], rho_AB: DensityMatrix) -> float:
    """State-dependent functional for one ordering of the bases.

    The inner sum runs over i_2 .. i_{N-1}; i_N is bound by the outer sum and
    weighted by the outcome probability of the last basis measured on A.
    (A literal reading would also sum over i_N inside the logarithm.)
    """
    w = _chain_weights(_chain(bases))
    p = _outcome_probabilities_A(rho_AB, bases[-1])
    mask = p > 0.0
    value = float(-np.sum(p[mask] * np.log2(w[mask])))
    return value if value > 0.0 else 0.0


def zhang_ell_max(bases: Sequence[OrthonormalBasis], rho_AB: DensityMatrix) -> float:
    """Maximum of :func:`zhang_ell` over all orderings of ``bases``."""
    return max(zhang_ell(list(order), rho_AB) for order in itertools.permutations(bases))


def _check_A(rho_AB: DensityMatrix, basis: OrthonormalBasis) -> None:
    if not rho_AB.is_bipartite:
        raise NotBipartite(f"expected a bipartite state, got dims {rho_AB.dims}")
    if basis.dim != rho_AB.dims[0]:
        raise DimensionMismatch(f"basis dim {basis.dim} != dim(A) {rho_AB.dims[0]}")


def _branches(rho_AB: DensityMatrix, basis: OrthonormalBasis) -> np.ndarray:
    """Unnormalised memory states Tr_A[(P_i x I) rho (P_i x I)], shape (dA, dB, dB)."""
    _check_A(rho_AB, basis)
    r = np.asarray(rho_AB.matrix).reshape(rho_AB.dims + rho_AB.dims)
    u = basis.vectors
    return np.einsum("ka,ajbl,kb->kjl", u.conj(), r, u)


def measure_on_A(rho_AB: DensityMatrix, basis: OrthonormalBasis) -> MeasurementOutcome:
    branches = _branches(rho_AB, basis)
    p = np.real(np.einsum("kjj->k", branches))
    p = np.clip(p, 0.0, None)
    d_b = rho_AB.dims[1]
    conditional = []
    post = np.zeros_like(rho_AB.matrix)
    for k, u in enumerate(basis.vectors):
        post += np.kron(np.outer(u, u.conj()), branches[k])
        if p[k] > ZERO_PROB:
            conditional.append(DensityMatrix(branches[k] / np.trace(branches[k]), (d_b,)))
        else:
            conditional.append(None)
    return MeasurementOutcome(
        probabilities=p / p.sum(),
        conditional_states=tuple(conditional),
        post_state=DensityMatrix(post, rho_AB.dims),
    )


def dephase_A(rho_AB: DensityMatrix, basis: OrthonormalBasis) -> DensityMatrix:
    """Sum_i (P_i x I) rho (P_i x I) with P_i the projectors of ``basis``."""
    _check_A(rho_AB, basis)
    d_b = rho_AB.dims[1]
    eye_b = np.eye(d_b)
    out = np.zeros_like(rho_AB.matrix)
    for proj in basis.projectors():
        big = np.kron(proj, eye_b)
        out += big @ rho_AB.matrix @ big
    return DensityMatrix(out, rho_AB.dims)


def sample_a_incoherent(
    dims: tuple[int, int],
    seed: int,
    basis: OrthonormalBasis | None = None,
    weights: Sequence[float] | None = None,
) -> DensityMatrix:
    """Random state sum_i p_i |i><i|_A x sigma_{B|i}.

    ``p`` is drawn from a flat Dirichlet and each sigma_{B|i} is a Ginibre
    state, all from ``numpy.random.Generator(PCG64(seed))``.  ``basis`` picks
    the incoherent basis on A (computational by default); ``weights`` pins p.
    """
    from .states import _ginibre_matrix

    d_a, d_b = dims
    if d_a < 2 or d_b < 2:
        raise DimensionMismatch(f"dims must be >= 2, got {dims}")
    rng = np.random.Generator(np.random.PCG64(seed))
    if basis is None:
        basis = computational_basis(d_a)
    elif basis.dim != d_a:
        raise DimensionMismatch(f"basis dim {basis.dim} != dA {d_a}")
    p = rng.dirichlet(np.ones(d_a)) if weights is None else np.asarray(weights, dtype=float)
    if p.shape != (d_a,) or np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
        raise InvalidBasis(f"weights must be a probability vector of length {d_a}")
    out = np.zeros((d_a * d_b, d_a * d_b), dtype=complex)
    for k, u in enumerate(basis.vectors):
        sigma = _ginibre_matrix(d_b, rng)
        if p[k] > 0.0:
            out += p[k] * np.kron(np.outer(u, u.conj()), sigma)
    return DensityMatrix(out, (d_a, d_b))
