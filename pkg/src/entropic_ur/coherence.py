"""Relative entropy of coherence and its unilateral (A-side) version."""

from __future__ import annotations

import numpy as np

from .correlations import conditional_entropy
from .errors import DimensionMismatch
from .measurement import OrthonormalBasis, dephase_A, measure_on_A
from .qmat import DensityMatrix, partial_trace, shannon_entropy, von_neumann_entropy


def relative_entropy_of_coherence(rho: DensityMatrix, basis: OrthonormalBasis) -> float:
    """C_r(rho) = S(Delta(rho)) - S(rho) with Delta the dephasing in ``basis``."""
    if basis.dim != rho.dim:
        raise DimensionMismatch(f"basis dim {basis.dim} != state dim {rho.dim}")
    diag = np.real(np.einsum("ki,ij,kj->k", basis.vectors.conj(), rho.matrix, basis.vectors))
    value = shannon_entropy(np.clip(diag, 0.0, None)) - von_neumann_entropy(rho)
    return value if value > 0.0 else 0.0


def unilateral_coherence(rho_AB: DensityMatrix, basis_A: OrthonormalBasis) -> float:
    """C_r^{B|A} = S(Delta_A(rho_AB)) - S(rho_AB)."""
    value = von_neumann_entropy(dephase_A(rho_AB, basis_A)) - von_neumann_entropy(rho_AB)
    return value if value > 0.0 else 0.0


def conditional_measured_entropy(rho_AB: DensityMatrix, basis_A: OrthonormalBasis) -> float:
    """H(Q|B) from the outcome ensemble: H(p) + sum_i p_i S(rho_B|i) - S(rho_B)."""
    outcome = measure_on_A(rho_AB, basis_A)
    avg = sum(
        p * von_neumann_entropy(state)
        for p, state in zip(outcome.probabilities, outcome.conditional_states)
        if state is not None
    )
    return float(shannon_entropy(outcome.probabilities) + avg - von_neumann_entropy(partial_trace(rho_AB, 1)))


def coherence_via_tradeoff(rho_AB: DensityMatrix, basis_A: OrthonormalBasis) -> float:
    """H(Q|B) - S(A|B); a second route to :func:`unilateral_coherence`.

    H(Q|B) is assembled from the measurement ensemble rather than from the
    dephased 4x4 state, so agreement of the two routes is a real check.
    """
    return conditional_measured_entropy(rho_AB, basis_A) - conditional_entropy(rho_AB)
