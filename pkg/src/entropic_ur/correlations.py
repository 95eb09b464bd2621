"""Bipartite correlation functionals: S(A|B), I(A:B), Holevo quantity,
classical correlation J_A, discord D_A and the delta correction.

J_A maximises the Holevo quantity over rank-1 projective measurements on a
qubit A, parameterised by Bloch angles.  The search is a fixed 64x64 angle
grid followed by Nelder-Mead refinement from the three best grid points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import InternalConsistencyError, NotBipartite, UnsupportedDimension
from .measurement import ZERO_PROB, OrthonormalBasis, measure_on_A
from .qmat import DensityMatrix, partial_trace, von_neumann_entropy

GRID_SIZE = 64
N_STARTS = 3
SIMPLEX_TOL = 1e-8
MAX_ITER = 500
DISCORD_TOL = 1e-8


@dataclass(frozen=True)
class BlochAngles:
    theta: float
    phi: float

    @classmethod
    def wrapped(cls, theta: float, phi: float) -> "BlochAngles":
        """Map arbitrary angles onto theta in [0, pi], phi in [0, 2 pi) (same projector pair)."""
        theta = math.fmod(theta, 2 * math.pi)
        if theta < 0:
            theta += 2 * math.pi
        if theta > math.pi:
            theta = 2 * math.pi - theta
            phi += math.pi
        phi = math.fmod(phi, 2 * math.pi)
        if phi < 0:
            phi += 2 * math.pi
        return cls(theta, phi)

    def basis(self) -> OrthonormalBasis:
        return OrthonormalBasis(_bloch_vectors(np.array([self.theta]), np.array([self.phi]))[0], label="bloch")


@dataclass(frozen=True)
class OptimizationReport:
    """Audit trail of the J_A search.

    ``best_value`` and ``grid_best`` are minimised post-measurement
    conditional entropies sum_i p_i S(rho_B|i), in bits.
    """

    best_value: float
    best_angles: BlochAngles
    grid_best: float
    refinement_iterations: int
    converged: bool


def _require_bipartite(rho_AB: DensityMatrix) -> None:
    if not rho_AB.is_bipartite:
        raise NotBipartite(f"expected a bipartite state, got dims {rho_AB.dims}")


def conditional_entropy(rho_AB: DensityMatrix) -> float:
    """S(A|B) = S(AB) - S(B); negative for some entangled states."""
    _require_bipartite(rho_AB)
    return von_neumann_entropy(rho_AB) - von_neumann_entropy(partial_trace(rho_AB, 1))


def mutual_information(rho_AB: DensityMatrix) -> float:
    _require_bipartite(rho_AB)
    s_a = von_neumann_entropy(partial_trace(rho_AB, 0))
    s_b = von_neumann_entropy(partial_trace(rho_AB, 1))
    value = s_a + s_b - von_neumann_entropy(rho_AB)
    return value if value > 0.0 else 0.0


def holevo(rho_AB: DensityMatrix, basis: OrthonormalBasis) -> float:
    """I(M:B) = S(rho_B) - sum_i p_i S(rho_B|i) for a measurement of A in ``basis``."""
    outcome = measure_on_A(rho_AB, basis)
    s_b = von_neumann_entropy(partial_trace(rho_AB, 1))
    avg = sum(
        p * von_neumann_entropy(state)
        for p, state in zip(outcome.probabilities, outcome.conditional_states)
        if state is not None
    )
    value = float(s_b - avg)
    return value if value > 0.0 else 0.0


def delta_term(rho_AB: DensityMatrix, bases: Sequence[OrthonormalBasis]) -> float:
    """(N - 1) I(A:B) - sum_m I(M_m:B); signed, callers clip at zero."""
    n = len(bases)
    return (n - 1) * mutual_information(rho_AB) - sum(holevo(rho_AB, b) for b in bases)


# -- classical correlation ----------------------------------------------------

def _bloch_vectors(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Orthonormal qubit bases, shape (K, 2, 2); row 0 is the Bloch vector (theta, phi)."""
    c = np.cos(theta / 2)
    s = np.sin(theta / 2)
    e = np.exp(1j * phi)
    out = np.empty(theta.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = c
    out[..., 0, 1] = e * s
    out[..., 1, 0] = -np.conj(e) * s
    out[..., 1, 1] = c
    return out


def _averaged_conditional_entropy(r: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """sum_i p_i S(rho_B|i) for each basis in ``vectors`` (shape (K, 2, 2)).

    Direct projection route: ``r`` is rho_AB reshaped to (2, dB, 2, dB).
    """
    branches = np.einsum("kna,ajbl,knb->knjl", vectors.conj(), r, vectors)
    p = np.real(np.einsum("knjj->kn", branches))
    safe = np.where(p > ZERO_PROB, p, 1.0)
    lam = np.linalg.eigvalsh(branches / safe[..., None, None])
    lam = np.where(lam > 0.0, lam, 1.0)  # 0 log 0 = 0, and log 1 = 0
    s = np.maximum(-np.sum(lam * np.log2(lam), axis=-1), 0.0)
    return np.sum(np.where(p > ZERO_PROB, p * s, 0.0), axis=-1)


_SIGMA = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]], dtype=complex)


def _neg_xlogx(x: np.ndarray) -> np.ndarray:
    x = np.where(x > 0.0, x, 1.0)
    return -x * np.log2(x)


class _BlochObjective:
    """sum_i p_i S(rho_B|i) for the projective measurement along Bloch vector n.

    With T_k = Tr_A[(sigma_k x I) rho], the two unnormalised branches are
    (rho_B +/- n.T) / 2, and p S(M/p) = -sum mu log mu + p log p over the
    eigenvalues mu of the branch M.
    """

    def __init__(self, rho_AB: DensityMatrix):
        r = np.asarray(rho_AB.matrix).reshape(rho_AB.dims + rho_AB.dims)
        self.rho_b = np.einsum("ajal->jl", r)
        self.t = np.einsum("xba,ajbl->xjl", _SIGMA, r)
        self.d_b = rho_AB.dims[1]
        if self.d_b == 2:
            self._scalars = (
                self.rho_b[0, 0].real, self.rho_b[1, 1].real, complex(self.rho_b[0, 1]),
                [(tk[0, 0].real, tk[1, 1].real, complex(tk[0, 1])) for tk in self.t],
            )

    def scalar(self, theta: float, phi: float) -> float:
        """Single-point evaluation; plain floats are much faster than numpy here."""
        if self.d_b != 2:
            return float(self(np.array([theta]), np.array([phi]))[0])
        st = math.sin(theta)
        n = (st * math.cos(phi), st * math.sin(phi), math.cos(theta))
        b00, b11, b01 = self._scalars[:3]
        t00 = sum(nk * tk[0] for nk, tk in zip(n, self._scalars[3]))
        t11 = sum(nk * tk[1] for nk, tk in zip(n, self._scalars[3]))
        t01 = sum(nk * tk[2] for nk, tk in zip(n, self._scalars[3]))
        total = 0.0
        for sign in (1.0, -1.0):
            a = 0.5 * (b00 + sign * t00)
            d = 0.5 * (b11 + sign * t11)
            off = 0.5 * (b01 + sign * t01)
            half_gap = math.sqrt(0.25 * (a - d) ** 2 + abs(off) ** 2)
            for mu in (0.5 * (a + d) + half_gap, 0.5 * (a + d) - half_gap):
                if mu > 0.0:
                    total -= mu * math.log2(mu)
            p = a + d
            if p > 0.0:
                total += p * math.log2(p)
        return total if total > 0.0 else 0.0

    def __call__(self, theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
        st = np.sin(theta)
        n = np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)
        nt = np.einsum("kx,xjl->kjl", n, self.t)
        total = np.zeros(n.shape[0])
        for sign in (1.0, -1.0):
            m = 0.5 * (self.rho_b + sign * nt)
            if self.d_b == 2:
                a = m[:, 0, 0].real
                d = m[:, 1, 1].real
                half_gap = np.sqrt(0.25 * (a - d) ** 2 + np.abs(m[:, 0, 1]) ** 2)
                mu = np.stack([0.5 * (a + d) + half_gap, 0.5 * (a + d) - half_gap], axis=-1)
                p = a + d
            else:
                mu = np.linalg.eigvalsh(m)
                p = np.real(np.trace(m, axis1=1, axis2=2))
            total += np.sum(_neg_xlogx(mu), axis=-1) - _neg_xlogx(p)
        return np.maximum(total, 0.0)


def _nelder_mead(
    f: Callable[[np.ndarray], float],
    x0: np.ndarray,
    step: float,
    tol: float = SIMPLEX_TOL,
    max_iter: int = MAX_ITER,
) -> tuple[np.ndarray, float, int, bool]:
    """Minimise ``f`` from ``x0``; stop when the simplex diameter drops below ``tol``.

    Returns (x_best, f_best, iterations, converged).  The best vertex never
    gets worse, so f_best <= f(x0).
    """
    n = x0.size
    simplex = np.vstack([x0] + [x0 + step * np.eye(n)[k] for k in range(n)])
    values = np.array([f(x) for x in simplex])
    for it in range(1, max_iter + 1):
        order = np.argsort(values, kind="stable")
        simplex, values = simplex[order], values[order]
        pts = simplex.tolist()
        diameter = max(math.dist(a, b) for a in pts for b in pts)
        if diameter < tol:
            return simplex[0], values[0], it - 1, True
        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]
        xr = centroid + (centroid - worst)
        fr = f(xr)
        if fr < values[0]:
            xe = centroid + 2.0 * (centroid - worst)
            fe = f(xe)
            simplex[-1], values[-1] = (xe, fe) if fe < fr else (xr, fr)
        elif fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
        else:
            if fr < values[-1]:
                xc = centroid + 0.5 * (xr - centroid)
            else:
                xc = centroid + 0.5 * (worst - centroid)
            fc = f(xc)
            if fc < min(fr, values[-1]):
                simplex[-1], values[-1] = xc, fc
            else:
                for k in range(1, n + 1):
                    simplex[k] = simplex[0] + 0.5 * (simplex[k] - simplex[0])
                    values[k] = f(simplex[k])
    order = np.argsort(values, kind="stable")
    return simplex[order[0]], values[order[0]], max_iter, False


def _angle_grid(n_theta: int, n_phi: int) -> tuple[np.ndarray, np.ndarray]:
    theta = np.linspace(0.0, math.pi, n_theta)
    phi = np.arange(n_phi) * (2 * math.pi / n_phi)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    return tt.ravel(), pp.ravel()


def _qubit_A(rho_AB: DensityMatrix) -> np.ndarray:
    _require_bipartite(rho_AB)
    if rho_AB.dims[0] != 2:
        raise UnsupportedDimension(f"classical correlation needs a qubit on A, got dim(A)={rho_AB.dims[0]}")
    return np.asarray(rho_AB.matrix).reshape(rho_AB.dims + rho_AB.dims)


def grid_classical_correlation(rho_AB: DensityMatrix, n_theta: int = 100, n_phi: int = 100) -> float:
    """Brute-force J_A: maximum Holevo quantity over a dense angle grid."""
    r = _qubit_A(rho_AB)
    theta, phi = _angle_grid(n_theta, n_phi)
    cond = _averaged_conditional_entropy(r, _bloch_vectors(theta, phi))
    return von_neumann_entropy(partial_trace(rho_AB, 1)) - float(cond.min())


def classical_correlation(rho_AB: DensityMatrix) -> tuple[float, OptimizationReport]:
    """J_A = S(rho_B) - min over projective measurements on A of sum_i p_i S(rho_B|i)."""
    _qubit_A(rho_AB)
    objective = _BlochObjective(rho_AB)
    theta, phi = _angle_grid(GRID_SIZE, GRID_SIZE)
    grid_vals = objective(theta, phi)
    # stable sort: ties resolve to the lowest linear grid index
    starts = np.argsort(grid_vals, kind="stable")[:N_STARTS]
    grid_best = float(grid_vals[starts[0]])

    def f(x: np.ndarray) -> float:
        return objective.scalar(x[0], x[1])

    step = math.pi / (GRID_SIZE - 1)
    best_x = np.array([theta[starts[0]], phi[starts[0]]])
    best_val = grid_best
    iterations = 0
    converged = True
    for idx in starts:
        x, val, it, ok = _nelder_mead(f, np.array([theta[idx], phi[idx]]), step)
        iterations += it
        converged = converged and ok
        if val < best_val:
            best_x, best_val = x, float(val)
    s_b = von_neumann_entropy(partial_trace(rho_AB, 1))
    j_a = s_b - best_val
    report = OptimizationReport(
        best_value=best_val,
        best_angles=BlochAngles.wrapped(float(best_x[0]), float(best_x[1])),
        grid_best=grid_best,
        refinement_iterations=iterations,
        converged=converged,
    )
    return (j_a if j_a > 0.0 else 0.0), report


def discord(rho_AB: DensityMatrix, j_a: float | None = None) -> float:
    """D_A = I(A:B) - J_A.  Pass ``j_a`` to reuse an already optimised value."""
    if j_a is None:
        j_a, _ = classical_correlation(rho_AB)
    value = mutual_information(rho_AB) - j_a
    if value < -DISCORD_TOL:
        raise InternalConsistencyError(f"discord {value:.3e} is negative beyond tolerance")
    return value if value > 0.0 else 0.0
