"""Uncertainty left-hand sides, every lower bound, and the memory-conversion step.

Bounds are looked up by name in :data:`BOUNDS`.  Each entry records which
left-hand side it bounds:

* ``entropy``   -- sum_m H(M_m|B)   (memory-assisted relations)
* ``no_memory`` -- sum_m H(M_m)     (mu, no_memory)
* ``coherence`` -- sum_m C_r^{M_m}  (coherence-based relations)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

from . import correlations as corr
from .coherence import unilateral_coherence
from .errors import BoundViolation, DimensionMismatch, NeedAtLeastTwoBases, UnknownBoundName
from .measurement import (
    OrthonormalBasis,
    dephase_A,
    incompatibility,
    liu_b,
    measure_on_A,
    zhang_ell_max,
)
from .qmat import DensityMatrix, partial_trace, shannon_entropy, von_neumann_entropy

DOMINANCE_TOL = 1e-7
PATI_TOL = 1e-6


@dataclass
class UncertaintyQuantities:
    """Scalar ingredients of every bound, all in bits except ``liu_b``.

    ``q_mu`` is only defined for two bases; ``j_a``/``d_a`` only for a qubit A.
    """

    q_mu: float | None
    liu_b: float
    zhang_ell_max: float
    s_cond: float
    s_rho: float
    mutual: float
    holevo_per_basis: list[float]
    delta: float
    j_a: float | None
    d_a: float | None
    coherences: list[float]


@dataclass
class BoundReport:
    lhs_entropy: float
    lhs_coherence: float
    lhs_no_memory: float
    bounds: dict[str, float] = field(default_factory=dict)
    gaps: dict[str, float] = field(default_factory=dict)
    quantities: UncertaintyQuantities | None = None

    def row(self, names: Iterable[str]) -> list[float]:
        return [self.lhs_entropy, self.lhs_coherence] + [self.bounds[n] for n in names]


def _pos(x: float) -> float:
    return x if x > 0.0 else 0.0


class _Context:
    """Lazily evaluated quantities for one (state, bases) pair."""

    def __init__(self, rho_AB: DensityMatrix, bases: Sequence[OrthonormalBasis]):
        if not bases:
            raise NeedAtLeastTwoBases("no measurement bases given")
        if not rho_AB.is_bipartite:
            raise DimensionMismatch(f"expected a bipartite state, got dims {rho_AB.dims}")
        for b in bases:
            if b.dim != rho_AB.dims[0]:
                raise DimensionMismatch(f"basis {b.label!r} has dim {b.dim}, dim(A) is {rho_AB.dims[0]}")
        self.rho = rho_AB
        self.bases = list(bases)
        self.n = len(bases)

    @cached_property
    def s_b(self) -> float:
        return von_neumann_entropy(partial_trace(self.rho, 1))

    @cached_property
    def rho_a(self) -> DensityMatrix:
        return partial_trace(self.rho, 0)

    @cached_property
    def s_a(self) -> float:
        return von_neumann_entropy(self.rho_a)

    @cached_property
    def s_cond(self) -> float:
        return corr.conditional_entropy(self.rho)

    @cached_property
    def mutual(self) -> float:
        return corr.mutual_information(self.rho)

    @cached_property
    def h_cond(self) -> list[float]:
        """H(M|B) = S(rho_MB) - S(rho_B), per basis."""
        return [_pos(von_neumann_entropy(dephase_A(self.rho, b)) - self.s_b) for b in self.bases]

    @cached_property
    def h_plain(self) -> list[float]:
        return [shannon_entropy(measure_on_A(self.rho, b).probabilities) for b in self.bases]

    @cached_property
    def holevo(self) -> list[float]:
        return [corr.holevo(self.rho, b) for b in self.bases]

    @cached_property
    def coherences(self) -> list[float]:
        return [unilateral_coherence(self.rho, b) for b in self.bases]

    @cached_property
    def delta(self) -> float:
        return (self.n - 1) * self.mutual - sum(self.holevo)

    @cached_property
    def q_mu(self) -> float:
        if self.n != 2:
            raise DimensionMismatch(f"this bound needs exactly two bases, got {self.n}")
        return incompatibility(*self.bases)

    @cached_property
    def minus_log_b(self) -> float:
        return -math.log2(liu_b(self._multi()))

    @cached_property
    def zhang_ell(self) -> float:
        return zhang_ell_max(self._multi(), self.rho)

    @cached_property
    def j_a(self) -> float:
        j, _ = corr.classical_correlation(self.rho)
        return j

    @cached_property
    def d_a(self) -> float:
        return corr.discord(self.rho, j_a=self.j_a)

    def _multi(self) -> list[OrthonormalBasis]:
        if self.n < 2:
            raise NeedAtLeastTwoBases(f"need at least two bases, got {self.n}")
        return self.bases

    def quantities(self) -> UncertaintyQuantities:
        qubit = self.rho.dims[0] == 2
        return UncertaintyQuantities(
            q_mu=self.q_mu if self.n == 2 else None,
            liu_b=2.0 ** -self.minus_log_b if self.n >= 2 else 1.0,
            zhang_ell_max=self.zhang_ell if self.n >= 2 else 0.0,
            s_cond=self.s_cond,
            s_rho=self.s_a,
            mutual=self.mutual,
            holevo_per_basis=list(self.holevo),
            delta=self.delta,
            j_a=self.j_a if qubit else None,
            d_a=self.d_a if qubit else None,
            coherences=list(self.coherences),
        )


# -- bound formulas over a context --------------------------------------------

def _mu(c: _Context) -> float:
    return c.q_mu


def _berta(c: _Context) -> float:
    return c.q_mu + c.s_cond


def _no_memory(c: _Context) -> float:
    return c.q_mu + c.s_a


def _pati(c: _Context) -> float:
    return c.q_mu + c.s_cond + _pos(c.d_a - c.j_a)


def _adabi(c: _Context) -> float:
    return c.q_mu + c.s_cond + _pos(c.delta)


def _liu(c: _Context) -> float:
    return c.minus_log_b + (c.n - 1) * c.s_cond


def _liu_improved(c: _Context) -> float:
    return _liu(c) + _pos(c.delta)


def _zhang(c: _Context) -> float:
    return c.zhang_ell + (c.n - 1) * c.s_cond


def _zhang_improved(c: _Context) -> float:
    return _zhang(c) + _pos(c.delta)


def _coh_berta(c: _Context) -> float:
    return c.q_mu - c.s_cond


def _coh_adabi(c: _Context) -> float:
    return c.q_mu - c.s_cond + _pos(c.delta)


def _coh_multi(c: _Context) -> float:
    return c.zhang_ell - c.s_cond + _pos(c.delta)


def _coh_zhang(c: _Context) -> float:
    return c.zhang_ell - c.s_cond


@dataclass(frozen=True)
class BoundSpec:
    name: str
    func: Callable[[_Context], float]
    lhs: str
    pairs_only: bool = False
    tolerance: float = DOMINANCE_TOL


BOUNDS: dict[str, BoundSpec] = {
    spec.name: spec
    for spec in (
        BoundSpec("mu", _mu, "no_memory", pairs_only=True),
        BoundSpec("berta", _berta, "entropy", pairs_only=True),
        BoundSpec("no_memory", _no_memory, "no_memory", pairs_only=True),
        BoundSpec("pati", _pati, "entropy", pairs_only=True, tolerance=PATI_TOL),
        BoundSpec("adabi", _adabi, "entropy", pairs_only=True),
        BoundSpec("liu", _liu, "entropy"),
        BoundSpec("liu_improved", _liu_improved, "entropy"),
        BoundSpec("zhang", _zhang, "entropy"),
        BoundSpec("zhang_improved", _zhang_improved, "entropy"),
        BoundSpec("coh_berta", _coh_berta, "coherence", pairs_only=True),
        BoundSpec("coh_adabi", _coh_adabi, "coherence", pairs_only=True),
        BoundSpec("coh_multi", _coh_multi, "coherence"),
        BoundSpec("coh_zhang", _coh_zhang, "coherence"),
    )
}


def bound_names(n_bases: int | None = None, lhs: str | None = None) -> list[str]:
    """Registered names, optionally restricted to those defined for ``n_bases`` bases."""
    return [
        s.name
        for s in BOUNDS.values()
        if (n_bases is None or n_bases == 2 or not s.pairs_only) and (lhs is None or s.lhs == lhs)
    ]


def check_bound_names(names: Iterable[str]) -> list[str]:
    names = list(names)
    unknown = [n for n in names if n not in BOUNDS]
    if unknown:
        raise UnknownBoundName(f"unknown bound(s) {', '.join(unknown)}; valid names: {', '.join(BOUNDS)}")
    return names


# -- public operations ----------------------------------------------------------

def lhs_conditional(rho_AB: DensityMatrix, bases: Sequence[OrthonormalBasis]) -> float:
    """sum_m H(M_m|B)."""
    return sum(_Context(rho_AB, bases).h_cond)


def lhs_no_memory(rho_AB: DensityMatrix, bases: Sequence[OrthonormalBasis]) -> float:
    return sum(_Context(rho_AB, bases).h_plain)


def lhs_coherence(rho_AB: DensityMatrix, bases: Sequence[OrthonormalBasis]) -> float:
    return sum(_Context(rho_AB, bases).coherences)


def mu_bound(b1: OrthonormalBasis, b2: OrthonormalBasis) -> float:
    return incompatibility(b1, b2)


def berta_bound(rho_AB: DensityMatrix, b1: OrthonormalBasis, b2: OrthonormalBasis) -> float:
    return _berta(_Context(rho_AB, (b1, b2)))


def no_memory_bound(rho_A: DensityMatrix, b1: OrthonormalBasis, b2: OrthonormalBasis) -> float:
    """q_MU + S(rho_A), a bound on H(M1) + H(M2) without memory."""
    if rho_A.dim != b1.dim:
        raise DimensionMismatch(f"state dim {rho_A.dim} != basis dim {b1.dim}")
    return incompatibility(b1, b2) + von_neumann_entropy(rho_A)


def pati_bound(rho_AB: DensityMatrix, b1: OrthonormalBasis, b2: OrthonormalBasis) -> float:
    return _pati(_Context(rho_AB, (b1, b2)))


def adabi_bound(rho_AB: DensityMatrix, b1: OrthonormalBasis, b2: OrthonormalBasis) -> float:
    return _adabi(_Context(rho_AB, (b1, b2)))


def memory_convert(lb_no_memory: float, rho_AB: DensityMatrix, bases: Sequence[OrthonormalBasis]) -> float:
    """Turn a memory-free bound on sum_m H(M_m) into one on sum_m H(M_m|B).

    Uses H(M) = H(M|B) + I(M:B): subtract the Holevo quantity of every basis.
    """
    return lb_no_memory - sum(_Context(rho_AB, bases).holevo)


def liu_bound_memory(rho_AB: DensityMatrix, bases: Sequence[OrthonormalBasis]) -> float:
    return _liu(_Context(rho_AB, bases))


def liu_bound_improved(rho_AB: DensityMatrix, bases: Sequence[OrthonormalBasis]) -> float:
    return _liu_improved(_Context(rho_AB, bases))


def zhang_bound_memory(rho_AB: DensityMatrix, bases: Sequence[OrthonormalBasis], with_delta: bool = True) -> float:
    """max_u ell + (N-1) S(A|B) [+ max(0, delta) when ``with_delta``]."""
    ctx = _Context(rho_AB, bases)
    return _zhang_improved(ctx) if with_delta else _zhang(ctx)


def coherence_bound_berta(rho_AB: DensityMatrix, b1: OrthonormalBasis, b2: OrthonormalBasis) -> float:
    return _coh_berta(_Context(rho_AB, (b1, b2)))


def coherence_bound_adabi(rho_AB: DensityMatrix, b1: OrthonormalBasis, b2: OrthonormalBasis) -> float:
    return _coh_adabi(_Context(rho_AB, (b1, b2)))


def coherence_bound_multi(rho_AB: DensityMatrix, bases: Sequence[OrthonormalBasis]) -> float:
    return _coh_multi(_Context(rho_AB, bases))


def full_report(
    rho_AB: DensityMatrix,
    bases: Sequence[OrthonormalBasis],
    which_bounds: Iterable[str] = (),
    enforce: bool = True,
    with_quantities: bool = True,
) -> BoundReport:
    """Evaluate both left-hand sides and the requested bounds.

    With ``enforce`` a bound that exceeds its left-hand side by more than its
    tolerance raises BoundViolation.
    """
    names = check_bound_names(which_bounds)
    ctx = _Context(rho_AB, bases)
    lhs = {"entropy": sum(ctx.h_cond), "coherence": sum(ctx.coherences), "no_memory": sum(ctx.h_plain)}
    report = BoundReport(lhs_entropy=lhs["entropy"], lhs_coherence=lhs["coherence"], lhs_no_memory=lhs["no_memory"])
    for name in names:
        spec = BOUNDS[name]
        value = float(spec.func(ctx))
        gap = lhs[spec.lhs] - value
        if enforce and gap < -spec.tolerance:
            raise BoundViolation(f"{name}: bound {value:.12g} exceeds left-hand side {lhs[spec.lhs]:.12g}")
        report.bounds[name] = value
        report.gaps[name] = gap
    if with_quantities:
        report.quantities = ctx.quantities()
    return report
