"""Property suite behind ``entropic-ur check``.

Every property is evaluated on the same seeded Ginibre two-qubit states and
reduced to a pass count plus the worst margin (>= 0 means satisfied).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import bounds as bd
from .coherence import coherence_via_tradeoff, unilateral_coherence
from .correlations import classical_correlation, grid_classical_correlation, holevo, mutual_information
from .measurement import dephase_A, measure_on_A, pauli_basis
from .qmat import partial_trace, shannon_entropy, von_neumann_entropy
from .states import random_ginibre

IDENTITY_TOL = 1e-9
ORACLE_TOL = 1e-6
MI_TOL = 1e-8


@dataclass
class PropertyResult:
    name: str
    passed: int = 0
    total: int = 0
    worst_margin: float = float("inf")

    def record(self, margin: float) -> None:
        self.total += 1
        self.passed += margin >= 0.0
        self.worst_margin = min(self.worst_margin, margin)

    @property
    def ok(self) -> bool:
        return self.passed == self.total


@dataclass
class CheckSummary:
    samples: int
    seed: int
    results: dict[str, PropertyResult] = field(default_factory=dict)

    def prop(self, name: str) -> PropertyResult:
        return self.results.setdefault(name, PropertyResult(name))

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results.values())

    def lines(self) -> list[str]:
        width = max(len(n) for n in self.results)
        out = [f"check: samples={self.samples} seed={self.seed}"]
        for r in self.results.values():
            status = "PASS" if r.ok else "FAIL"
            out.append(f"{status}  {r.name:<{width}}  {r.passed}/{r.total}  worst_margin={r.worst_margin:.3e}")
        out.append("all properties passed" if self.ok else "PROPERTY FAILURES")
        return out


def sample_seeds(samples: int, seed: int) -> list[int]:
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(samples)]


def run_check(samples: int, seed: int, oracle: bool = True) -> CheckSummary:
    paulis = [pauli_basis(c) for c in "XYZ"]
    pair = [paulis[0], paulis[2]]
    summary = CheckSummary(samples, seed)
    for state_seed in sample_seeds(samples, seed):
        rho = random_ginibre((2, 2), state_seed)

        for bases in (pair, paulis):
            n = len(bases)
            rep = bd.full_report(rho, bases, bd.bound_names(n), enforce=False, with_quantities=False)
            for name, gap in rep.gaps.items():
                summary.prop(f"dominance[{name},N={n}]").record(gap + bd.BOUNDS[name].tolerance)
            b = rep.bounds
            for hi, lo in (("liu_improved", "liu"), ("zhang_improved", "zhang"), ("coh_multi", "coh_zhang")):
                summary.prop(f"ordering[{hi}>={lo},N={n}]").record(b[hi] - b[lo])
            if n == 2:
                summary.prop("ordering[adabi>=berta]").record(b["adabi"] - b["berta"])
                summary.prop("ordering[coh_adabi>=coh_berta]").record(b["coh_adabi"] - b["coh_berta"])
                summary.prop("ordering[adabi>=pati]").record(b["adabi"] - b["pati"] + bd.PATI_TOL)

        s_b = von_neumann_entropy(partial_trace(rho, 1))
        for basis in paulis:
            h_m = shannon_entropy(measure_on_A(rho, basis).probabilities)
            h_mb = von_neumann_entropy(dephase_A(rho, basis)) - s_b
            err = abs(h_m - h_mb - holevo(rho, basis))
            summary.prop("identity[H(M)=H(M|B)+I(M:B)]").record(IDENTITY_TOL - err)
            err = abs(unilateral_coherence(rho, basis) - coherence_via_tradeoff(rho, basis))
            summary.prop("identity[C_r=H(Q|B)-S(A|B)]").record(IDENTITY_TOL - err)

        j_a, report = classical_correlation(rho)
        summary.prop("optimizer[refined>=grid]").record(report.grid_best - report.best_value)
        summary.prop("optimizer[J<=I]").record(mutual_information(rho) + MI_TOL - j_a)
        if oracle:
            summary.prop("optimizer[J>=dense_grid]").record(j_a - grid_classical_correlation(rho) + ORACLE_TOL)
    return summary
