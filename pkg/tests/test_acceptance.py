"""Acceptance criteria 1-9, each at its stated tolerance.

Every test records a one-line verdict in ``conftest.ACCEPTANCE_RESULTS``; the
terminal summary prints one ``[PASS]``/``[FAIL]`` line per criterion.
"""

import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_RESULTS
from entropic_ur import bounds as bd
from entropic_ur.cli import compute_sweep, figure_config, main
from entropic_ur.coherence import coherence_via_tradeoff, unilateral_coherence
from entropic_ur.correlations import (
    classical_correlation,
    conditional_entropy,
    delta_term,
    grid_classical_correlation,
    holevo,
    mutual_information,
)
from entropic_ur.measurement import dephase_A, incompatibility, liu_b, measure_on_A, overlap_matrix, pauli_basis
from entropic_ur.qmat import partial_trace, shannon_entropy, von_neumann_entropy
from entropic_ur.selfcheck import sample_seeds
from entropic_ur.states import maximally_entangled, random_ginibre, werner

DOMINANCE_TOL = 1e-7
PATI_TOL = 1e-6
ENDPOINT_TOL = 1e-9
IDENTITY_TOL = 1e-9
ORACLE_TOL = 1e-6
MI_TOL = 1e-8

PAULIS = [pauli_basis(c) for c in "XYZ"]
PAIR = [PAULIS[0], PAULIS[2]]


def _record(key, ok, detail):
    ACCEPTANCE_RESULTS[key] = (bool(ok), detail)
    assert ok, detail


@pytest.mark.slow
def test_1_universal_dominance():
    start = time.perf_counter()
    worst = {}
    for seed in sample_seeds(1000, 2024):
        rho = random_ginibre((2, 2), seed)
        for bases in (PAIR, PAULIS):
            rep = bd.full_report(rho, bases, bd.bound_names(len(bases)), enforce=False, with_quantities=False)
            for name, gap in rep.gaps.items():
                key = f"{name}[N={len(bases)}]"
                worst[key] = min(worst.get(key, np.inf), gap)
    elapsed = time.perf_counter() - start
    name, gap = min(worst.items(), key=lambda kv: kv[1])
    ok = gap >= -DOMINANCE_TOL and elapsed <= 60.0
    _record(
        "1 dominance",
        ok,
        f"1000 states x {{XZ, XYZ}}, {len(worst)} bound/N combos; worst gap {gap:.3e} ({name}); {elapsed:.1f}s",
    )


def test_2_tightness_ordering():
    pairs = [("adabi", "berta", 2), ("liu_improved", "liu", 3), ("coh_adabi", "coh_berta", 2), ("zhang_improved", "zhang", 3)]
    violations = []
    worst_pati = np.inf
    for seed in sample_seeds(200, 77):
        rho = random_ginibre((2, 2), seed)
        reports = {
            n: bd.full_report(rho, PAIR if n == 2 else PAULIS, bd.bound_names(n), enforce=False, with_quantities=False)
            for n in (2, 3)
        }
        for hi, lo, n in pairs:
            b = reports[n].bounds
            if not b[hi] >= b[lo]:
                violations.append((seed, hi, lo))
        # the pair case of the multi-basis improvements too
        b2 = reports[2].bounds
        for hi, lo in (("liu_improved", "liu"), ("zhang_improved", "zhang")):
            if not b2[hi] >= b2[lo]:
                violations.append((seed, hi, lo))
        worst_pati = min(worst_pati, b2["adabi"] - b2["pati"])
    ok = not violations and worst_pati >= -PATI_TOL
    _record("2 ordering", ok, f"200 states, {len(violations)} exact-ordering violations; min(adabi - pati) = {worst_pati:.3e}")


def test_3_figure1(tmp_path):
    rows = compute_sweep(figure_config("fig1", tmp_path))
    first, last = rows[0], rows[-1]  # param, lhs_entropy, lhs_coherence, liu_improved, zhang
    endpoint_err = max(
        abs(first[3] - 3.0), abs(first[1] - 3.0), abs(last[3] - 0.0), abs(last[1] - 0.0),
    )
    margin = min(r[3] - r[4] for r in rows)
    ok = len(rows) == 101 and endpoint_err <= ENDPOINT_TOL and margin >= -ENDPOINT_TOL
    _record("3 figure1", ok, f"endpoint error {endpoint_err:.1e}; min(liu_improved - zhang) over 101 pts = {margin:.3e}")


def test_4_figure2(tmp_path):
    rows = compute_sweep(figure_config("fig2", tmp_path))
    first, last = rows[0], rows[-1]  # param, lhs_entropy, lhs_coherence, coh_adabi, coh_berta
    endpoint_err = max(max(abs(v - 1.0) for v in first[2:]), max(abs(v - 2.0) for v in last[2:]))
    margin = min(r[3] - r[4] for r in rows)
    ok = len(rows) == 101 and endpoint_err <= ENDPOINT_TOL and margin >= 0.0
    _record("4 figure2", ok, f"endpoint error {endpoint_err:.1e}; min(coh_adabi - coh_berta) over 101 pts = {margin:.3e}")


def test_5_identities():
    worst_holevo = worst_coh = 0.0
    for seed in sample_seeds(100, 5):
        rho = random_ginibre((2, 2), seed)
        s_b = von_neumann_entropy(partial_trace(rho, 1))
        for basis in PAULIS:
            h_m = shannon_entropy(measure_on_A(rho, basis).probabilities)
            h_m_given_b = von_neumann_entropy(dephase_A(rho, basis)) - s_b
            worst_holevo = max(worst_holevo, abs(h_m - h_m_given_b - holevo(rho, basis)))
            worst_coh = max(worst_coh, abs(unilateral_coherence(rho, basis) - coherence_via_tradeoff(rho, basis)))
    ok = worst_holevo <= IDENTITY_TOL and worst_coh <= IDENTITY_TOL
    _record("5 identities", ok, f"300 cases; H(M) identity err {worst_holevo:.1e}; coherence route err {worst_coh:.1e}")


def test_6_bell_anchors():
    bell = maximally_entangled(2)
    rep = bd.full_report(bell, PAIR, ["berta", "adabi"])
    checks = {
        "S(A|B)": (conditional_entropy(bell), -1.0),
        "I(A:B)": (mutual_information(bell), 2.0),
        "delta(XYZ)": (delta_term(bell, PAULIS), 1.0),
        "berta": (rep.bounds["berta"], 0.0),
        "adabi": (rep.bounds["adabi"], 0.0),
        "gap berta": (rep.gaps["berta"], 0.0),
        "gap adabi": (rep.gaps["adabi"], 0.0),
    }
    err = max(abs(v - e) for v, e in checks.values())
    _record("6 bell", err <= ENDPOINT_TOL, f"{len(checks)} anchors, max error {err:.1e}")


@pytest.mark.slow
def test_7_optimizer_oracle():
    states = [random_ginibre((2, 2), s) for s in sample_seeds(20, 7)]
    states += [werner(k / 10) for k in range(1, 10)]
    below_grid = np.inf
    above_mi = -np.inf
    for rho in states:
        j_a, _ = classical_correlation(rho)
        below_grid = min(below_grid, j_a - grid_classical_correlation(rho, 100, 100))
        above_mi = max(above_mi, j_a - mutual_information(rho))
    ok = below_grid >= -ORACLE_TOL and above_mi <= MI_TOL
    _record("7 optimizer", ok, f"{len(states)} states; min(J - grid) = {below_grid:.3e}; max(J - I) = {above_mi:.3e}")


def test_8_quantity_anchors():
    X, Y, Z = PAULIS
    checks = [liu_b([X, Y, Z]) == 0.5, incompatibility(X, Z) == 1.0, incompatibility(X, Y) == 1.0]
    pairs = [(a, b) for a in PAULIS for b in PAULIS]
    checks += [liu_b([a, b]) == float(overlap_matrix(a, b).max()) for a, b in pairs]
    _record("8 anchors", all(checks), f"{sum(checks)}/{len(checks)} exact equalities")


def test_9_determinism(tmp_path):
    sweep = ["sweep", "--state", "werner", "--param", "eta", "--bases", "X,Y,Z",
             "--bounds", "liu_improved,zhang_improved,coh_multi", "--seed", "3"]
    outputs = {}
    for run in ("a", "b"):
        csv_path, check_path = tmp_path / f"sweep_{run}.csv", tmp_path / f"check_{run}.txt"
        assert main([*sweep, "--out", str(csv_path)]) == 0
        assert main(["check", "--samples", "25", "--seed", "42", "--out", str(check_path)]) == 0
        outputs[run] = (csv_path.read_bytes(), check_path.read_bytes())
    ok = outputs["a"] == outputs["b"]
    _record("9 determinism", ok, "sweep CSV and check summary byte-identical across two runs")
