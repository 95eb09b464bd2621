import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entropic_ur.correlations import (
    BlochAngles,
    classical_correlation,
    conditional_entropy,
    delta_term,
    discord,
    grid_classical_correlation,
    holevo,
    mutual_information,
)
from entropic_ur.errors import NotBipartite, UnsupportedDimension
from entropic_ur.measurement import dephase_A, measure_on_A, pauli_basis
from entropic_ur.qmat import DensityMatrix, partial_trace, shannon_entropy, tensor_product, von_neumann_entropy
from entropic_ur.states import bell_diagonal, random_ginibre, random_product, werner

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def h2(p):
    return shannon_entropy([p, 1 - p])


def werner_mutual(eta):
    lam = [(1 + 3 * eta) / 4] + [(1 - eta) / 4] * 3
    return 2 + sum(x * math.log2(x) for x in lam if x > 0)


class TestScalars:
    def test_conditional_entropy(self, bell, mixed4):
        assert conditional_entropy(bell) == pytest.approx(-1.0, abs=1e-12)
        assert conditional_entropy(mixed4) == pytest.approx(1.0, abs=1e-12)
        a = random_ginibre((2,), 1)
        prod = tensor_product(a, random_ginibre((2,), 2))
        assert conditional_entropy(prod) == pytest.approx(von_neumann_entropy(a), abs=1e-12)

    def test_not_bipartite(self):
        with pytest.raises(NotBipartite):
            conditional_entropy(random_ginibre((4,), 0))

    @pytest.mark.parametrize("eta", [0.0, 0.25, 0.5, 0.9, 1.0])
    def test_mutual_werner(self, eta):
        assert mutual_information(werner(eta)) == pytest.approx(werner_mutual(eta), abs=1e-12)

    def test_mutual_values(self, bell):
        assert mutual_information(bell) == pytest.approx(2.0, abs=1e-12)
        assert mutual_information(random_product((2, 2), 4)) == pytest.approx(0.0, abs=1e-12)

    def test_holevo_values(self, bell, mixed4, Z, X):
        assert holevo(bell, Z) == pytest.approx(1.0, abs=1e-12)
        assert holevo(random_product((2, 2), 8), X) == pytest.approx(0.0, abs=1e-12)
        assert holevo(mixed4, X) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("eta", [0.1, 0.5, 0.8])
    @pytest.mark.parametrize("which", "XYZ")
    def test_holevo_werner(self, eta, which):
        # conditional states have spectrum ((1 + eta)/2, (1 - eta)/2)
        assert holevo(werner(eta), pauli_basis(which)) == pytest.approx(1 - h2((1 + eta) / 2), abs=1e-12)

    def test_delta(self, bell, X, Y, Z):
        assert delta_term(bell, [X, Z]) == pytest.approx(0.0, abs=1e-12)
        assert delta_term(bell, [X, Y, Z]) == pytest.approx(1.0, abs=1e-12)
        assert delta_term(random_product((2, 2), 3), [X, Y, Z]) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("eta", np.linspace(0, 1, 21))
    def test_delta_nonnegative_werner(self, eta, X, Y, Z):
        assert delta_term(werner(eta), [X, Z]) >= -1e-9
        assert delta_term(werner(eta), [X, Y, Z]) >= -1e-9

    @pytest.mark.parametrize("c", [(0.3, -0.2, 0.1), (-0.5, 0.4, 0.6), (0.9, -0.9, 0.9)])
    def test_delta_nonnegative_bell_diagonal(self, c, X, Y, Z):
        rho = bell_diagonal(c)
        assert delta_term(rho, [X, Z]) >= -1e-9
        assert delta_term(rho, [X, Y, Z]) >= -1e-9


@settings(max_examples=100, deadline=None)
@given(seeds, st.sampled_from("XYZ"))
def test_conversion_identity(seed, which):
    """H(M) = H(M|B) + I(M:B), with H(M|B) taken from the dephased joint state."""
    rho = random_ginibre((2, 2), seed)
    basis = pauli_basis(which)
    h_m = shannon_entropy(measure_on_A(rho, basis).probabilities)
    h_mb = von_neumann_entropy(dephase_A(rho, basis)) - von_neumann_entropy(partial_trace(rho, 1))
    assert abs(h_m - h_mb - holevo(rho, basis)) <= 1e-9


@settings(max_examples=100, deadline=None)
@given(seeds, st.sampled_from("XYZ"))
def test_holevo_data_processing(seed, which):
    rho = random_ginibre((2, 3), seed)
    assert holevo(rho, pauli_basis(which)) <= mutual_information(rho) + 1e-9
    assert holevo(rho, pauli_basis(which)) <= von_neumann_entropy(partial_trace(rho, 1)) + 1e-9


class TestClassicalCorrelation:
    def test_bell(self, bell):
        j, report = classical_correlation(bell)
        assert j == pytest.approx(1.0, abs=1e-9)
        assert report.converged

    def test_product(self):
        j, _ = classical_correlation(random_product((2, 2), 1))
        assert j == pytest.approx(0.0, abs=1e-9)

    @pytest.mark.parametrize("eta", [0.2, 0.5, 0.9])
    def test_werner_closed_form(self, eta):
        j, _ = classical_correlation(werner(eta))
        assert j == pytest.approx(1 - h2((1 + eta) / 2), abs=1e-9)

    def test_werner_half_vs_grid(self):
        rho = werner(0.5)
        j, _ = classical_correlation(rho)
        assert abs(j - grid_classical_correlation(rho, 100, 100)) <= 1e-6

    def test_unsupported_dimension(self):
        with pytest.raises(UnsupportedDimension):
            classical_correlation(random_ginibre((3, 2), 0))

    def test_qubit_a_larger_b(self):
        rho = random_ginibre((2, 3), 5)
        j, _ = classical_correlation(rho)
        assert j >= grid_classical_correlation(rho, 60, 60) - 1e-9
        assert j <= mutual_information(rho) + 1e-8

    @pytest.mark.parametrize("seed", range(15))
    def test_report_consistency(self, seed):
        rho = random_ginibre((2, 2), seed)
        j, report = classical_correlation(rho)
        assert report.best_value <= report.grid_best + 1e-12
        assert 0 <= report.best_angles.theta <= math.pi
        assert 0 <= report.best_angles.phi < 2 * math.pi
        # the reported optimum is a real measurement achieving J
        assert holevo(rho, report.best_angles.basis()) == pytest.approx(j, abs=1e-9)

    def test_deterministic(self):
        rho = random_ginibre((2, 2), 77)
        assert classical_correlation(rho) == classical_correlation(rho)


def test_bloch_angle_wrapping():
    a = BlochAngles.wrapped(4.0, -1.0)
    assert 0 <= a.theta <= math.pi and 0 <= a.phi < 2 * math.pi
    b1 = BlochAngles(4.0 - 2 * math.pi, -1.0)
    # same projector pair up to ordering
    p1 = np.abs(a.basis().vectors @ np.conj(BlochAngles.wrapped(b1.theta, b1.phi).basis().vectors.T)) ** 2
    assert np.allclose(np.sort(p1.ravel()), [0, 0, 1, 1], atol=1e-12)


class TestDiscord:
    def test_bell(self, bell):
        assert discord(bell) == pytest.approx(1.0, abs=1e-9)

    def test_classical_classical(self):
        m = np.diag([0.3, 0.0, 0.0, 0.7])
        assert discord(DensityMatrix(m, (2, 2))) == pytest.approx(0.0, abs=1e-9)

    def test_product(self):
        assert discord(random_product((2, 2), 2)) == pytest.approx(0.0, abs=1e-9)

    @pytest.mark.parametrize("seed", range(20))
    def test_nonnegative(self, seed):
        assert discord(random_ginibre((2, 2), seed)) >= 0.0
