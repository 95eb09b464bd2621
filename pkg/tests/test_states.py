import numpy as np
import pytest

from entropic_ur.correlations import conditional_entropy
from entropic_ur.errors import InvalidStateSpec, NotPositive, ParamOutOfRange
from entropic_ur.qmat import basis_ket, eig_hermitian, partial_trace
from entropic_ur.states import (
    StateFamilySpec,
    bell_diagonal,
    maximally_entangled,
    parse_state,
    random_ginibre,
    werner,
    x_state,
)


class TestWerner:
    def test_endpoints(self, bell):
        assert werner(1).allclose(bell, atol=1e-12)
        assert werner(0).allclose(np.eye(4) / 4, atol=1e-12)

    def test_spectrum(self):
        w, _ = eig_hermitian(werner(0.5))
        np.testing.assert_allclose(w, [0.625, 0.125, 0.125, 0.125], atol=1e-12)

    @pytest.mark.parametrize("eta", np.round(np.arange(0, 1.0001, 0.01), 2))
    def test_marginals(self, eta):
        rho = werner(eta)
        assert partial_trace(rho, 0).allclose(np.eye(2) / 2, atol=1e-12)
        assert partial_trace(rho, 1).allclose(np.eye(2) / 2, atol=1e-12)

    @pytest.mark.parametrize("eta", [-0.1, 1.5, float("nan")])
    def test_out_of_range(self, eta):
        with pytest.raises(ParamOutOfRange):
            werner(eta)


class TestXState:
    def test_endpoints(self, ket11):
        assert x_state(0).allclose(ket11, atol=1e-12)
        psi = (np.kron(basis_ket(0, 2), basis_ket(1, 2)) + np.kron(basis_ket(1, 2), basis_ket(0, 2))) / np.sqrt(2)
        assert x_state(1).allclose(np.outer(psi, psi), atol=1e-12)

    @pytest.mark.parametrize("p", np.linspace(0, 1, 11))
    def test_structure(self, p):
        rho = x_state(p)
        assert abs(rho.matrix[1, 2] - p / 2) <= 1e-12
        w, _ = eig_hermitian(rho)
        assert np.sum(w > 1e-12) <= 2

    def test_out_of_range(self):
        with pytest.raises(ParamOutOfRange):
            x_state(1.01)


class TestMaximallyEntangled:
    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_conditional_entropy(self, d):
        rho = maximally_entangled(d)
        assert conditional_entropy(rho) == pytest.approx(-np.log2(d), abs=1e-12)
        assert partial_trace(rho, 0).allclose(np.eye(d) / d, atol=1e-12)


class TestBellDiagonal:
    def test_zero(self):
        assert bell_diagonal((0, 0, 0)).allclose(np.eye(4) / 4, atol=1e-12)

    def test_singlet(self):
        rho = bell_diagonal((-1, -1, -1))
        singlet = (np.kron(basis_ket(0, 2), basis_ket(1, 2)) - np.kron(basis_ket(1, 2), basis_ket(0, 2))) / np.sqrt(2)
        assert rho.allclose(np.outer(singlet, singlet), atol=1e-12)

    def test_phi_plus(self, bell):
        assert bell_diagonal((1, -1, 1)).allclose(bell, atol=1e-12)

    def test_not_positive(self):
        with pytest.raises(NotPositive):
            bell_diagonal((1, 1, 1))


class TestGinibre:
    def test_reproducible(self):
        assert random_ginibre((2, 2), 42).matrix.tobytes() == random_ginibre((2, 2), 42).matrix.tobytes()
        assert random_ginibre((2, 2), 42).matrix.tobytes() != random_ginibre((2, 2), 43).matrix.tobytes()

    def test_mean_purity(self):
        purity = [np.trace(random_ginibre((2, 2), s).matrix @ random_ginibre((2, 2), s).matrix).real for s in range(1000)]
        # Hilbert-Schmidt ensemble: E[Tr rho^2] = 2d/(d^2+1) = 8/17 for d = 4
        assert 0 < np.mean(purity) < 1
        assert np.mean(purity) == pytest.approx(8 / 17, abs=0.02)


class TestSpecParsing:
    @pytest.mark.parametrize(
        "text",
        ["werner:eta=0.5", "xstate:p=0.3", "ginibre:dA=2,dB=2,seed=42", "bell", "bell_diagonal:c1=0.1,c2=0.2,c3=-0.3",
         "product", "product:seed=3", "a_incoherent:seed=5", "ginibre:dA=2,dB=3,seed=1"],
    )
    def test_round_trip(self, text):
        spec = StateFamilySpec.parse(text)
        rho = spec.build()
        again = StateFamilySpec.parse(spec.to_text()).build()
        assert rho.allclose(again, atol=0)

    @pytest.mark.parametrize(
        "text", ["nope:eta=1", "werner", "werner:eta", "werner:eta=abc", "werner:eta=0.5,p=0.1", "ginibre", "bell:d=2,x=1"]
    )
    def test_invalid(self, text):
        with pytest.raises(InvalidStateSpec):
            parse_state(text)

    def test_out_of_range(self):
        with pytest.raises(ParamOutOfRange):
            parse_state("werner:eta=1.5")

    def test_default_seed(self):
        assert parse_state("ginibre", default_seed=42).allclose(random_ginibre((2, 2), 42), atol=0)

    def test_with_param(self):
        spec = StateFamilySpec.parse("werner").with_param("eta", 0.25)
        assert spec.build().allclose(werner(0.25), atol=0)
