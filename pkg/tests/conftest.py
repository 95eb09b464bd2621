import numpy as np
import pytest

from entropic_ur.measurement import pauli_basis
from entropic_ur.qmat import DensityMatrix, basis_ket, tensor_product
from entropic_ur.states import maximally_entangled

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def X():
    return pauli_basis("X")


@pytest.fixture(scope="session")
def Y():
    return pauli_basis("Y")


@pytest.fixture(scope="session")
def Z():
    return pauli_basis("Z")


@pytest.fixture(scope="session")
def bell():
    return maximally_entangled(2)


@pytest.fixture(scope="session")
def mixed4():
    return DensityMatrix.maximally_mixed((2, 2))


@pytest.fixture(scope="session")
def ket11():
    one = DensityMatrix.from_pure(basis_ket(1, 2))
    return tensor_product(one, one)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
