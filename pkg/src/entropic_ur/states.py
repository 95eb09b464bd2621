"""State families used in the experiments, plus seeded random states.

Random draws use ``numpy.random.Generator(PCG64(seed))``; PCG64 output and
numpy's standard-normal/Dirichlet samplers are stable across platforms, so a
seed pins the matrix bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidStateSpec, NotPositive, ParamOutOfRange
from .qmat import DensityMatrix, basis_ket, tensor_product

_PAULIS = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _ginibre_matrix(d: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ g.conj().T
    return m / np.trace(m).real


def _check_unit_interval(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0 or math.isnan(value):
        raise ParamOutOfRange(f"{name}={value} is outside [0, 1]")
    return value


def maximally_entangled(d: int = 2) -> DensityMatrix:
    """(1/sqrt d) sum_k |kk>, as a projector on C^d x C^d."""
    psi = sum(np.kron(basis_ket(k, d), basis_ket(k, d)) for k in range(d)) / math.sqrt(d)
    return DensityMatrix(np.outer(psi, psi.conj()), (d, d))


def werner(eta: float) -> DensityMatrix:
    eta = _check_unit_interval("eta", eta)
    return DensityMatrix(eta * maximally_entangled(2).matrix + (1.0 - eta) / 4.0 * np.eye(4), (2, 2))


def x_state(p: float) -> DensityMatrix:
    """p |Psi+><Psi+| + (1 - p) |11><11| with |Psi+> = (|01> + |10>)/sqrt 2."""
    p = _check_unit_interval("p", p)
    psi = (np.kron(basis_ket(0, 2), basis_ket(1, 2)) + np.kron(basis_ket(1, 2), basis_ket(0, 2))) / math.sqrt(2)
    one_one = np.kron(basis_ket(1, 2), basis_ket(1, 2))
    m = p * np.outer(psi, psi.conj()) + (1.0 - p) * np.outer(one_one, one_one)
    return DensityMatrix(m, (2, 2))


def bell_diagonal(c) -> DensityMatrix:
    """(1/4)(I x I + sum_k c_k sigma_k x sigma_k)."""
    c = np.asarray(c, dtype=float)
    if c.shape != (3,):
        raise InvalidStateSpec("bell_diagonal needs exactly three correlation coefficients")
    m = np.eye(4, dtype=complex)
    for ck, s in zip(c, _PAULIS):
        m = m + ck * np.kron(s, s)
    m /= 4.0
    lam_min = np.linalg.eigvalsh(m)[0]
    if lam_min < -1e-10:
        raise NotPositive(f"c={c.tolist()} does not give a positive operator (min eigenvalue {lam_min:.3g})")
    return DensityMatrix(m, (2, 2))


def random_ginibre(dims: tuple[int, ...] = (2, 2), seed: int = 0) -> DensityMatrix:
    """G G^dagger / Tr(G G^dagger) with G square standard complex Gaussian."""
    d = int(np.prod(dims))
    return DensityMatrix(_ginibre_matrix(d, _rng(seed)), tuple(dims))


def random_product(dims: tuple[int, int] = (2, 2), seed: int = 0) -> DensityMatrix:
    rng = _rng(seed)
    a = DensityMatrix(_ginibre_matrix(dims[0], rng), (dims[0],))
    b = DensityMatrix(_ginibre_matrix(dims[1], rng), (dims[1],))
    return tensor_product(a, b)


# -- text specs ---------------------------------------------------------------

_FAMILIES = ("werner", "xstate", "bell", "bell_diagonal", "product", "ginibre", "a_incoherent")


@dataclass
class StateFamilySpec:
    """A state family plus parameters, e.g. ``werner:eta=0.5``.

    Recognised forms::

        werner:eta=<0..1>
        xstate:p=<0..1>
        bell[:d=<n>]
        bell_diagonal:c1=..,c2=..,c3=..
        product[:dA=2,dB=2,seed=<n>]      (no seed -> |00><00|)
        ginibre:dA=2,dB=2,seed=<n>
        a_incoherent:dA=2,dB=2,seed=<n>
    """

    family: str
    params: dict[str, float] = field(default_factory=dict)
    dims: tuple[int, int] = (2, 2)
    seed: int | None = None

    @classmethod
    def parse(cls, text: str) -> "StateFamilySpec":
        family, _, rest = text.strip().partition(":")
        family = family.strip().lower()
        if family not in _FAMILIES:
            raise InvalidStateSpec(f"unknown state family {family!r}; expected one of {', '.join(_FAMILIES)}")
        params: dict[str, float] = {}
        for item in filter(None, (s.strip() for s in rest.split(","))):
            key, eq, value = item.partition("=")
            if not eq:
                raise InvalidStateSpec(f"malformed parameter {item!r} in {text!r}")
            try:
                params[key.strip()] = float(value)
            except ValueError as exc:
                raise InvalidStateSpec(f"parameter {key!r} is not a number: {value!r}") from exc
        dims = (int(params.pop("dA", 2)), int(params.pop("dB", 2)))
        seed = params.pop("seed", None)
        return cls(family, params, dims, None if seed is None else int(seed))

    def with_param(self, name: str, value: float) -> "StateFamilySpec":
        if name in ("dA", "dB"):
            raise InvalidStateSpec("dimensions cannot be swept")
        if name == "seed":
            return StateFamilySpec(self.family, dict(self.params), self.dims, int(value))
        return StateFamilySpec(self.family, {**self.params, name: float(value)}, self.dims, self.seed)

    def to_text(self) -> str:
        items = [f"{k}={v:g}" for k, v in self.params.items()]
        if self.dims != (2, 2):
            items += [f"dA={self.dims[0]}", f"dB={self.dims[1]}"]
        if self.seed is not None:
            items.append(f"seed={self.seed}")
        return self.family + (":" + ",".join(items) if items else "")

    def _need(self, *names: str) -> list[float]:
        missing = [n for n in names if n not in self.params]
        if missing:
            raise InvalidStateSpec(f"{self.family} needs parameter(s) {', '.join(missing)}")
        extra = set(self.params) - set(names)
        if extra:
            raise InvalidStateSpec(f"{self.family} does not take parameter(s) {', '.join(sorted(extra))}")
        return [self.params[n] for n in names]

    def build(self, default_seed: int | None = None) -> DensityMatrix:
        seed = self.seed if self.seed is not None else default_seed
        if self.family == "werner":
            (eta,) = self._need("eta")
            return werner(eta)
        if self.family == "xstate":
            (p,) = self._need("p")
            return x_state(p)
        if self.family == "bell":
            if set(self.params) - {"d"}:
                raise InvalidStateSpec("bell only takes parameter d")
            return maximally_entangled(int(self.params.get("d", self.dims[0])))
        if self.family == "bell_diagonal":
            return bell_diagonal(self._need("c1", "c2", "c3"))
        self._need()
        if self.family == "product":
            if seed is None:
                return tensor_product(
                    DensityMatrix.from_pure(basis_ket(0, self.dims[0])),
                    DensityMatrix.from_pure(basis_ket(0, self.dims[1])),
                )
            return random_product(self.dims, seed)
        if seed is None:
            raise InvalidStateSpec(f"{self.family} requires a seed")
        if self.family == "ginibre":
            return random_ginibre(self.dims, seed)
        from .measurement import sample_a_incoherent

        return sample_a_incoherent(self.dims, seed)


def parse_state(text: str, default_seed: int | None = None) -> DensityMatrix:
    return StateFamilySpec.parse(text).build(default_seed)

