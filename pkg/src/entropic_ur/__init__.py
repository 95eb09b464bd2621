"""Entropic uncertainty relations with and without quantum memory, and the
coherence-based relations that follow from them."""

from .bounds import BOUNDS, BoundReport, UncertaintyQuantities, full_report
from .coherence import coherence_via_tradeoff, relative_entropy_of_coherence, unilateral_coherence
from .correlations import (
    classical_correlation,
    conditional_entropy,
    delta_term,
    discord,
    holevo,
    mutual_information,
)
from .measurement import OrthonormalBasis, dephase_A, liu_b, measure_on_A, pauli_basis, zhang_ell, zhang_ell_max
from .qmat import DensityMatrix, PureState, partial_trace, shannon_entropy, tensor_product, von_neumann_entropy
from .states import StateFamilySpec, maximally_entangled, random_ginibre, werner, x_state

__version__ = "0.1.0"
