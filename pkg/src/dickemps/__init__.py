"""Exact matrix product states and sequential preparation circuits for Dicke states."""

from .dicke import (
    ATOL,
    DenseState,
    DomainError,
    binomial,
    dicke_state,
    hypergeom_coeff,
    multinomial,
    qudit_dicke_state,
    qudit_schmidt_coeff,
    spin_dicke_state,
    spin_hypergeom_coeff,
    spin_lowering_oracle,
)
from .mps import (
    MpsChain,
    SectorLabeling,
    canonicity_residual,
    contract,
    enumerate_sectors,
    qubit_chain,
    qudit_chain,
    spin_chain,
    ti_chain,
)
from .schmidt import SchmidtSpectrum, schmidt_spectrum
from .circuit import CircuitDescription, HybridState, build_circuit, simulate

__version__ = "0.1.0"
