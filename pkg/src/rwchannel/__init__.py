"""Amplitude damping induced by a 1+1 expanding universe on spin-1/2 modes,
and the classical/quantum information-preservation rate regions achievable
over that channel."""

__version__ = "0.1.0"

from .cosmology import (
    CosmologyParams,
    ModeEnergies,
    Transmissivity,
    BogoliubovPair,
    mode_energies,
    transmissivity,
    eta_sweep,
)
from .channel import ADChannel, QubitState, apply_channel, apply_complementary, state_entropy
from .regions import (
    EnsembleSymmetric,
    EnsembleTwoLetter,
    LagrangeWeights,
    RatePointCQ,
    RatePointCQE,
    RegionBoundary,
    classical_capacity_product,
    cq_boundary,
    quantum_capacity,
)
from .specfun import binary_entropy, damped_entropy

__all__ = [
    "ADChannel",
    "BogoliubovPair",
    "CosmologyParams",
    "EnsembleSymmetric",
    "EnsembleTwoLetter",
    "LagrangeWeights",
    "ModeEnergies",
    "QubitState",
    "RatePointCQ",
    "RatePointCQE",
    "RegionBoundary",
    "Transmissivity",
    "apply_channel",
    "apply_complementary",
    "binary_entropy",
    "classical_capacity_product",
    "cq_boundary",
    "damped_entropy",
    "eta_sweep",
    "mode_energies",
    "quantum_capacity",
    "state_entropy",
    "transmissivity",
]
