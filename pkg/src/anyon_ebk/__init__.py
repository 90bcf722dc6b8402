"""Torus-quantized spectra of two anyons with Coulomb interaction in a uniform magnetic field.

Reduced units hbar = mu = e = c = 1 throughout.
"""
from .errors import DomainError, NoBoundState, NoPhysicalRoot, NumericalError, TruncationError, UnconvergedLevel
from .model import QuantumNumbers, RadicandCoeffs, SystemParams, effective_potential, radicand, radicand_coeffs
from .oracle import RadialGrid, oracle_energy, oracle_solve
from .radial_action import (
    action_integral_numeric,
    action_second_order,
    contour_coulomb,
    contour_magnetic_paper,
    correction_integral,
    turning_points,
)
from .spectra import (
    Method,
    SpectrumRecord,
    landau_energy_paper,
    solve_ebk_numeric,
    solve_septic,
    zeeman_energy,
)

__all__ = [
    "DomainError",
    "NoBoundState",
    "NoPhysicalRoot",
    "NumericalError",
    "TruncationError",
    "UnconvergedLevel",
    "QuantumNumbers",
    "RadicandCoeffs",
    "SystemParams",
    "effective_potential",
    "radicand",
    "radicand_coeffs",
    "RadialGrid",
    "oracle_energy",
    "oracle_solve",
    "action_integral_numeric",
    "action_second_order",
    "contour_coulomb",
    "contour_magnetic_paper",
    "correction_integral",
    "turning_points",
    "Method",
    "SpectrumRecord",
    "landau_energy_paper",
    "solve_ebk_numeric",
    "solve_septic",
    "zeeman_energy",
]
__version__ = "0.1.0"
