"""Reduced-unit model of the relative motion of two anyons.

Everything is expressed in units where hbar = mu = e = c = 1, so energies are
measured in mu e^4 / hbar^2, lengths in hbar^2 / (mu e^2) and the magnetic
field ``b_field`` is the single physical parameter besides the statistics
parameter ``alpha``.

The relative radial motion is governed by the effective potential

    W(r) = (m - alpha)^2 / (2 r^2) - G / r + B^2 r^2 / 8

and the squared radial momentum at reduced energy E is

    p_r^2 = 2 (E - W(r)) = -F + 2 G / r - M / r^2 - N r^2

with F = -2 E, G = 1 (0 without Coulomb), M = (m - alpha)^2, N = B^2 / 4.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "SystemParams",
    "QuantumNumbers",
    "RadicandCoeffs",
    "angular_index",
    "effective_potential",
    "radicand",
    "radicand_coeffs",
    "zeeman_shift",
]


@dataclass(frozen=True)
class SystemParams:
    """Statistics parameter, reduced magnetic field and Coulomb switch.

    ``alpha = 0`` is Bose and ``alpha = 1`` Fermi statistics; any finite real
    is accepted. ``coulomb_on=False`` drops the 1/r attraction and is meant for
    validation of the pure magnetic problem.
    """

    alpha: float = 0.0
    b_field: float = 0.0
    coulomb_on: bool = True

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise DomainError(f"alpha must be finite, got {self.alpha!r}")
        if not math.isfinite(self.b_field) or self.b_field < 0:
            raise DomainError(f"b_field must be finite and >= 0, got {self.b_field!r}")

    @property
    def coulomb_strength(self) -> float:
        return 1.0 if self.coulomb_on else 0.0


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial quantum number ``n_r >= 0`` and angular quantum number ``m``."""

    n_r: int
    m: int

    def __post_init__(self):
        if int(self.n_r) != self.n_r or int(self.m) != self.m:
            raise DomainError(f"quantum numbers must be integers, got ({self.n_r!r}, {self.m!r})")
        if self.n_r < 0:
            raise DomainError(f"n_r must be non-negative, got {self.n_r}")


@dataclass(frozen=True)
class RadicandCoeffs:
    """Coefficients of p_r^2 = -F + 2G/r - M/r^2 - N r^2."""

    F: float
    G: float
    M: float
    N: float

    def __post_init__(self):
        if self.M < 0 or self.N < 0:
            raise DomainError(f"M and N must be non-negative, got M={self.M}, N={self.N}")
        if self.G < 0:
            raise DomainError(f"G must be non-negative, got {self.G}")

    @property
    def e_bar(self) -> float:
        """Reduced energy encoded by F."""
        return -0.5 * self.F


def angular_index(params: SystemParams, m: int) -> float:
    """Effective angular momentum m - alpha."""
    return m - params.alpha


def effective_potential(r, params: SystemParams, m: int):
    """Effective radial potential W(r) of the reduced Hamiltonian.

    Accepts a scalar or an array of radii; all radii must be positive.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(~(r_arr > 0)):
        raise DomainError("effective_potential requires r > 0")
    ell = angular_index(params, m)
    b = params.b_field
    w = ell * ell / (2.0 * r_arr * r_arr) - params.coulomb_strength / r_arr + b * b * r_arr * r_arr / 8.0
    return float(w) if w.ndim == 0 else w


def radicand_coeffs(params: SystemParams, m: int, e_bar: float) -> RadicandCoeffs:
    ell = angular_index(params, m)
    return RadicandCoeffs(
        F=-2.0 * e_bar,
        G=params.coulomb_strength,
        M=ell * ell,
        N=params.b_field * params.b_field / 4.0,
    )


def radicand(r, coeffs: RadicandCoeffs):
    """Squared radial momentum -F + 2G/r - M/r^2 - N r^2 at radius ``r``."""
    r_arr = np.asarray(r, dtype=float)
    val = -coeffs.F + 2.0 * coeffs.G / r_arr - coeffs.M / (r_arr * r_arr) - coeffs.N * r_arr * r_arr
    return float(val) if val.ndim == 0 else val


def zeeman_shift(params: SystemParams, m: int) -> float:
    """Constant energy shift (B/2)(m - alpha) separating E from the reduced energy."""
    return 0.5 * params.b_field * angular_index(params, m)
