"""Finite-difference eigensolver for the reduced radial Schroedinger problem.

Serves as an independent quantum-mechanical check of the semiclassical
spectra. Two discretisations are available:

``pointwise``
    u(r) = sqrt(r) R(r) on nodes r_i = i h, i = 1..n, with the three-point
    Laplacian and Dirichlet ends. The operator is
    -u''/2 + [((m - alpha)^2 - 1/4) / (2 r^2) - G/r + B^2 r^2 / 8] u.
    Second order only when u is smooth at the origin; it stalls for
    |m - alpha| < 1/2, where u ~ r^{|m - alpha| + 1/2}.

``factored``
    R(r) = r^s phi(r) with s = |m - alpha|. phi is smooth and solves the
    Sturm-Liouville problem -(r^p phi')' / 2 + r^p (-G/r + B^2 r^2/8) phi
    = E r^p phi with p = 2 s + 1. Cell-centred finite volumes on nodes
    r_i = i h, i = 0..n (the origin is a natural boundary), Dirichlet at
    r_max, then a diagonal similarity makes it symmetric tridiagonal.
    Second order for every s; this is the default.

Both operators impose the regular boundary condition at the origin.
Eigenvalues come from Sturm-sequence bisection.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .errors import DomainError, TruncationError, UnconvergedLevel
from .model import QuantumNumbers, SystemParams, angular_index, effective_potential, radicand_coeffs
from .radial_action import turning_points
from .spectra import Method, SpectrumRecord, total_energy

__all__ = [
    "RadialGrid",
    "TridiagonalOperator",
    "OracleLevel",
    "build_radial_operator",
    "build_factored_operator",
    "sturm_count",
    "lowest_eigenvalues",
    "default_grid",
    "oracle_solve",
    "oracle_energy",
    "EIG_TOL",
]

EIG_TOL = 1e-10
DEFAULT_POINTS = 4000
# WKB decay exponent required between the outer turning point and r_max
_MIN_TUNNEL_EXPONENT = 12.0


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid with spacing h = r_max / (n_points + 1)."""

    r_max: float
    n_points: int = DEFAULT_POINTS

    def __post_init__(self):
        if not (self.r_max > 0 and math.isfinite(self.r_max)):
            raise DomainError(f"r_max must be positive, got {self.r_max}")
        if int(self.n_points) != self.n_points or self.n_points < 100:
            raise DomainError(f"n_points must be an integer >= 100, got {self.n_points}")

    @property
    def h(self) -> float:
        return self.r_max / (self.n_points + 1)

    @property
    def nodes(self) -> np.ndarray:
        return self.h * np.arange(1, self.n_points + 1)

    def refined(self) -> "RadialGrid":
        """Same box with half the spacing."""
        return RadialGrid(self.r_max, 2 * self.n_points + 1)


@dataclass(frozen=True)
class TridiagonalOperator:
    diag: np.ndarray
    off_diag: np.ndarray

    def __post_init__(self):
        if self.diag.ndim != 1 or self.off_diag.shape != (max(self.diag.size - 1, 0),):
            raise DomainError("off_diag must have one entry fewer than diag")

    @property
    def dim(self) -> int:
        return self.diag.size

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.off_diag, 1) + np.diag(self.off_diag, -1)


def build_radial_operator(params: SystemParams, m: int, grid: RadialGrid) -> TridiagonalOperator:
    """Pointwise three-point discretisation of the operator for u = sqrt(r) R."""
    h = grid.h
    r = grid.nodes
    ell = angular_index(params, m)
    b = params.b_field
    v_eff = (ell * ell - 0.25) / (2.0 * r * r) - params.coulomb_strength / r + b * b * r * r / 8.0
    diag = 1.0 / (h * h) + v_eff
    off = np.full(grid.n_points - 1, -0.5 / (h * h))
    return TridiagonalOperator(diag, off)


def build_factored_operator(params: SystemParams, m: int, grid: RadialGrid) -> TridiagonalOperator:
    """Symmetrised finite-volume operator for phi = R / r^|m - alpha|.

    Has ``n_points + 1`` unknowns: the origin plus the interior nodes.
    """
    h = grid.h
    p = 2.0 * abs(angular_index(params, m)) + 1.0
    # work in x = r / h to keep powers of r moderate
    x = np.arange(grid.n_points + 1, dtype=float)
    lo = np.maximum(x - 0.5, 0.0)
    hi = x + 0.5

    def cell(q):
        return (hi ** (q + 1) - lo ** (q + 1)) / (q + 1)

    weight = cell(p)
    b = params.b_field
    # cell integrals of r^p V, divided by h^(p+1) like the weights
    potential = -params.coulomb_strength / h * cell(p - 1) + b * b * h * h / 8.0 * cell(p + 2)
    flux = 0.5 * hi**p / (h * h)
    stiff = potential.copy()
    stiff += flux
    stiff[1:] += flux[:-1]
    scale = 1.0 / np.sqrt(weight)
    diag = stiff * scale * scale
    off = -flux[:-1] * scale[:-1] * scale[1:]
    return TridiagonalOperator(diag, off)


@numba.njit(cache=True)
def _sturm_count(diag, off2, x, pivmin):
    """Number of eigenvalues below ``x`` from the LDL^T pivot signs."""
    count = 0
    q = diag[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0:
        count += 1
    for i in range(1, diag.size):
        q = diag[i] - x - off2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0:
            count += 1
    return count


@numba.njit(cache=True)
def _bisect_eigenvalues(diag, off2, k, lo, hi, tol, pivmin):
    out = np.empty(k)
    a0 = lo
    for j in range(k):
        a, b = a0, hi
        while b - a > tol:
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if _sturm_count(diag, off2, mid, pivmin) > j:
                b = mid
            else:
                a = mid
        out[j] = 0.5 * (a + b)
        a0 = a
    return out


def _pivmin(off2):
    return np.finfo(float).tiny * max(1.0, float(off2.max()) if off2.size else 1.0)


def sturm_count(op: TridiagonalOperator, x: float) -> int:
    """Number of eigenvalues of ``op`` strictly below ``x``."""
    off2 = np.ascontiguousarray(op.off_diag**2)
    return int(_sturm_count(np.ascontiguousarray(op.diag, dtype=float), off2, float(x), _pivmin(off2)))


def lowest_eigenvalues(op: TridiagonalOperator, k: int, tol: float = EIG_TOL) -> np.ndarray:
    """The ``k`` smallest eigenvalues, ascending, by Sturm-count bisection."""
    if not 1 <= k <= op.dim:
        raise DomainError(f"k must lie in [1, {op.dim}], got {k}")
    diag = np.ascontiguousarray(op.diag, dtype=float)
    off = np.abs(op.off_diag)
    radius = np.zeros_like(diag)
    radius[:-1] += off
    radius[1:] += off
    lo = float((diag - radius).min())
    hi = float((diag + radius).max())
    pad = 1e-12 * max(abs(lo), abs(hi), 1.0)
    off2 = np.ascontiguousarray(op.off_diag**2)
    return _bisect_eigenvalues(diag, off2, int(k), lo - pad, hi + pad, float(tol), _pivmin(off2))


def default_grid(params: SystemParams, qn: QuantumNumbers, n_points: int = DEFAULT_POINTS) -> RadialGrid:
    """Box of size max(30, min(20 nu^2, 10 / sqrt(B/2))), nu = n_r + 1/2 + |m - alpha|."""
    nu = qn.n_r + 0.5 + abs(angular_index(params, qn.m))
    r_coulomb = 20.0 * nu * nu if params.coulomb_on else math.inf
    r_field = 10.0 / math.sqrt(0.5 * params.b_field) if params.b_field > 0 else math.inf
    r_max = min(r_coulomb, r_field)
    if not math.isfinite(r_max):
        raise DomainError("no confining length scale without field and Coulomb attraction")
    return RadialGrid(max(30.0, r_max), n_points)


@dataclass(frozen=True)
class OracleLevel:
    """Raw finite-difference values at spacings h and h/2 and their extrapolation."""

    qn: QuantumNumbers
    params: SystemParams
    grid: RadialGrid
    scheme: str
    e_coarse: float
    e_fine: float

    @property
    def e_extrapolated(self) -> float:
        return (4.0 * self.e_fine - self.e_coarse) / 3.0


_BUILDERS = {"pointwise": build_radial_operator, "factored": build_factored_operator}


def _check_confined(params, qn, grid, e_bar):
    if params.b_field == 0.0 and e_bar >= 0.0:
        raise TruncationError(f"level {qn} is not bound (E={e_bar:.6g} >= 0 at zero field)")
    try:
        tp = turning_points(radicand_coeffs(params, qn.m, e_bar))
    except ValueError:
        return
    if tp.r2 >= grid.r_max:
        raise TruncationError(f"outer turning point {tp.r2:.4g} lies outside r_max={grid.r_max:.4g}")
    r = np.linspace(tp.r2, grid.r_max, 2001)[1:]
    kappa = np.sqrt(np.maximum(2.0 * (effective_potential(r, params, qn.m) - e_bar), 0.0))
    exponent = float(np.sum(0.5 * (kappa[1:] + kappa[:-1]) * np.diff(r)))
    if exponent < _MIN_TUNNEL_EXPONENT:
        raise TruncationError(
            f"level {qn} leaks out of the box: decay exponent {exponent:.3g} < {_MIN_TUNNEL_EXPONENT}"
        )


def oracle_solve(
    params: SystemParams,
    qn: QuantumNumbers,
    grid: RadialGrid | None = None,
    scheme: str = "factored",
    tol: float = 1e-3,
) -> OracleLevel:
    """Level ``n_r`` at fixed ``m`` on ``grid`` and on the grid with half the spacing.

    Raises :class:`UnconvergedLevel` when halving the spacing moves the level
    by more than ``tol``, and :class:`TruncationError` when the state is not
    confined by the box.
    """
    try:
        build = _BUILDERS[scheme]
    except KeyError:
        raise DomainError(f"unknown scheme {scheme!r}; choose from {sorted(_BUILDERS)}") from None
    if grid is None:
        grid = default_grid(params, qn)
    k = qn.n_r + 1
    e_coarse = float(lowest_eigenvalues(build(params, qn.m, grid), k)[qn.n_r])
    e_fine = float(lowest_eigenvalues(build(params, qn.m, grid.refined()), k)[qn.n_r])
    _check_confined(params, qn, grid, e_fine)
    if abs(e_fine - e_coarse) > tol:
        raise UnconvergedLevel(
            f"level {qn} moved by {abs(e_fine - e_coarse):.3g} > {tol:g} when halving h={grid.h:.4g}"
        )
    return OracleLevel(qn, params, grid, scheme, e_coarse, e_fine)


def oracle_energy(
    params: SystemParams,
    qn: QuantumNumbers,
    grid: RadialGrid | None = None,
    scheme: str = "factored",
    tol: float = 1e-3,
) -> SpectrumRecord:
    """Richardson-extrapolated finite-difference level as a spectrum record."""
    level = oracle_solve(params, qn, grid, scheme=scheme, tol=tol)
    e_bar = level.e_extrapolated
    return SpectrumRecord(Method.ORACLE, qn, e_bar, total_energy(e_bar, params, qn), params)
