"""Radial action on the invariant torus.

Two routes are provided:

* :func:`action_integral_numeric` integrates the radial momentum between the
  turning points on the real axis.
* :func:`contour_coulomb`, :func:`contour_magnetic_paper`,
  :func:`correction_integral` and :func:`action_second_order` evaluate the
  closed forms obtained from the residue theorem.

Contour integrals follow the convention ``oint = 2 * int_{r1}^{r2}``, so the
action is ``I_r = oint / (2 pi)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from .errors import DomainError, NoBoundState, NumericalError
from .model import RadicandCoeffs

__all__ = [
    "TurningPoints",
    "turning_points",
    "potential_minimum",
    "action_integral_numeric",
    "oscillator_action",
    "contour_coulomb",
    "contour_magnetic_paper",
    "correction_integral",
    "action_second_order",
    "ROOT_TOL",
    "QUAD_RTOL",
    "MAX_QUAD_ORDER",
]

ROOT_TOL = 1e-13
QUAD_RTOL = 1e-11
MAX_QUAD_ORDER = 2**16
_MIN_QUAD_ORDER = 32
# enough doublings to reach the top of the float range
_MAX_DOUBLINGS = 1100
# below this M the peak radius squares to underflow; the action shifts by < sqrt(M)
_TINY_M = 1e-150


@dataclass(frozen=True)
class TurningPoints:
    """Inner and outer radii where the radial momentum vanishes."""

    r1: float
    r2: float

    @property
    def degenerate(self) -> bool:
        return self.r1 == self.r2


def _quartic(r, c: RadicandCoeffs):
    # r^2 * p_r^2; same sign as the radicand for r > 0
    return ((-c.N * r * r - c.F) * r + 2.0 * c.G) * r - c.M


def _bisect(f, lo, hi):
    """Bisection on a sign change of ``f`` between ``lo`` and ``hi``.

    Runs to floating-point resolution rather than a fixed absolute width so
    that tiny inner roots keep full relative precision (always <= ROOT_TOL).
    """
    f_lo = f(lo)
    for _ in range(2200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _flush_tiny_m(c: RadicandCoeffs) -> RadicandCoeffs:
    return replace(c, M=0.0) if 0.0 < c.M < _TINY_M else c


def _radicand_peak(c: RadicandCoeffs) -> float:
    """Radius maximising the radicand, i.e. the root of N r^4 + G r - M."""
    candidates = []
    if c.N > 0:
        candidates.append((c.M / c.N) ** 0.25)
    if c.G > 0:
        candidates.append(c.M / c.G)
    hi = min(candidates)
    return _bisect(lambda r: (c.N * r**3 + c.G) * r - c.M, 0.0, hi)


def potential_minimum(coeffs: RadicandCoeffs) -> tuple[float, float]:
    """Location and value of the minimum of W(r) = M/(2r^2) - G/r + N r^2/2.

    F is ignored. Returns ``(0.0, -inf)`` when M = 0 and G > 0, where W is
    unbounded below.
    """
    c = _flush_tiny_m(coeffs)
    if c.M == 0.0:
        if c.G > 0:
            return 0.0, -math.inf
        return 0.0, 0.0
    if c.G == 0.0 and c.N == 0.0:
        raise NoBoundState("repulsive centrifugal barrier only, no potential well", side="both")
    r = _radicand_peak(c)
    return r, 0.5 * c.M / r**2 - c.G / r + 0.5 * c.N * r**2


def turning_points(coeffs: RadicandCoeffs) -> TurningPoints:
    """Turning points bracketing the minimum of the effective potential.

    The radicand ``-F + 2G/r - M/r^2 - N r^2`` is unimodal on r > 0, so the
    inner root is bracketed by (0, r_peak) and the outer one by (r_peak, R)
    with R grown by doubling. Both are refined by bisection.
    An energy sitting exactly at the potential minimum gives ``r1 == r2``.
    """
    c = _flush_tiny_m(coeffs)
    if c.M == 0.0:
        if c.G > 0:
            r_peak, peak = 0.0, math.inf
        else:
            r_peak, peak = 0.0, -c.F
    else:
        if c.G == 0.0 and c.N == 0.0:
            raise NoBoundState("repulsive centrifugal barrier only, no potential well", side="both")
        r_peak = _radicand_peak(c)
        peak = -c.F + 2.0 * c.G / r_peak - c.M / r_peak**2 - c.N * r_peak**2

    if peak != math.inf:
        scale = abs(c.F) + (2.0 * c.G / r_peak + c.M / r_peak**2 + c.N * r_peak**2 if r_peak > 0 else 0.0)
        if abs(peak) <= 1e-14 * max(scale, 1e-300):
            return TurningPoints(r_peak, r_peak)
        if peak < 0:
            raise NoBoundState(
                f"energy {c.e_bar:.6g} lies below the minimum of the effective potential",
                side="both",
            )

    if c.N == 0.0 and c.F <= 0.0:
        raise NoBoundState(
            f"energy {c.e_bar:.6g} is not bound without a magnetic field", side="outer"
        )

    if c.M == 0.0:
        r1 = 0.0
    else:
        r1 = _bisect(lambda r: _quartic(r, c), 0.0, r_peak)

    lo = r_peak if r_peak > 0 else r1
    hi = max(2.0 * lo, 1.0)
    for _ in range(_MAX_DOUBLINGS):
        if _quartic(hi, c) < 0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise NoBoundState("outer turning point not found", side="outer")
    r2 = _bisect(lambda r: _quartic(r, c), lo, hi)
    return TurningPoints(r1, r2)


@lru_cache(maxsize=None)
def _gauss_legendre(n: int):
    x, w = roots_legendre(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _torus_integrand(c: RadicandCoeffs, tp: TurningPoints):
    """Action integrand in the angle variable of the map r = u^2, u = mid + half sin(theta).

    The deflated quartic Q = P / ((r - r1)(r2 - r)) removes both turning-point
    zeros analytically, so the integrand is smooth on [-pi/2, pi/2].
    """
    r1, r2 = tp.r1, tp.r2
    u1, u2 = math.sqrt(r1), math.sqrt(r2)
    mid, half = 0.5 * (u1 + u2), 0.5 * (u2 - u1)
    s, p = r1 + r2, r1 * r2
    q0 = c.F + c.N * (s * s - p)

    def f(theta):
        u = mid + half * np.sin(theta)
        r = u * u
        q = np.maximum(c.N * r * (r + s) + q0, 0.0)
        return 2.0 * half * half * np.cos(theta) ** 2 * np.sqrt((u + u1) * (u + u2) * q) / u

    return f


def action_integral_numeric(
    coeffs: RadicandCoeffs, rtol: float = QUAD_RTOL, max_order: int = MAX_QUAD_ORDER
) -> float:
    """Radial action I_r = (1/pi) * int_{r1}^{r2} sqrt(radicand) dr.

    Gauss-Legendre quadrature in the regularised angle variable; the order is
    doubled from 32 until two successive estimates agree to ``rtol``.
    """
    tp = turning_points(coeffs)
    if tp.degenerate:
        return 0.0
    f = _torus_integrand(coeffs, tp)
    n = _MIN_QUAD_ORDER
    x, w = _gauss_legendre(n)
    prev = 0.5 * math.pi * float(w @ f(0.5 * math.pi * x))
    while n < max_order:
        n *= 2
        x, w = _gauss_legendre(n)
        cur = 0.5 * math.pi * float(w @ f(0.5 * math.pi * x))
        if abs(cur - prev) <= rtol * abs(cur):
            return cur / math.pi
        prev = cur
    raise NumericalError(
        f"radial action did not converge to rtol={rtol} with {max_order} nodes", estimate=prev / math.pi
    )


def oscillator_action(coeffs: RadicandCoeffs) -> float:
    """Exact radial action of the pure magnetic (G = 0) problem.

    I_r = E / (2 Omega) - sqrt(M) / 2 with Omega = sqrt(N) = B / 2.
    """
    c = coeffs
    if c.G != 0.0 or c.N <= 0.0:
        raise DomainError("oscillator_action requires G = 0 and N > 0")
    return -c.F / (4.0 * math.sqrt(c.N)) - 0.5 * math.sqrt(c.M)


def _check_coulomb_domain(c: RadicandCoeffs, name: str):
    if not (c.F > 0 and c.G > 0):
        raise DomainError(f"{name} requires F > 0 and G > 0, got F={c.F}, G={c.G}")
    if c.F * c.M > c.G * c.G * (1.0 + 1e-12):
        raise DomainError(f"{name} requires F*M <= G^2 (real turning points)")


def contour_coulomb(coeffs: RadicandCoeffs) -> float:
    """Loop integral of sqrt(-F + 2G/r - M/r^2) dr: -2 pi (sqrt(M) - G/sqrt(F))."""
    c = coeffs
    if c.N != 0.0:
        raise DomainError("contour_coulomb requires N = 0")
    _check_coulomb_domain(c, "contour_coulomb")
    return -2.0 * math.pi * (math.sqrt(c.M) - c.G / math.sqrt(c.F))


def contour_magnetic_paper(coeffs: RadicandCoeffs) -> float:
    """Residue-sum value -2 pi (sqrt(M) + F / (2 sqrt(N))) for the G = 0 loop integral.

    Kept exactly as derived from the residues at 0 and infinity. It is twice
    the actual loop integral (compare :func:`oscillator_action`), because the
    even radicand has a second cut on the negative real axis.
    """
    c = coeffs
    if c.G != 0.0:
        raise DomainError("contour_magnetic_paper requires G = 0")
    if not (c.N > 0 and c.F < 0):
        raise DomainError(f"contour_magnetic_paper requires N > 0 and F < 0, got F={c.F}, N={c.N}")
    if c.F * c.F < 4.0 * c.N * c.M * (1.0 - 1e-12):
        raise DomainError("contour_magnetic_paper requires F^2 >= 4 N M")
    return -2.0 * math.pi * (math.sqrt(c.M) + c.F / (2.0 * math.sqrt(c.N)))


def correction_integral(coeffs: RadicandCoeffs) -> float:
    """Loop integral of r^3 / sqrt(-F r^2 + 2G r - M) dr.

    Closed form -2 pi (3M - 5G^2/F) G / (2 F^2 sqrt(F)); N is ignored.
    """
    c = coeffs
    _check_coulomb_domain(c, "correction_integral")
    return -2.0 * math.pi * (3.0 * c.M - 5.0 * c.G * c.G / c.F) * c.G / (2.0 * c.F**2 * math.sqrt(c.F))


def action_second_order(coeffs: RadicandCoeffs) -> float:
    """Radial action to first order in N (second order in the field)."""
    base = contour_coulomb(replace(coeffs, N=0.0))
    if coeffs.N == 0.0:
        return base / (2.0 * math.pi)
    return (base - 0.5 * coeffs.N * correction_integral(coeffs)) / (2.0 * math.pi)
