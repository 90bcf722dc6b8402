"""Quantized spectra: numeric torus quantization and the closed-form formulas.

The torus quantization fixes the angular action to ``m`` and the radial
action to ``n_r + 1/2``. The reduced energy follows by inverting the radial
action; the total energy adds the constant shift ``(B/2)(m - alpha)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NoBoundState, NoPhysicalRoot, NumericalError
from .model import QuantumNumbers, SystemParams, angular_index, radicand_coeffs, zeeman_shift
from .radial_action import action_integral_numeric, potential_minimum

__all__ = [
    "Method",
    "SpectrumRecord",
    "total_energy",
    "radial_action_at",
    "solve_ebk_numeric",
    "landau_energy_paper",
    "zeeman_energy",
    "septic_coefficients",
    "septic_residual",
    "solve_septic",
]

EBK_ETOL = 1e-13
SEPTIC_TOL = 1e-12
SEPTIC_MAX_ITER = 100
_BRENT_RTOL = 4.0 * float(np.finfo(float).eps)
# Largest |E - A| / |A| accepted from the septic before it is declared outside
# its weak-field range.
SEPTIC_MAX_REL_SHIFT = 0.1


class Method(str, enum.Enum):
    EBK_NUMERIC = "ebk"
    LANDAU_PAPER = "landau"
    ZEEMAN = "zeeman"
    SEPTIC = "septic"
    ORACLE = "oracle"


@dataclass(frozen=True)
class SpectrumRecord:
    """One computed level; ``e_total = e_bar + zeeman_shift``."""

    method: Method
    qn: QuantumNumbers
    e_bar: float
    e_total: float
    params: SystemParams


def total_energy(e_bar: float, params: SystemParams, qn: QuantumNumbers) -> float:
    return e_bar + zeeman_shift(params, qn.m)


def _record(method, params, qn, e_bar):
    return SpectrumRecord(method, qn, e_bar, total_energy(e_bar, params, qn), params)


def _nu(params: SystemParams, qn: QuantumNumbers) -> float:
    return qn.n_r + 0.5 + abs(angular_index(params, qn.m))


def radial_action_at(params: SystemParams, m: int, e_bar: float) -> float:
    """Numeric radial action I_r at reduced energy ``e_bar``."""
    return action_integral_numeric(radicand_coeffs(params, m, e_bar))


def _energy_bracket(params, m, target, action):
    coeffs0 = radicand_coeffs(params, m, 0.0)
    _, w_min = potential_minimum(coeffs0)
    if params.b_field == 0.0 and not params.coulomb_on:
        raise NoBoundState("no bound states without field and Coulomb attraction")

    # double down from -1, clamped at the well bottom; a deep but finite well
    # (tiny M with G > 0) would otherwise give a needlessly wide bracket
    lo = -1.0
    for _ in range(1100):
        if lo <= w_min:
            lo, f_lo = w_min, -target
            break
        f_lo = action(lo) - target
        if f_lo < 0:
            break
        lo *= 2.0
    else:
        raise NumericalError("lower energy bracket not found")

    # N underflows to zero for fields below ~1e-154; treat those as zero field
    if coeffs0.N == 0.0:
        if lo >= 0:
            raise NoBoundState("no negative energies available at zero field")
        hi = lo
        for _ in range(1000):
            hi *= 0.5
            if hi == 0.0:
                break
            f_hi = action(hi) - target
            if f_hi > 0:
                return lo, f_lo, hi, f_hi
        raise NoBoundState(f"no bound level with radial action {target} at zero field", side="outer")

    step = max(abs(lo), params.b_field, 1e-3)
    for _ in range(200):
        hi = lo + step
        f_hi = action(hi) - target
        if f_hi > 0:
            return lo, f_lo, hi, f_hi
        step *= 2.0
    raise NumericalError("upper energy bracket not found")


def solve_ebk_numeric(params: SystemParams, qn: QuantumNumbers, xtol: float = EBK_ETOL) -> SpectrumRecord:
    """Reduced energy at which the numeric radial action equals n_r + 1/2.

    The action is monotone in the energy, so the level is bracketed between
    the bottom of the effective potential and an upward (or, at zero field,
    zero-ward) doubling search, then refined with Brent's method.
    """
    target = qn.n_r + 0.5
    m = qn.m

    def action(e):
        return radial_action_at(params, m, e)

    lo, f_lo, hi, f_hi = _energy_bracket(params, m, target, action)

    def f(e):
        if e == lo:
            return f_lo
        return action(e) - target

    try:
        e_bar = brentq(f, lo, hi, xtol=xtol, rtol=_BRENT_RTOL, maxiter=300)
    except RuntimeError as exc:
        raise NumericalError(f"energy bisection failed: {exc}") from exc
    return _record(Method.EBK_NUMERIC, params, qn, e_bar)


def landau_energy_paper(params: SystemParams, qn: QuantumNumbers) -> SpectrumRecord:
    """Strong-field formula E = (B/2)(n_r + 1/2 + |m - alpha| + (m - alpha)).

    This is the residue-theorem result as derived; the exact torus quantization
    of the same problem gives (B/2)(2 n_r + 1 + |m - alpha|) for the reduced part.
    """
    if params.b_field <= 0:
        raise DomainError("the Landau formula is a strong-field limit and needs B > 0")
    e_bar = 0.5 * params.b_field * _nu(params, qn)
    return _record(Method.LANDAU_PAPER, params, qn, e_bar)


def zeeman_energy(params: SystemParams, qn: QuantumNumbers) -> SpectrumRecord:
    """Weak-field formula: anyonic Coulomb level plus the linear Zeeman shift."""
    if not params.coulomb_on:
        raise DomainError("the Zeeman formula needs the Coulomb interaction")
    nu = _nu(params, qn)
    return _record(Method.ZEEMAN, params, qn, -1.0 / (2.0 * nu * nu))


def septic_coefficients(params: SystemParams, qn: QuantumNumbers) -> tuple[float, float, float]:
    """Coefficients (A, c1, c0) of E^7 = A (E^3 + c1 E + c0)^2."""
    nu = _nu(params, qn)
    ell = angular_index(params, qn.m)
    b2 = params.b_field * params.b_field
    return -1.0 / (2.0 * nu * nu), 3.0 * b2 * ell * ell / 64.0, 5.0 * b2 / 128.0


def septic_residual(e, a, c1, c0):
    """g(E) = E^7 - A (E^3 + c1 E + c0)^2 and its derivative."""
    p = (e * e + c1) * e + c0
    e6 = e**6
    return e6 * e - a * p * p, 7.0 * e6 - 2.0 * a * p * (3.0 * e * e + c1)


def _on_branch(e, c1, c0):
    # squaring the quantization condition doubles the roots; keep E^3 + c1 E + c0 < 0
    return e < 0 and (e * e + c1) * e + c0 < 0


def _newton(a, c1, c0, guess, tol, max_iter):
    e = guess
    for _ in range(max_iter):
        g, dg = septic_residual(e, a, c1, c0)
        if dg == 0 or not math.isfinite(g):
            return None
        step = g / dg
        e -= step
        if not math.isfinite(e):
            return None
        if abs(step) <= tol:
            return e
    return None


def _bisect_near(a, c1, c0, guess, tol):
    """Sign-change bisection of g on the narrowest bracket around ``guess``."""

    def g(e):
        return septic_residual(e, a, c1, c0)[0]

    width = abs(guess) / 64.0
    while width <= 0.5 * abs(guess):
        lo, hi = guess - width, min(guess + width, 0.0)
        if g(lo) * g(hi) < 0:
            return brentq(g, lo, hi, xtol=tol, rtol=_BRENT_RTOL, maxiter=500)
        width *= 2.0
    return None


def _solve_at(a, c1, c0, guess, tol, max_iter):
    root = _newton(a, c1, c0, guess, tol, max_iter)
    if root is None or not _on_branch(root, c1, c0):
        root = _bisect_near(a, c1, c0, guess, tol)
    return root


def solve_septic(
    params: SystemParams,
    qn: QuantumNumbers,
    tol: float = SEPTIC_TOL,
    max_iter: int = SEPTIC_MAX_ITER,
    max_rel_shift: float = SEPTIC_MAX_REL_SHIFT,
) -> SpectrumRecord:
    """Root of the septic spectral equation on the weak-field branch.

    The physical root is the one that tends to E = A as B -> 0. Newton's method
    is started from A; if the result is off the branch the field-squared
    coefficients are switched on gradually, following the root from A with
    Newton steps (sign-change bisection as fallback). A fold of the branch or a
    shift beyond ``max_rel_shift * |A|`` raises :class:`NoPhysicalRoot`.
    """
    if not params.coulomb_on:
        raise DomainError("the septic equation needs the Coulomb interaction")
    a, c1, c0 = septic_coefficients(params, qn)

    lam, e, step = 0.0, a, 1.0
    while lam < 1.0:
        nxt = min(1.0, lam + step)
        root = _solve_at(a, c1 * nxt, c0 * nxt, e, tol, max_iter)
        if root is not None and _on_branch(root, c1 * nxt, c0 * nxt) and abs(root - e) <= 0.25 * abs(e):
            lam, e = nxt, root
            step = min(2.0 * step, 1.0)
            continue
        step *= 0.5
        if step < 2.0**-30:
            raise NoPhysicalRoot(
                f"no negative root on the weak-field branch for B={params.b_field} "
                f"(branch lost at {math.sqrt(lam):.4g} of the field)"
            )
    if abs(e - a) > max_rel_shift * abs(a):
        raise NoPhysicalRoot(
            f"septic root {e:.6g} moved more than {max_rel_shift:g}|A| from A={a:.6g}; "
            "field outside the weak-field range"
        )
    return _record(Method.SEPTIC, params, qn, e)
