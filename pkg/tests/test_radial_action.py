import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from anyon_ebk.errors import DomainError, NoBoundState, NumericalError
from anyon_ebk.model import RadicandCoeffs, radicand
from anyon_ebk.radial_action import (
    action_integral_numeric,
    action_second_order,
    contour_coulomb,
    contour_magnetic_paper,
    correction_integral,
    oscillator_action,
    potential_minimum,
    turning_points,
)

# (F, G, M, N) -> (I_r, r1, r2); 40-digit mpmath tanh-sinh quadrature and polynomial roots
REFERENCE = [
    ((0.5, 1, 0.5, 0.01), 0.62812658812383851501, 0.26797896703144115956, 3.0874808029286750797),
    ((1.0, 1, 0.25, 0.0025), 0.4973951471428498197, 0.13397506123954777894, 1.8489877920257328935),
    ((0.2, 1, 1.0, 0.0004), 1.144997692072677802, 0.52788140826214977536, 8.2656518295884193738),
    ((-1.0, 1, 0.0, 0.25), 1.5258070028421346186, 0.0, 2.6494359144894920519),
    ((-3.0, 0, 1.0, 1.0), 0.25, 0.6180339887498948482, 1.6180339887498948482),
    ((0.3, 1, 0, 0.001), 1.7598821466181634924, 0.0, 5.960716379833215383),
    ((-0.5, 1, 2.25, 0.04), 0.78236325222606093725, 0.92552572945039073426, 4.5567251029845756788),
]


@pytest.mark.parametrize("coeffs,action,r1,r2", REFERENCE)
def test_against_high_precision_reference(coeffs, action, r1, r2):
    c = RadicandCoeffs(*coeffs)
    tp = turning_points(c)
    assert tp.r1 == pytest.approx(r1, rel=1e-13, abs=1e-300)
    assert tp.r2 == pytest.approx(r2, rel=1e-13)
    assert action_integral_numeric(c) == pytest.approx(action, rel=1e-12)


def _mp_action(c):
    tp = turning_points(c)
    f = lambda r: mpmath.sqrt(max(-c.F + 2 * c.G / r - c.M / r**2 - c.N * r**2, 0))
    return float(mpmath.quad(f, [tp.r1, 0.5 * (tp.r1 + tp.r2), tp.r2]) / mpmath.pi)


@settings(max_examples=25, deadline=None)
@given(F=st.floats(0.05, 5.0), frac=st.floats(0.0, 0.98), n=st.floats(0.0, 0.01))
def test_matches_brute_force_tanh_sinh(F, frac, n):
    c = RadicandCoeffs(F, 1.0, frac / F, n)
    try:
        turning_points(c)
    except NoBoundState:
        assume(False)
    assert action_integral_numeric(c) == pytest.approx(_mp_action(c), rel=1e-9, abs=1e-12)


@given(F=st.floats(0.1, 10.0), frac=st.floats(0.0, 0.999))
def test_coulomb_closed_form(F, frac):
    c = RadicandCoeffs(F, 1.0, frac / F, 0.0)
    assert 2 * math.pi * action_integral_numeric(c) == pytest.approx(contour_coulomb(c), abs=1e-10)


@given(F=st.floats(0.1, 10.0), frac=st.floats(0.0, 0.999))
def test_turning_points_are_roots(F, frac):
    c = RadicandCoeffs(F, 1.0, frac / F, 0.0)
    tp = turning_points(c)
    # 1/r roots of -F + 2G/r - M/r^2 in closed form
    disc = math.sqrt(1.0 - F * c.M)
    assert tp.r2 == pytest.approx((1.0 + disc) / F, rel=1e-12)
    if c.M > 0:
        assert tp.r1 == pytest.approx(c.M / (1.0 + disc), rel=1e-12)
    else:
        assert tp.r1 == 0.0


@given(b=st.floats(0.1, 5.0), ell=st.floats(0.0, 4.0), excess=st.floats(0.01, 5.0))
def test_pure_magnetic_is_oscillator(b, ell, excess):
    n = b * b / 4
    e = math.sqrt(n) * ell + excess * b
    c = RadicandCoeffs(-2 * e, 0.0, ell * ell, n)
    numeric = action_integral_numeric(c)
    assert numeric == pytest.approx(oscillator_action(c), rel=1e-10, abs=1e-12)
    assert contour_magnetic_paper(c) / (2 * math.pi * numeric) == pytest.approx(2.0, rel=1e-9)


@settings(deadline=None)
@given(F=st.floats(0.1, 5.0), frac=st.floats(0.0, 0.9), n1=st.floats(1e-8, 1e-4), n2=st.floats(1e-8, 1e-4))
def test_action_decreases_with_field(F, frac, n1, n2):
    assume(abs(n1 - n2) > 1e-9)
    lo, hi = sorted((n1, n2))
    a = action_integral_numeric(RadicandCoeffs(F, 1.0, frac / F, lo))
    b = action_integral_numeric(RadicandCoeffs(F, 1.0, frac / F, hi))
    assert b < a


@settings(deadline=None)
@given(F=st.floats(0.2, 5.0), frac=st.floats(0.0, 0.9))
def test_action_increases_with_energy(F, frac):
    m = frac / 5.0
    a = action_integral_numeric(RadicandCoeffs(F, 1.0, m, 1e-4))
    b = action_integral_numeric(RadicandCoeffs(F * 0.9, 1.0, m, 1e-4))
    assert b > a


def test_second_order_expansion_error_is_quadratic_in_n():
    base = dict(F=0.5, G=1.0, M=0.25)
    errs = []
    for n in (1e-5, 2e-5):
        c = RadicandCoeffs(N=n, **base)
        errs.append(abs(action_second_order(c) - action_integral_numeric(c)))
    assert 3.0 < errs[1] / errs[0] < 5.0


def test_second_order_reduces_to_coulomb():
    c = RadicandCoeffs(0.5, 1.0, 0.25, 0.0)
    assert action_second_order(c) == contour_coulomb(c) / (2 * math.pi)


def test_correction_integral_against_mpmath():
    mpmath.mp.dps = 30
    F, G, M = mpmath.mpf("0.7"), mpmath.mpf(1), mpmath.mpf("0.5")
    disc = mpmath.sqrt(G * G - F * M)
    mid, half = G / F, disc / F
    # r = mid + half sin(t) removes both inverse square-root endpoints
    ref = 2 * mpmath.quad(lambda t: (mid + half * mpmath.sin(t)) ** 3 / mpmath.sqrt(F), [-mpmath.pi / 2, mpmath.pi / 2])
    mpmath.mp.dps = 15
    c = RadicandCoeffs(0.7, 1.0, 0.5, 0.0)
    assert correction_integral(c) == pytest.approx(float(ref), rel=1e-10)


def test_closed_form_frozen_values():
    assert contour_coulomb(RadicandCoeffs(0.25, 1.0, 1.0, 0.0)) == pytest.approx(2 * math.pi)
    assert contour_magnetic_paper(RadicandCoeffs(-4.0, 0.0, 1.0, 1.0)) == pytest.approx(2 * math.pi)
    # -2 pi (3 - 5) / (2 sqrt(1)) at F = G = M = 1
    assert correction_integral(RadicandCoeffs(1.0, 1.0, 1.0, 0.0)) == pytest.approx(2 * math.pi)


@pytest.mark.parametrize(
    "fn,coeffs",
    [
        (contour_coulomb, (0.5, 1.0, 0.25, 0.1)),
        (contour_coulomb, (-0.5, 1.0, 0.25, 0.0)),
        (contour_coulomb, (2.0, 1.0, 1.0, 0.0)),
        (contour_magnetic_paper, (-1.0, 1.0, 0.25, 0.1)),
        (contour_magnetic_paper, (1.0, 0.0, 0.25, 0.1)),
        (contour_magnetic_paper, (-0.1, 0.0, 4.0, 1.0)),
        (correction_integral, (0.0, 1.0, 0.25, 0.0)),
        (oscillator_action, (-1.0, 1.0, 0.0, 0.1)),
    ],
)
def test_closed_form_domain_errors(fn, coeffs):
    with pytest.raises(DomainError):
        fn(RadicandCoeffs(*coeffs))


def test_degenerate_energy_gives_zero_action():
    c0 = RadicandCoeffs(0.0, 1.0, 1.0, 0.0)
    r, w = potential_minimum(c0)
    c = RadicandCoeffs(-2 * w, 1.0, 1.0, 0.0)
    assert r == pytest.approx(1.0)
    assert turning_points(c).degenerate
    assert action_integral_numeric(c) == 0.0


def test_potential_minimum_cases():
    assert potential_minimum(RadicandCoeffs(0, 1, 0, 0.1)) == (0.0, -math.inf)
    assert potential_minimum(RadicandCoeffs(0, 0, 0, 0.1)) == (0.0, 0.0)
    r, w = potential_minimum(RadicandCoeffs(0, 0, 1.0, 1.0))
    assert (r, w) == (pytest.approx(1.0), pytest.approx(1.0))
    with pytest.raises(NoBoundState):
        potential_minimum(RadicandCoeffs(0, 0, 1.0, 0.0))


@pytest.mark.parametrize(
    "coeffs,side",
    [((3.0, 1.0, 1.0, 0.0), "both"), ((-0.1, 1.0, 0.5, 0.0), "outer"), ((1.0, 0.0, 1.0, 0.0), "both")],
)
def test_no_bound_state(coeffs, side):
    with pytest.raises(NoBoundState) as info:
        turning_points(RadicandCoeffs(*coeffs))
    assert info.value.side == side


def test_unconverged_quadrature_reports_estimate():
    c = RadicandCoeffs(0.5, 1.0, 0.25, 0.0)
    with pytest.raises(NumericalError) as info:
        action_integral_numeric(c, max_order=32)
    assert info.value.estimate == pytest.approx(contour_coulomb(c) / (2 * math.pi), rel=1e-10)


def test_radicand_vanishes_at_turning_points():
    c = RadicandCoeffs(0.5, 1.0, 0.5, 0.01)
    tp = turning_points(c)
    np.testing.assert_allclose(radicand(np.array([tp.r1, tp.r2]), c), 0.0, atol=1e-12)
