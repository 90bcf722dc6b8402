import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from anyon_ebk.errors import DomainError
from anyon_ebk.model import (
    QuantumNumbers,
    RadicandCoeffs,
    SystemParams,
    angular_index,
    effective_potential,
    radicand,
    radicand_coeffs,
    zeeman_shift,
)

finite = st.floats(-5, 5, allow_nan=False)
radius = st.floats(1e-3, 50.0)


def test_defaults():
    p = SystemParams()
    assert (p.alpha, p.b_field, p.coulomb_on) == (0.0, 0.0, True)
    assert p.coulomb_strength == 1.0
    assert SystemParams(coulomb_on=False).coulomb_strength == 0.0


@pytest.mark.parametrize("kwargs", [{"b_field": -0.1}, {"b_field": math.inf}, {"alpha": math.nan}])
def test_params_rejected(kwargs):
    with pytest.raises(DomainError):
        SystemParams(**kwargs)


@pytest.mark.parametrize("n_r,m", [(-1, 0), (0.5, 0), (0, 1.5)])
def test_quantum_numbers_rejected(n_r, m):
    with pytest.raises(DomainError):
        QuantumNumbers(n_r, m)


@pytest.mark.parametrize("F,G,M,N", [(1, 1, -1, 0), (1, 1, 0, -1), (1, -1, 0, 0)])
def test_coeffs_rejected(F, G, M, N):
    with pytest.raises(DomainError):
        RadicandCoeffs(F, G, M, N)


def test_params_frozen():
    with pytest.raises(AttributeError):
        SystemParams().alpha = 1.0


def test_effective_potential_values():
    p = SystemParams(alpha=0.5, b_field=2.0)
    # (0.5)^2/2 - 1 + 4/8 at r = 1
    assert effective_potential(1.0, p, 1) == pytest.approx(-0.375, abs=1e-15)
    r = np.array([0.5, 2.0])
    np.testing.assert_allclose(effective_potential(r, p, 1), [0.5 - 2 + 0.125, 0.03125 - 0.5 + 2.0], rtol=1e-15)


@pytest.mark.parametrize("r", [0.0, -1.0, [1.0, 0.0]])
def test_effective_potential_rejects_nonpositive(r):
    with pytest.raises(DomainError):
        effective_potential(r, SystemParams(), 0)


def test_radicand_coeffs_values():
    c = radicand_coeffs(SystemParams(alpha=0.25, b_field=0.4), 2, -0.3)
    assert (c.F, c.G, c.M) == (0.6, 1.0, 1.75**2)
    assert c.N == pytest.approx(0.04, abs=1e-17)
    assert c.e_bar == pytest.approx(-0.3)
    assert radicand_coeffs(SystemParams(coulomb_on=False), 0, -1.0).G == 0.0


def test_zeeman_shift():
    assert zeeman_shift(SystemParams(0.5, 0.2), 2) == pytest.approx(0.15)
    assert zeeman_shift(SystemParams(0.5, 0.0), 2) == 0.0


@given(alpha=finite, b=st.floats(0, 3), m=st.integers(-6, 6), e=st.floats(-3, 3), r=radius)
def test_radicand_is_twice_kinetic_energy(alpha, b, m, e, r):
    p = SystemParams(alpha, b)
    c = radicand_coeffs(p, m, e)
    lhs = radicand(r, c)
    rhs = 2.0 * (e - effective_potential(r, p, m))
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-9 * (1 + abs(rhs)))


@given(alpha=finite, b=st.floats(0, 3), m=st.integers(-6, 6), r=radius)
def test_transmutation_of_potential(alpha, b, m, r):
    p0, p1 = SystemParams(alpha, b), SystemParams(alpha + 1, b)
    assert angular_index(p0, m) == pytest.approx(angular_index(p1, m + 1), abs=1e-14)
    assert effective_potential(r, p0, m) == pytest.approx(effective_potential(r, p1, m + 1), rel=1e-12, abs=1e-12)
