import numpy as np
import pytest
from hypothesis import given, strategies as st

from perfscore import IDENTITY, REVERSION, DomainError, MapKind, PerformativityMap, apply, apply_derivative, drift

unit = st.floats(min_value=0.0, max_value=1.0)


def test_apply_examples():
    assert apply(drift(0.0), 0.9, 0.3) == 0.3
    assert apply(drift(0.5), 0.9, 0.3) == pytest.approx(0.6, abs=1e-15)
    assert apply(REVERSION, 0.75, 0.6) == pytest.approx(0.575, abs=1e-15)
    assert apply(REVERSION, 1.0, 0.2) == 0.5
    assert apply(IDENTITY, 0.9, 0.3) == 0.3


def test_derivative_examples():
    assert apply_derivative(drift(0.5), 0.1, 0.8) == 0.5
    assert apply_derivative(REVERSION, 0.5, 0.5) == 0.0
    assert apply_derivative(REVERSION, 0.75, 0.6) == pytest.approx(-0.2, abs=1e-15)
    assert apply_derivative(IDENTITY, 0.2, 0.4) == 0.0


def test_alpha_must_lie_in_unit_interval():
    with pytest.raises(DomainError):
        drift(1.5)
    with pytest.raises(DomainError):
        drift(-0.1)


@pytest.mark.parametrize("args", [(-0.1, 0.5), (0.5, 1.1), (np.array([0.2, 2.0]), 0.5)])
def test_domain_errors(args):
    with pytest.raises(DomainError):
        apply(REVERSION, *args)
    with pytest.raises(DomainError):
        apply_derivative(drift(0.3), *args)


def test_range_preserved_on_grid():
    u = np.linspace(0, 1, 101)
    ph, pp = np.meshgrid(u, u)
    for m in (IDENTITY, drift(0.0), drift(0.37), drift(1.0), REVERSION):
        out = apply(m, ph, pp)
        assert out.min() >= 0.0 and out.max() <= 1.0


@given(p=unit, alpha=unit)
def test_drift_fixed_point_is_exact(p, alpha):
    assert apply(drift(alpha), p, p) == p


@given(t=unit, p=unit)
def test_reversion_midpoint_identities(t, p):
    assert apply(REVERSION, 0.5, p) == p
    assert apply(REVERSION, t, 0.5) == 0.5


@pytest.mark.parametrize("m", [IDENTITY, drift(0.2), drift(0.8), REVERSION], ids=lambda m: f"{m.kind.value}{m.alpha}")
def test_derivative_matches_finite_difference(m):
    u = np.linspace(0.01, 0.99, 99)
    ph, pp = np.meshgrid(u, u)
    h = 1e-6
    fd = (apply(m, ph + h, pp) - apply(m, ph - h, pp)) / (2 * h)
    assert np.max(np.abs(fd - apply_derivative(m, ph, pp))) <= 1e-6


def test_reversion_derivative_matches_expanded_polynomial():
    # phi = 2 t^2 + 1/2 - 2 t + 4 p t - 4 p t^2, differentiated by hand
    t, p = np.meshgrid(np.linspace(0, 1, 11), np.linspace(0, 1, 11))
    assert np.allclose(apply_derivative(REVERSION, t, p), 4 * t - 2 + 4 * p - 8 * p * t, atol=1e-14)
    assert np.allclose(apply(REVERSION, t, p), 2 * t**2 + 0.5 - 2 * t + 4 * p * t - 4 * p * t**2, atol=1e-14)


def test_kind_coercion():
    assert PerformativityMap("drift", 0.4) == drift(0.4)
    assert PerformativityMap(MapKind.REVERSION) == REVERSION
