import numpy as np
import pytest
from hypothesis import given, strategies as st

from perfscore import AuditCost, DomainError, expected_cost, expected_cost_derivative

unit = st.floats(min_value=0.0, max_value=1.0)


def test_cost_examples():
    assert expected_cost(AuditCost(2, 1), 0.3, 0.3) == 0.0
    assert expected_cost(AuditCost(2, 1), 0.8, 0.3) == pytest.approx(0.25, abs=1e-15)
    assert expected_cost(AuditCost(2, 10), 0.8, 0.3) == pytest.approx(2.5, abs=1e-14)


def test_derivative_examples():
    assert expected_cost_derivative(AuditCost(2, 1), 0.4, 0.4) == 0.0
    assert expected_cost_derivative(AuditCost(2, 1), 0.9, 0.4) == pytest.approx(1.0, abs=1e-15)
    assert expected_cost_derivative(AuditCost(0, 5), 0.9, 0.4) == 0.0


@pytest.mark.parametrize("q,c", [(-0.1, 1), (2.1, 1), (1, -1)])
def test_parameter_domain(q, c):
    with pytest.raises(DomainError):
        AuditCost(q, c)


def test_zero_cost_is_allowed():
    assert expected_cost(AuditCost(2, 0), 0.9, 0.1) == 0.0


def test_probability_domain():
    with pytest.raises(DomainError):
        expected_cost(AuditCost(), 1.2, 0.5)
    with pytest.raises(DomainError):
        expected_cost_derivative(AuditCost(), 0.5, -0.2)


def test_zero_exactly_at_truth_on_grid():
    u = np.linspace(0, 1, 101)
    ph, pp = np.meshgrid(u, u)
    cost = expected_cost(AuditCost(2, 1), ph, pp)
    assert np.all(cost >= 0)
    assert np.array_equal(cost == 0, ph == pp)


@given(a=unit, b=unit, p=unit)
def test_strictly_convex_in_forecast(a, b, p):
    if abs(a - b) < 1e-6:
        return
    audit = AuditCost(2, 1)
    mid = expected_cost(audit, (a + b) / 2, p)
    assert mid < (expected_cost(audit, a, p) + expected_cost(audit, b, p)) / 2


@given(x=st.floats(0.01, 0.99), p=unit, q=st.floats(0, 2), c=st.floats(0, 10))
def test_derivative_matches_finite_difference(x, p, q, c):
    audit = AuditCost(q, c)
    h = 1e-6
    fd = (expected_cost(audit, x + h, p) - expected_cost(audit, x - h, p)) / (2 * h)
    assert abs(fd - expected_cost_derivative(audit, x, p)) <= 1e-8
