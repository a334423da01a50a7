import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from perfscore import LOGARITHMIC, PROPER_RULES, QUADRATIC, SPHERICAL, DomainError, ScoringRule, Family
from perfscore.scoring_rules import check_neyman_identity, constant, score, score_derivative

ALL = (*PROPER_RULES, constant(1.0))
interior = st.floats(min_value=1e-5, max_value=1 - 1e-5)


def test_score_examples():
    assert score(QUADRATIC, 0.5) == -0.25
    assert score(QUADRATIC, 0.75) == pytest.approx(-0.0625, abs=1e-15)
    assert score(constant(1.0), 0.123) == 1.0
    assert score(LOGARITHMIC, 1.0 - 1e-5) == pytest.approx(-1.000005e-5, rel=1e-6)


def test_derivative_examples():
    assert score_derivative(QUADRATIC, 0.75) == pytest.approx(0.5, abs=1e-15)
    assert score_derivative(LOGARITHMIC, 0.25) == 4.0
    assert score_derivative(constant(1.0), 0.3) == 0.0


def test_spherical_derivative_matches_symbolic():
    t = sp.symbols("t")
    expr = sp.diff(t / sp.sqrt(t**2 + (1 - t) ** 2), t)
    f = sp.lambdify(t, expr)
    for x in np.linspace(0.01, 0.99, 37):
        assert score_derivative(SPHERICAL, x) == pytest.approx(f(x), rel=1e-12)


def test_spherical_satisfies_neyman_identity_symbolically():
    t = sp.symbols("t", positive=True)
    f = t / sp.sqrt(t**2 + (1 - t) ** 2)
    fp = sp.diff(f, t)
    assert sp.simplify(t * fp - (1 - t) * fp.subs(t, 1 - t)) == 0


@pytest.mark.parametrize("rule", ALL, ids=lambda r: r.label)
def test_neyman_identity(rule):
    assert check_neyman_identity(rule, 1000) <= 1e-9


def test_neyman_constant_is_exactly_zero():
    assert check_neyman_identity(constant(3.0), 10) == 0.0


def test_neyman_requires_a_sample():
    with pytest.raises(ValueError):
        check_neyman_identity(QUADRATIC, 0)


@pytest.mark.parametrize("rule", ALL, ids=lambda r: r.label)
@pytest.mark.parametrize("t", [0.0, 1.0, -0.1, 1.5])
def test_domain_errors(rule, t):
    with pytest.raises(DomainError):
        score(rule, t)
    with pytest.raises(DomainError):
        score_derivative(rule, t)


def test_log_rule_rejects_points_below_the_floor():
    with pytest.raises(DomainError):
        score(LOGARITHMIC, 1e-6)
    with pytest.raises(DomainError):
        score(LOGARITHMIC, np.array([0.5, 1 - 1e-7]))


def test_log_rule_accepts_mirrored_grid_endpoint():
    assert score(LOGARITHMIC, 1 - (1 - 1e-5)) == pytest.approx(math.log(1e-5))


def test_constant_needs_positive_level():
    with pytest.raises(DomainError):
        constant(0.0)
    with pytest.raises(DomainError):
        constant(-1.0)


@pytest.mark.parametrize("label", ["quadratic", "spherical", "log", "constant:2.5"])
def test_label_round_trip(label):
    assert ScoringRule.from_label(label).label == label


def test_array_and_scalar_agree():
    xs = np.linspace(0.1, 0.9, 9)
    for rule in ALL:
        assert np.array_equal(score(rule, xs), [score(rule, float(x)) for x in xs])
    assert isinstance(score(QUADRATIC, 0.3), float)


@pytest.mark.parametrize("rule", PROPER_RULES, ids=lambda r: r.label)
@given(a=interior, b=interior)
def test_proper_rules_strictly_increasing(rule, a, b):
    # below ~1e-9 apart the scores can round to the same double
    if abs(a - b) < 1e-9:
        return
    lo, hi = min(a, b), max(a, b)
    assert score(rule, hi) > score(rule, lo)


@pytest.mark.parametrize("rule", ALL, ids=lambda r: r.label)
@given(t=interior)
def test_neyman_identity_pointwise(rule, t):
    lhs = t * score_derivative(rule, t)
    rhs = (1 - t) * score_derivative(rule, 1 - t)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


@pytest.mark.parametrize("rule", ALL, ids=lambda r: r.label)
@given(t=st.floats(min_value=0.01, max_value=0.99))
def test_derivative_matches_central_difference(rule, t):
    h = 1e-6
    fd = (score(rule, t + h) - score(rule, t - h)) / (2 * h)
    exact = score_derivative(rule, t)
    assert abs(exact - fd) <= 1e-4 * max(1.0, abs(exact))


@pytest.mark.parametrize("rule", PROPER_RULES, ids=lambda r: r.label)
@pytest.mark.parametrize("p", [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
def test_strictly_proper_on_the_grid(rule, p):
    xs = np.linspace(1e-5, 1 - 1e-5, 500)
    expected = p * score(rule, xs) + (1 - p) * score(rule, 1 - xs)
    assert np.argmax(expected) == np.argmin(np.abs(xs - p))


def test_family_coercion_from_string():
    assert ScoringRule("log") == LOGARITHMIC
    assert ScoringRule(Family.CONSTANT, 2).constant_level == 2.0
