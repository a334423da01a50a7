"""Binary scoring rules.

A rule ``f`` pays ``f(t)`` when the event occurs and ``f(1 - t)`` when it
does not, so every rule here is a function of a single probability.  Higher
is better.  All functions accept floats or numpy arrays.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._domain import SLACK, DomainError, as_float_array, check_open, unwrap

# The log rule is evaluated on [LOG_FLOOR, 1 - LOG_FLOOR] only.
LOG_FLOOR = 1e-5


class Family(enum.Enum):
    QUADRATIC = "quadratic"
    SPHERICAL = "spherical"
    LOGARITHMIC = "log"
    CONSTANT = "constant"


FAMILY_ORDER = {fam: i for i, fam in enumerate(Family)}


@dataclass(frozen=True)
class ScoringRule:
    """A built-in scoring rule. ``constant_level`` is only read for ``CONSTANT``."""

    family: Family
    constant_level: float = 1.0

    def __post_init__(self):
        if not isinstance(self.family, Family):
            object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "constant_level", float(self.constant_level))
        if self.family is Family.CONSTANT and not self.constant_level > 0:
            raise DomainError(f"constant rule needs k > 0, got {self.constant_level!r}")

    @property
    def is_proper(self) -> bool:
        return self.family is not Family.CONSTANT

    @property
    def label(self) -> str:
        if self.family is Family.CONSTANT:
            return f"constant:{self.constant_level!r}"
        return self.family.value

    @classmethod
    def from_label(cls, label: str) -> "ScoringRule":
        """Inverse of :attr:`label`; a bare ``"constant"`` means k = 1."""
        name, _, level = label.partition(":")
        if name == Family.CONSTANT.value:
            return cls(Family.CONSTANT, float(level) if level else 1.0)
        return cls(Family(name))

    def domain(self) -> tuple[float, float]:
        """Closed interval on which the rule may be evaluated, or the open unit interval."""
        if self.family is Family.LOGARITHMIC:
            return LOG_FLOOR, 1.0 - LOG_FLOOR
        return 0.0, 1.0


QUADRATIC = ScoringRule(Family.QUADRATIC)
SPHERICAL = ScoringRule(Family.SPHERICAL)
LOGARITHMIC = ScoringRule(Family.LOGARITHMIC)
PROPER_RULES = (QUADRATIC, SPHERICAL, LOGARITHMIC)


def constant(k: float = 1.0) -> ScoringRule:
    return ScoringRule(Family.CONSTANT, k)


def _checked(rule: ScoringRule, t) -> np.ndarray:
    t = as_float_array(t)
    check_open("t", t)
    if rule.family is Family.LOGARITHMIC:
        lo, hi = rule.domain()
        bad = (t < lo - SLACK) | (t > hi + SLACK)
        if np.any(bad):
            value = t if t.ndim == 0 else t[bad].flat[0]
            raise DomainError(f"log rule evaluated at t={float(value)!r}, outside [{lo}, {hi}]")
    return t


def score(rule: ScoringRule, t):
    """Value f(t) of the rule at probability t."""
    t = _checked(rule, t)
    fam = rule.family
    if fam is Family.QUADRATIC:
        out = -((1.0 - t) ** 2)
    elif fam is Family.SPHERICAL:
        out = t / np.sqrt(t * t + (1.0 - t) ** 2)
    elif fam is Family.LOGARITHMIC:
        out = np.log(t)
    else:
        out = np.full_like(t, rule.constant_level)
    return unwrap(out)


def score_derivative(rule: ScoringRule, t):
    """Closed-form f'(t)."""
    t = _checked(rule, t)
    fam = rule.family
    if fam is Family.QUADRATIC:
        out = 2.0 * (1.0 - t)
    elif fam is Family.SPHERICAL:
        # d/dt t/N with N = sqrt(t^2 + (1-t)^2) simplifies to (1-t)/N^3
        norm = np.sqrt(t * t + (1.0 - t) ** 2)
        out = (1.0 - t) / norm**3
    elif fam is Family.LOGARITHMIC:
        out = 1.0 / t
    else:
        out = np.zeros_like(t)
    return unwrap(out)


def check_neyman_identity(rule: ScoringRule, samples: int) -> float:
    """Largest |t f'(t) - (1-t) f'(1-t)| over ``samples`` cell midpoints of (1e-5, 1-1e-5).

    Twice-differentiable strictly proper rules satisfy the identity exactly,
    so the residual only reflects rounding.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    lo, hi = LOG_FLOOR, 1.0 - LOG_FLOOR
    t = lo + (np.arange(samples) + 0.5) * (hi - lo) / samples
    lhs = t * score_derivative(rule, t)
    rhs = (1.0 - t) * score_derivative(rule, 1.0 - t)
    return float(np.max(np.abs(lhs - rhs)))
