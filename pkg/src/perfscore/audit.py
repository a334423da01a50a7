"""Expected audit cost of a misreport.

The divergence is the quadratic Bregman divergence generated by
F(t) = (q/2) t^2, i.e. D(p_hat, p) = (q/2)(p_hat - p)^2, and the expected
cost is D times the penalty c for a failed audit.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._domain import DomainError, as_float_array, check_closed, unwrap


@dataclass(frozen=True)
class AuditCost:
    q: float = 2.0
    c: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "q", float(self.q))
        object.__setattr__(self, "c", float(self.c))
        if not 0.0 <= self.q <= 2.0:
            raise DomainError(f"q={self.q!r} outside [0, 2]")
        if not self.c >= 0.0:
            raise DomainError(f"c={self.c!r} must be nonnegative")


def divergence(audit: AuditCost, p_hat, p):
    p_hat, p = as_float_array(p_hat), as_float_array(p)
    check_closed("p_hat", p_hat)
    check_closed("p", p)
    return unwrap(0.5 * audit.q * (p_hat - p) ** 2)


def expected_cost(audit: AuditCost, p_hat, p):
    return unwrap(as_float_array(divergence(audit, p_hat, p)) * audit.c)


def expected_cost_derivative(audit: AuditCost, p_hat, p):
    """d/dp_hat of :func:`expected_cost`: q (p_hat - p) c."""
    p_hat, p = as_float_array(p_hat), as_float_array(p)
    check_closed("p_hat", p_hat)
    check_closed("p", p)
    return unwrap(audit.q * (p_hat - p) * audit.c)
