"""Performativity maps: how a published forecast moves the true probability."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ._domain import DomainError, as_float_array, check_closed, unwrap


class MapKind(enum.Enum):
    IDENTITY = "identity"
    DRIFT = "drift"
    REVERSION = "reversion"


@dataclass(frozen=True)
class PerformativityMap:
    kind: MapKind
    alpha: float = 0.0  # drift weight, ignored by other kinds

    def __post_init__(self):
        if not isinstance(self.kind, MapKind):
            object.__setattr__(self, "kind", MapKind(self.kind))
        object.__setattr__(self, "alpha", float(self.alpha))
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha={self.alpha!r} outside [0, 1]")


IDENTITY = PerformativityMap(MapKind.IDENTITY)
REVERSION = PerformativityMap(MapKind.REVERSION)


def drift(alpha: float) -> PerformativityMap:
    return PerformativityMap(MapKind.DRIFT, alpha)


def extremeness(p_hat):
    """4 (p_hat - 1/2)^2: 0 at a coin-flip forecast, 1 at a certain one."""
    return 4.0 * (p_hat - 0.5) ** 2


def apply(phi: PerformativityMap, p_hat, p):
    """Post-forecast probability of the event.

    Drift pulls p toward the forecast with weight alpha; reversion pulls it
    toward 1/2 in proportion to how extreme the forecast is.
    """
    p_hat, p = as_float_array(p_hat), as_float_array(p)
    check_closed("p_hat", p_hat)
    check_closed("p", p)
    if phi.kind is MapKind.IDENTITY:
        out = p + 0.0 * p_hat
    elif phi.kind is MapKind.DRIFT:
        # p + alpha (p_hat - p) == alpha p_hat + (1 - alpha) p, exact at p_hat == p
        out = p + phi.alpha * (p_hat - p)
    else:
        # w/2 + (1 - w) p, written so p == 1/2 and w == 0 are fixed exactly
        w = extremeness(p_hat)
        out = p + w * (0.5 - p)
    return unwrap(out)


def apply_derivative(phi: PerformativityMap, p_hat, p):
    """Partial derivative of :func:`apply` in the forecast."""
    p_hat, p = as_float_array(p_hat), as_float_array(p)
    check_closed("p_hat", p_hat)
    check_closed("p", p)
    if phi.kind is MapKind.IDENTITY:
        out = 0.0 * (p_hat + p)
    elif phi.kind is MapKind.DRIFT:
        out = phi.alpha + 0.0 * (p_hat + p)
    else:
        out = 4.0 * (p_hat - 0.5) + p * (4.0 - 8.0 * p_hat)
    return unwrap(out)
