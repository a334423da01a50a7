"""Expected reward of the expert and its derivative in the forecast."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._domain import as_float_array, check_closed, unwrap
from .audit import AuditCost, expected_cost, expected_cost_derivative
from .performativity import MapKind, PerformativityMap, apply, apply_derivative
from .scoring_rules import ScoringRule, score, score_derivative


@dataclass(frozen=True)
class GameSpec:
    """One prediction game: rule, performativity map, audit, and prior truth p."""

    rule: ScoringRule
    map: PerformativityMap
    audit: AuditCost
    p: float

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        check_closed("p", as_float_array(self.p))

    def with_p(self, p: float) -> "GameSpec":
        return GameSpec(self.rule, self.map, self.audit, p)


def reward(game: GameSpec, p_hat):
    """phi(p_hat) f(p_hat) + (1 - phi(p_hat)) f(1 - p_hat) - D(p_hat, p) c."""
    p_hat = as_float_array(p_hat)
    moved = apply(game.map, p_hat, game.p)
    out = (
        moved * score(game.rule, p_hat)
        + (1.0 - moved) * score(game.rule, 1.0 - p_hat)
        - expected_cost(game.audit, p_hat, game.p)
    )
    return unwrap(np.asarray(out))


def reward_derivative(game: GameSpec, p_hat):
    """Chain-rule derivative of :func:`reward`, valid for every rule and map."""
    p_hat = as_float_array(p_hat)
    moved = apply(game.map, p_hat, game.p)
    slope = apply_derivative(game.map, p_hat, game.p)
    rule = game.rule
    out = (
        slope * (score(rule, p_hat) - score(rule, 1.0 - p_hat))
        + moved * score_derivative(rule, p_hat)
        - (1.0 - moved) * score_derivative(rule, 1.0 - p_hat)
        - expected_cost_derivative(game.audit, p_hat, game.p)
    )
    return unwrap(np.asarray(out))


def drift_derivative_lemma(game: GameSpec, p_hat):
    """Reward derivative for drift games with a proper rule, in simplified form.

    Uses t f'(t) = (1-t) f'(1-t) to fold both f' terms into one:

        alpha (f(t) - f(1-t)) + f'(t) (phi(t) - t) / (1 - t) - q (t - p) c

    Independent of :func:`reward_derivative`, which is the point.
    """
    if game.map.kind is not MapKind.DRIFT:
        raise ValueError(f"drift lemma needs a drift map, got {game.map.kind.value}")
    if not game.rule.is_proper:
        raise ValueError("drift lemma needs a strictly proper rule")
    p_hat = as_float_array(p_hat)
    alpha, p = game.map.alpha, game.p
    a = game.audit
    rule = game.rule
    out = (
        alpha * (score(rule, p_hat) - score(rule, 1.0 - p_hat))
        + score_derivative(rule, p_hat) * (alpha * p_hat + (1.0 - alpha) * p - p_hat) / (1.0 - p_hat)
        - a.q * (p_hat - p) * a.c
    )
    return unwrap(np.asarray(out))


def stationarity_residual_at_truth(game: GameSpec) -> float:
    """Reward slope at the truthful forecast; nonzero means truth is not a local optimum."""
    return float(reward_derivative(game, game.p))
