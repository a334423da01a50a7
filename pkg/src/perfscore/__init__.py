"""Scoring rules under performative prediction with audits.

An expert publishes a forecast of a binary event; the forecast moves the
event's true probability, and misreports risk an audit penalty.  This
package computes the expert's expected reward, its optimal forecast, and
whether truthful reporting is incentive compatible.
"""

from ._domain import DomainError
from .audit import AuditCost, expected_cost, expected_cost_derivative
from .optimize import (
    DEFAULT_GRID,
    ConcavityViolation,
    GridSpec,
    OptimumReport,
    Verdict,
    check_incentive_compatibility,
    closed_form_quadratic_drift,
    grid_argmax,
    refine_argmax,
)
from .performativity import IDENTITY, REVERSION, MapKind, PerformativityMap, apply, apply_derivative, drift
from .reward import GameSpec, drift_derivative_lemma, reward, reward_derivative, stationarity_residual_at_truth
from .scoring_rules import (
    LOGARITHMIC,
    PROPER_RULES,
    QUADRATIC,
    SPHERICAL,
    Family,
    ScoringRule,
    check_neyman_identity,
    constant,
    score,
    score_derivative,
)
from .sweep import ChartOptions, SweepConfig, SweepResult, read_csv, render_svg, run_sweep, write_csv

__version__ = "0.1.0"
