"""Expert-optimal forecasts and incentive-compatibility verdicts."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy import optimize as _sciopt

from ._domain import DomainError
from .performativity import MapKind
from .reward import GameSpec, reward, reward_derivative, stationarity_residual_at_truth
from .scoring_rules import LOG_FLOOR, Family

# reward comparisons closer than this are ties
REWARD_TOL = 1e-12


class ConcavityViolation(ValueError):
    """The closed form is not certified: the reward is not strictly concave."""


class Verdict(enum.Enum):
    COMPATIBLE = "Compatible"
    INCOMPATIBLE = "Incompatible"


@dataclass(frozen=True)
class GridSpec:
    points: int = 500
    lo: float = LOG_FLOOR
    hi: float = 1.0 - LOG_FLOOR

    def __post_init__(self):
        if self.points < 2:
            raise DomainError(f"grid needs at least 2 points, got {self.points}")
        if not 0.0 <= self.lo < self.hi <= 1.0:
            raise DomainError(f"bad grid bounds [{self.lo!r}, {self.hi!r}]")

    @property
    def spacing(self) -> float:
        return (self.hi - self.lo) / (self.points - 1)

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)

    def cell(self, x: float) -> tuple[float, float]:
        """The two grid cells either side of x, clipped to the grid."""
        return max(self.lo, x - self.spacing), min(self.hi, x + self.spacing)


DEFAULT_GRID = GridSpec()


@dataclass(frozen=True)
class OptimumReport:
    p: float
    p_hat_star: float
    reward_at_star: float
    residual_at_truth: float
    verdict: Verdict
    # grid_argmax: p_hat_star - p.
    # check_incentive_compatibility: reward gain of the best far deviation over truth.
    deviation: float

    @property
    def compatible(self) -> bool:
        return self.verdict is Verdict.COMPATIBLE


def grid_argmax(game: GameSpec, grid: GridSpec = DEFAULT_GRID) -> OptimumReport:
    """Best forecast on the grid; ties (within REWARD_TOL) go to the smallest forecast.

    The verdict is Compatible when the best forecast is within one grid
    spacing of the truth.
    """
    xs = grid.values()
    values = reward(game, xs)
    i = int(np.argmax(values >= values.max() - REWARD_TOL))
    star = float(xs[i])
    dev = star - game.p
    verdict = Verdict.COMPATIBLE if abs(dev) <= grid.spacing else Verdict.INCOMPATIBLE
    return OptimumReport(
        p=game.p,
        p_hat_star=star,
        reward_at_star=float(values[i]),
        residual_at_truth=stationarity_residual_at_truth(game),
        verdict=verdict,
        deviation=dev,
    )


def closed_form_quadratic_drift(p: float, alpha: float, q: float, c: float) -> float:
    """Optimal forecast for the quadratic rule under drift, clamped to [0, 1].

    The reward is then a polynomial with second derivative 4 alpha - 2 - q c,
    so its unique stationary point p + (2 alpha p - alpha) / (q c + 2 - 4 alpha)
    is the maximizer whenever q c > 4 alpha - 2.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p={p!r} outside [0, 1]")
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha={alpha!r} outside [0, 1]")
    if not 0.0 <= q <= 2.0:
        raise DomainError(f"q={q!r} outside [0, 2]")
    if not q > 0.0:
        raise ConcavityViolation("q must be positive for the closed form")
    if not c > (4.0 * alpha - 2.0) / q:
        raise ConcavityViolation(
            f"c={c!r} does not exceed (4 alpha - 2)/q = {(4.0 * alpha - 2.0) / q!r}; reward not strictly concave"
        )
    unclamped = p + (2.0 * alpha * p - alpha) / (q * c + 2.0 - 4.0 * alpha)
    return max(0.0, min(unclamped, 1.0))


def check_incentive_compatibility(
    game: GameSpec, grid: GridSpec = DEFAULT_GRID, tolerance: float | None = None
) -> OptimumReport:
    """Does truthful reporting beat every grid forecast farther than ``tolerance`` from p?

    ``tolerance`` defaults to one grid spacing. When the game is incompatible
    the report carries the best violating forecast and its reward gain over
    truth in ``deviation``; otherwise it carries the truthful forecast.
    """
    if tolerance is None:
        tolerance = grid.spacing
    if not tolerance > 0:
        raise DomainError(f"tolerance must be positive, got {tolerance!r}")
    truthful = float(reward(game, game.p))
    residual = stationarity_residual_at_truth(game)
    xs = grid.values()
    far = xs[np.abs(xs - game.p) > tolerance]
    if far.size:
        values = reward(game, far)
        i = int(np.argmax(values))
        gain = float(values[i]) - truthful
        if gain > REWARD_TOL:
            return OptimumReport(game.p, float(far[i]), float(values[i]), residual, Verdict.INCOMPATIBLE, gain)
    return OptimumReport(game.p, game.p, truthful, residual, Verdict.COMPATIBLE, 0.0)


def refine_argmax(game: GameSpec, bracket: tuple[float, float]) -> float:
    """Polish a grid optimum to a local maximizer inside ``bracket``.

    Reward values stop resolving the optimum below about sqrt(eps), so the
    analytic derivative is bracketed and root-found instead. If the slope
    does not change sign from + to -, the better endpoint is returned unless
    a bounded scalar search finds an interior point that beats it.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not hi - lo >= 1e-12:
        raise DomainError(f"bracket {bracket!r} narrower than 1e-12")
    d_lo = float(reward_derivative(game, lo))
    d_hi = float(reward_derivative(game, hi))
    if d_lo == 0.0:
        return lo
    if d_hi == 0.0:
        return hi
    if d_lo > 0.0 > d_hi:
        return float(_sciopt.brentq(lambda x: float(reward_derivative(game, x)), lo, hi, xtol=1e-14))
    best = lo if float(reward(game, lo)) >= float(reward(game, hi)) else hi
    res = _sciopt.minimize_scalar(
        lambda x: -float(reward(game, x)), bounds=(lo, hi), method="bounded", options={"xatol": 1e-12}
    )
    if res.success and -res.fun > float(reward(game, best)) + REWARD_TOL:
        return float(res.x)
    return best


def closed_form_applies(game: GameSpec) -> bool:
    """True when the quadratic-drift closed form is certified for this game."""
    a = game.audit
    return (
        game.rule.family is Family.QUADRATIC
        and game.map.kind is MapKind.DRIFT
        and a.q > 0.0
        and a.c > (4.0 * game.map.alpha - 2.0) / a.q
    )
