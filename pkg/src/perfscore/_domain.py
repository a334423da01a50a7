"""Input validation shared by the model components."""

from __future__ import annotations

import numpy as np

# absorbs rounding in expressions like 1 - (1 - 1e-5)
SLACK = 1e-12


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of a model function."""


def as_float_array(x) -> np.ndarray:
    return np.asarray(x, dtype=np.float64)


def unwrap(x: np.ndarray):
    """Return a Python float for 0-d results, the array otherwise."""
    if np.ndim(x) == 0:
        return float(x)
    return x


def check_closed(name: str, x: np.ndarray, lo: float = 0.0, hi: float = 1.0) -> None:
    bad = ~((x >= lo - SLACK) & (x <= hi + SLACK))
    if np.any(bad):
        value = x if np.ndim(x) == 0 else x[bad].flat[0]
        raise DomainError(f"{name}={float(value)!r} outside [{lo!r}, {hi!r}]")


def check_open(name: str, x: np.ndarray, lo: float = 0.0, hi: float = 1.0) -> None:
    bad = ~((x > lo) & (x < hi))
    if np.any(bad):
        value = x if np.ndim(x) == 0 else x[bad].flat[0]
        raise DomainError(f"{name}={float(value)!r} outside ({lo!r}, {hi!r})")
