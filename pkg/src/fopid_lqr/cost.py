"""Time-domain integral indices and the weighted ITAE + ISCO objective."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

DEFAULT_PENALTY = 1e10


@dataclass(frozen=True)
class CostWeights:
    w1: float = 1.0  # ITAE
    w2: float = 1.0  # ISCO

    def __post_init__(self):
        if self.w1 < 0 or self.w2 < 0:
            raise ValueError("cost weights must be non-negative")

    def to_dict(self) -> dict:
        return {"w1": self.w1, "w2": self.w2}


@dataclass(frozen=True)
class ObjectiveBreakdown:
    itae: Optional[float]
    isco: Optional[float]
    total: float
    penalized: bool

    def to_dict(self) -> dict:
        return {"itae": self.itae, "isco": self.isco, "total": self.total, "penalized": self.penalized}


def _check(t, x):
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    if t.shape != x.shape or t.ndim != 1:
        raise ValueError(f"length mismatch: {t.shape} vs {x.shape}")
    return t, x


def itae(t, e) -> float:
    """Trapezoidal integral of ``t * |e(t)|``."""
    t, e = _check(t, e)
    return float(np.trapezoid(t * np.abs(e), t))


def isco(t, u) -> float:
    """Trapezoidal integral of ``u(t)**2``."""
    t, u = _check(t, u)
    return float(np.trapezoid(u * u, t))


def breakdown(result, weights: CostWeights, penalty: float = DEFAULT_PENALTY) -> ObjectiveBreakdown:
    if result.diverged:
        return ObjectiveBreakdown(None, None, penalty, True)
    a = itae(result.t, result.e)
    b = isco(result.t, result.u)
    return ObjectiveBreakdown(a, b, weights.w1 * a + weights.w2 * b, False)


def objective(result, weights: CostWeights, penalty: float = DEFAULT_PENALTY) -> float:
    """Weighted ITAE + ISCO over the simulated horizon, or ``penalty`` if the run diverged."""
    return breakdown(result, weights, penalty).total
