"""Single fractional element plant K / (tau s^alpha + 1) and its state-space scaffold."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .frac_num import gl_weights


@dataclass(frozen=True)
class FoPlant:
    """Plant ``K / (tau * s**alpha + 1)`` with ``0 < alpha < 2``."""

    gain: float
    tau: float
    alpha: float

    def __post_init__(self):
        for name in ("gain", "tau", "alpha"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.tau <= 0:
            raise ValueError(f"tau must be > 0, got {self.tau}")
        if not 0 < self.alpha < 2:
            raise ValueError(f"alpha must lie in the open interval (0, 2), got {self.alpha}")

    @property
    def kind(self) -> str:
        if self.alpha > 1:
            return "oscillatory"
        if self.alpha < 1:
            return "sluggish"
        return "first-order"

    def to_dict(self) -> dict:
        return {"gain": self.gain, "tau": self.tau, "alpha": self.alpha}


@dataclass(frozen=True)
class StateSpaceModel:
    """Incommensurate template ``d^q x / dt^q = A x + B u``.

    States are ``x1 = D^-lambda e``, ``x2 = e``, ``x3 = D^mu e`` and
    ``order_vector`` holds ``[lambda, mu, alpha - mu]``.
    """

    a_matrix: np.ndarray
    b_vector: np.ndarray
    order_vector: np.ndarray

    @property
    def b_column(self) -> np.ndarray:
        return self.b_vector.reshape(-1, 1)


def build_state_space(plant: FoPlant, lam: float, mu: float) -> StateSpaceModel:
    # lam/mu only enter the order vector; mu > alpha gives a negative last
    # order, which is kept since the simulator never propagates these states
    a = np.array(
        [
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, -1.0 / plant.tau, 0.0],
        ]
    )
    b = np.array([0.0, 0.0, -plant.gain / plant.tau])
    q = np.array([lam, mu, plant.alpha - mu], dtype=float)
    return StateSpaceModel(a_matrix=a, b_vector=b, order_vector=q)


def controllability_matrix(model: StateSpaceModel) -> np.ndarray:
    a, b = model.a_matrix, model.b_vector
    cols = [b]
    for _ in range(a.shape[0] - 1):
        cols.append(a @ cols[-1])
    return np.column_stack(cols)


def open_loop_step(plant: FoPlant, step: float, horizon: float) -> tuple[np.ndarray, np.ndarray]:
    """Unit-step response of ``tau D^alpha y + y = K u`` on ``t_k = k*step``.

    ``y[0] = 0`` is the zero initial condition; the step acts from the first
    update onwards, so ``y[1] = K / (1 + tau * step**-alpha)``.

    Returns
    -------
    t, y : ndarray
        Sample times and plant output, ``round(horizon/step) + 1`` samples.
    """
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    if horizon < step:
        raise ValueError("horizon must be at least one step")
    n = int(round(horizon / step)) + 1
    w = gl_weights(plant.alpha, n).weights
    c = plant.tau * step ** (-plant.alpha)
    y = np.zeros(n)
    for k in range(1, n):
        hist = w[1 : k + 1] @ y[k - 1 :: -1]
        y[k] = (plant.gain - c * hist) / (1.0 + c)
    return np.arange(n) * step, y
