"""Fixed-step Grünwald-Letnikov simulation of the FOPID loop around a fractional plant."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numba
import numpy as np

from .frac_num import gl_apply, gl_weights


class SimulationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Fopid:
    """``u = Kp e + Ki D^-lam e + Kd D^mu e``."""

    kp: float
    ki: float
    kd: float
    lam: float
    mu: float

    def __post_init__(self):
        for name in ("kp", "ki", "kd", "lam", "mu"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if min(self.kp, self.ki, self.kd) < 0:
            raise ValueError(f"gains must be non-negative, got {self.kp}, {self.ki}, {self.kd}")
        if not (0 <= self.lam <= 2 and 0 <= self.mu <= 2):
            raise ValueError(f"lam and mu must lie in [0, 2], got {self.lam}, {self.mu}")

    def to_dict(self) -> dict:
        return {"kp": self.kp, "ki": self.ki, "kd": self.kd, "lam": self.lam, "mu": self.mu}


@dataclass(frozen=True)
class SimConfig:
    step: float = 0.01
    horizon: float = 30.0
    setpoint_amplitude: float = 1.0
    disturbance_magnitude: float = 0.2
    disturbance_time: Optional[float] = None  # None -> horizon / 2
    divergence_bound: float = 1e6

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"step must be > 0, got {self.step}")
        if self.horizon < self.step:
            raise ValueError("horizon must be at least one step")
        if self.disturbance_time is not None and not 0 <= self.disturbance_time <= self.horizon:
            raise ValueError("disturbance_time must lie in [0, horizon]")
        if not self.divergence_bound > 0:
            raise ValueError("divergence_bound must be > 0")

    @property
    def onset(self) -> float:
        return self.horizon / 2 if self.disturbance_time is None else self.disturbance_time

    @property
    def n_samples(self) -> int:
        return int(round(self.horizon / self.step)) + 1

    def without_disturbance(self) -> "SimConfig":
        return SimConfig(
            step=self.step,
            horizon=self.horizon,
            setpoint_amplitude=self.setpoint_amplitude,
            disturbance_magnitude=0.0,
            disturbance_time=self.disturbance_time,
            divergence_bound=self.divergence_bound,
        )

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "horizon": self.horizon,
            "setpoint_amplitude": self.setpoint_amplitude,
            "disturbance_magnitude": self.disturbance_magnitude,
            "disturbance_time": self.onset,
            "divergence_bound": self.divergence_bound,
        }


@dataclass
class SimResult:
    t: np.ndarray
    r: np.ndarray
    y: np.ndarray
    u: np.ndarray
    e: np.ndarray
    step: float
    diverged: bool = False
    d: np.ndarray = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.t)


def simulate(plant, controller: Fopid, config: SimConfig) -> SimResult:
    """Closed-loop set-point step with an input-additive load disturbance.

    At every sample the plant, the GL controller terms and ``e = r - y`` form
    one linear equation in ``y[k]``, solved exactly.  ``u`` is the controller
    output; the plant sees ``u + d``.  The set-point is on from
    ``t = 0`` and all signals are zero before it.  If ``|y|`` or ``|u|``
    passes ``config.divergence_bound`` the run stops there with
    ``diverged=True``.
    """
    h = config.step
    n = config.n_samples
    t = np.arange(n) * h
    r = np.full(n, float(config.setpoint_amplitude))
    d = np.where(t >= config.onset - 1e-9 * h, float(config.disturbance_magnitude), 0.0)

    w_plant = gl_weights(plant.alpha, n).weights
    w_int = gl_weights(-controller.lam, n).weights
    w_der = gl_weights(controller.mu, n).weights
    c_plant = plant.tau * h ** (-plant.alpha)
    c_int = controller.ki * h**controller.lam
    c_der = controller.kd * h ** (-controller.mu)
    g = controller.kp + c_int + c_der
    denom = 1.0 + c_plant + plant.gain * g
    if abs(denom) < 1e-12 * (1.0 + c_plant):
        raise SimulationError(f"per-step update is singular (coefficient {denom:.3e})")

    y, u, e, m = _run_loop(
        w_plant, w_int, w_der, r, d, float(plant.gain), c_plant, c_int, c_der, g, denom, float(config.divergence_bound)
    )
    if m < n:
        return SimResult(t[:m], r[:m], y[:m], u[:m], e[:m], h, True, d[:m])
    return SimResult(t, r, y, u, e, h, False, d)


@numba.njit(cache=True)
def _run_loop(w_plant, w_int, w_der, r, d, gain, c_plant, c_int, c_der, g, denom, bound):
    # returns (y, u, e, samples kept); fewer kept than len(r) means divergence
    n = r.size
    y = np.zeros(n)
    u = np.zeros(n)
    e = np.zeros(n)
    for k in range(n):
        h_y = 0.0
        h_i = 0.0
        h_d = 0.0
        for j in range(1, k + 1):
            h_y += w_plant[j] * y[k - j]
            h_i += w_int[j] * e[k - j]
            h_d += w_der[j] * e[k - j]
        known = c_int * h_i + c_der * h_d
        y[k] = (gain * (g * r[k] + known + d[k]) - c_plant * h_y) / denom
        e[k] = r[k] - y[k]
        u[k] = g * e[k] + known
        if not (abs(y[k]) <= bound and abs(u[k]) <= bound):
            return y[: k + 1], u[: k + 1], e[: k + 1], k + 1
    return y, u, e, n


def state_trajectories(result: SimResult, lam: float, mu: float):
    """Fractional states ``(D^-lam e, e, D^mu e)`` of the error signal."""
    if result.diverged:
        raise ValueError("state trajectories are undefined for a diverged run")
    e = result.e
    return gl_apply(e, -lam, result.step), e.copy(), gl_apply(e, mu, result.step)


def early_control_effort(result: SimResult, window: float) -> float:
    """Trapezoidal ``int_0^window u(t)^2 dt``."""
    if window > result.t[-1] + 1e-9 * result.step:
        raise ValueError("window exceeds the simulated horizon")
    m = result.t <= window + 1e-9 * result.step
    return float(np.trapezoid(result.u[m] ** 2, result.t[m]))


def peak_disturbance_deviation(result: SimResult, onset: float) -> float:
    """Largest ``|r - y|`` from the disturbance onset to the end of the run."""
    m = result.t >= onset - 1e-9 * result.step
    if not m.any():
        return 0.0
    return float(np.max(np.abs(result.e[m])))


def write_csv(path, result: SimResult, states=None) -> None:
    cols = [result.t, result.r, result.y, result.u, result.e]
    header = "t,r,y,u,e"
    if states is not None:
        cols.extend(states)
        header += ",x1,x2,x3"
    np.savetxt(path, np.column_stack(cols), fmt="%.9g", delimiter=",", header=header, comments="")
