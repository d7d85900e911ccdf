"""Self-contained checks against the published case-study numbers."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from . import fixtures as fx
from .closed_loop import Fopid, SimConfig, simulate
from .frac_num import mittag_leffler
from .lqr import SolverError, care_residual, extract_fopid_gains, solve_care, RiccatiSolution
from .plant import FoPlant, build_state_space, open_loop_step


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<44s} {self.value:11.3e}  (tol {self.tolerance:.1e}) {self.detail}"


def check_care_residual(plant, weights, p, tol: float = 1e-3, name: str = "care residual") -> Check:
    model = build_state_space(plant, 0.0, 0.0)
    res = float(np.max(np.abs(care_residual(model.a_matrix, model.b_column, weights.q, weights.r, p))))
    return Check(name, res <= tol, res, tol)


def check_solver(plant, weights, p_ref, tol: float = 5e-4, name: str = "solver vs published P") -> Check:
    try:
        sol = solve_care(build_state_space(plant, 0.0, 0.0), weights)
    except SolverError as exc:
        return Check(name, False, float("inf"), tol, str(exc))
    err = float(np.max(np.abs(sol.p - p_ref)))
    return Check(name, err <= tol, err, tol)


def check_gains(plant, weights, p, expected: Fopid, tol: float = 1e-3, name: str = "gain extraction") -> Check:
    got = extract_fopid_gains(RiccatiSolution(np.asarray(p)), plant, weights, expected.lam, expected.mu)
    err = max(abs(got.kp - expected.kp), abs(got.ki - expected.ki), abs(got.kd - expected.kd))
    detail = f"kp={got.kp:.6f} ki={got.ki:.6f} kd={got.kd:.6f}"
    return Check(name, err <= tol, err, tol, detail)


def mittag_leffler_step(plant: FoPlant, t) -> np.ndarray:
    """Exact unit-step response ``K (1 - E_alpha(-t^alpha / tau))``."""
    t = np.asarray(t, dtype=float)
    return np.array([plant.gain * (1.0 - mittag_leffler(plant.alpha, -(x**plant.alpha) / plant.tau)) for x in t])


def plant_step_errors(plant: FoPlant, steps, t_lo: float = 0.1, t_hi: float = 5.0, stride: float = 0.01):
    """Max error, relative to K, of the GL step response against the Mittag-Leffler solution."""
    grid = np.arange(t_lo, t_hi + 0.5 * stride, stride)
    exact = mittag_leffler_step(plant, grid)
    errors = []
    for h in steps:
        t, y = open_loop_step(plant, h, t_hi)
        idx = np.round(grid / h).astype(int)
        errors.append(float(np.max(np.abs(y[idx] - exact)) / abs(plant.gain)))
    return errors


def check_plant_oracle(plant: FoPlant = fx.G1, h: float = 1e-3, tol: float = 0.02):
    errs = plant_step_errors(plant, [h, h / 2])
    ratio = errs[0] / errs[1]
    return [
        Check("GL plant step vs Mittag-Leffler", errs[0] <= tol, errs[0], tol, "relative to K"),
        Check("GL plant halving-h error ratio", 1.5 <= ratio <= 2.5, ratio, 0.5, "expected in [1.5, 2.5]"),
    ]


def integer_pid_reference(gain, tau, kp, ki, kd, t_eval, amplitude=1.0):
    """Output of ``tau y' + y = K u`` under PID on ``e = r - y`` with a set-point step.

    The derivative kick is an impulse; it moves ``y`` at ``t = 0+`` by
    ``K kd r / (tau + K kd)`` and afterwards the loop is a 2-state ODE.
    """
    y0 = gain * kd * amplitude / (tau + gain * kd)

    def rhs(_t, s):
        y, z = s
        e = amplitude - y
        return [(-y + gain * (kp * e + ki * z)) / (tau + gain * kd), e]

    sol = solve_ivp(rhs, (0.0, float(t_eval[-1])), [y0, 0.0], t_eval=t_eval, rtol=1e-10, atol=1e-12, method="LSODA")
    return sol.y[0]


def integer_reduction_error(kp=1.0, ki=0.5, kd=0.0, h=1e-3, horizon=20.0) -> float:
    plant = FoPlant(1.0, 1.0, 1.0)
    sim = SimConfig(step=h, horizon=horizon, disturbance_magnitude=0.0)
    res = simulate(plant, Fopid(kp, ki, kd, 1.0, 1.0), sim)
    ref = integer_pid_reference(1.0, 1.0, kp, ki, kd, res.t)
    return float(np.max(np.abs(res.y - ref)))


def check_integer_reduction(tol: float = 0.01):
    out = []
    for kp, ki, kd in ((1.0, 0.5, 0.0), (1.0, 0.5, 0.2)):
        err = integer_reduction_error(kp, ki, kd)
        out.append(Check(f"integer-order reduction PID({kp},{ki},{kd})", err <= tol, err, tol))
    return out


def run_all() -> list:
    checks = []
    for tag, case in fx.CASES.items():
        plant, w, p = case["plant"], case["weights"], case["p"]
        checks.append(check_care_residual(plant, w, p, name=f"{tag}: published P residual"))
        checks.append(check_solver(plant, w, p, name=f"{tag}: solver vs published P"))
        checks.append(check_gains(plant, w, p, case["lqr"], name=f"{tag}: gains from published P"))
    checks.extend(check_plant_oracle())
    checks.extend(check_integer_reduction())
    return checks
