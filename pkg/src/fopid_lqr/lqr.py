"""Continuous algebraic Riccati equation and the LQR-to-FOPID gain map."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .closed_loop import Fopid
from .plant import FoPlant, StateSpaceModel

R_FLOOR = 1e-4


class SolverError(RuntimeError):
    """Riccati iteration failed to produce a stabilizing solution."""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(f"{message} (residual={residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class WeightMatrices:
    q1: float
    q2: float
    q3: float
    r: float

    def __post_init__(self):
        if min(self.q1, self.q2, self.q3) < 0:
            raise ValueError("Q diagonal entries must be non-negative")
        if not self.r > 0:
            raise ValueError(f"R must be > 0, got {self.r}")

    @property
    def q(self) -> np.ndarray:
        return np.diag([self.q1, self.q2, self.q3])

    def scaled(self, c: float) -> "WeightMatrices":
        return WeightMatrices(c * self.q1, c * self.q2, c * self.q3, c * self.r)

    def to_dict(self) -> dict:
        return {"q1": self.q1, "q2": self.q2, "q3": self.q3, "r": self.r}


@dataclass(frozen=True)
class RiccatiSolution:
    p: np.ndarray
    residual: float = 0.0
    iterations: int = 0

    def __getitem__(self, idx):
        return self.p[idx]


def care_residual(a, b, q, r, p) -> np.ndarray:
    """``A'P + PA - P B R^-1 B' P + Q``."""
    a, b, q, p = (np.atleast_2d(np.asarray(m, dtype=float)) for m in (a, b, q, p))
    b = b.reshape(a.shape[0], -1)
    rinv = np.linalg.inv(np.atleast_2d(r))
    return a.T @ p + p @ a - p @ b @ rinv @ b.T @ p + q


def lyapunov(a: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Solve ``A'X + XA + M = 0`` by Kronecker vectorization."""
    n = a.shape[0]
    eye = np.eye(n)
    lhs = np.kron(eye, a.T) + np.kron(a.T, eye)
    x = np.linalg.solve(lhs, -m.reshape(-1, order="F")).reshape(n, n, order="F")
    return 0.5 * (x + x.T)


def ackermann(a: np.ndarray, b: np.ndarray, poles) -> np.ndarray:
    """Single-input pole placement: row gain K with eig(A - bK) = poles."""
    n = a.shape[0]
    b = b.reshape(n, 1)
    ctrb = np.hstack([np.linalg.matrix_power(a, i) @ b for i in range(n)])
    coeffs = np.real(np.poly(poles))
    phi = sum(c * np.linalg.matrix_power(a, n - i) for i, c in enumerate(coeffs))
    last = np.zeros((1, n))
    last[0, -1] = 1.0
    return last @ np.linalg.solve(ctrb, phi)


def newton_kleinman(a, b, q, r, *, max_iter: int = 100, rtol: float = 1e-9) -> tuple[np.ndarray, int, float]:
    """Stabilizing CARE solution by Newton-Kleinman iteration.

    The starting gain places the closed-loop poles at -1, -2, ..., -n, so
    ``b`` must be a single input column.  Returns ``(P, iterations, residual)``.
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    n = a.shape[0]
    b = np.asarray(b, dtype=float).reshape(n, 1)
    q = np.atleast_2d(np.asarray(q, dtype=float))
    r = float(np.asarray(r).reshape(()))

    try:
        gain = ackermann(a, b, -np.arange(1.0, n + 1.0))
    except np.linalg.LinAlgError:
        raise SolverError("(A, B) is not controllable") from None

    p = np.zeros((n, n))
    for it in range(1, max_iter + 1):
        closed = a - b @ gain
        try:
            p_next = lyapunov(closed, q + r * gain.T @ gain)
        except np.linalg.LinAlgError:
            raise SolverError("singular Lyapunov step", _res_norm(a, b, q, r, p)) from None
        gain = (b.T @ p_next) / r
        change = np.max(np.abs(p_next - p))
        p = p_next
        if change <= 1e-14 * max(1.0, np.max(np.abs(p))):
            break
    res = _res_norm(a, b, q, r, p)
    scale = np.max(np.abs(q)) + np.max(np.abs(p @ a)) + 1e-300
    if res > rtol * scale or not np.all(np.isfinite(p)):
        raise SolverError(f"no convergence after {it} iterations", res)
    eig = np.linalg.eigvals(a - b @ (b.T @ p) / r)
    if np.max(eig.real) >= -1e-9:
        raise SolverError("solution is not stabilizing", res)
    return p, it, res


def _res_norm(a, b, q, r, p) -> float:
    return float(np.max(np.abs(care_residual(a, b, q, r, p))))


def solve_care(model: StateSpaceModel, weights: WeightMatrices) -> RiccatiSolution:
    p, it, res = newton_kleinman(model.a_matrix, model.b_column, weights.q, weights.r)
    return RiccatiSolution(p=p, residual=res, iterations=it)


def feedback_gain(model: StateSpaceModel, weights: WeightMatrices, solution: RiccatiSolution) -> np.ndarray:
    """Row ``F = R^-1 B' P``, which equals ``[-Ki, -Kp, -Kd]``."""
    return (model.b_vector @ solution.p) / weights.r


def extract_fopid_gains(
    solution: RiccatiSolution, plant: FoPlant, weights: WeightMatrices, lam: float, mu: float
) -> Fopid:
    scale = plant.gain / (plant.tau * weights.r)
    p = solution.p
    return Fopid(
        kp=float(scale * p[1, 2]), ki=float(scale * p[0, 2]), kd=float(scale * p[2, 2]), lam=float(lam), mu=float(mu)
    )


def optimal_cost(solution: RiccatiSolution, x0) -> float:
    """Optimal LQR cost ``x0' P x0`` from initial state ``x0``."""
    x0 = np.asarray(x0, dtype=float)
    return float(x0 @ solution.p @ x0)
