"""LQR-weighted tuning of fractional-order PI^lam D^mu controllers.

A single-term fractional plant ``K / (tau s^alpha + 1)`` is written in
state-space form over the error and its fractional differ-integrals, an
LQR design turns weighting matrices into FOPID gains, and a real-coded GA
picks the weights and orders that minimize ITAE + ISCO of the simulated
closed loop.
"""
from .closed_loop import Fopid, SimConfig, SimResult, SimulationError, simulate, state_trajectories
from .cost import CostWeights, isco, itae, objective
from .frac_num import DomainError, gl_apply, gl_weights, mittag_leffler
from .ga import GaConfig, TuningError, TuningResult, seed_sweep, tune_direct_mode, tune_lqr_mode
from .lqr import RiccatiSolution, SolverError, WeightMatrices, extract_fopid_gains, solve_care
from .plant import FoPlant, StateSpaceModel, build_state_space, open_loop_step

__version__ = "0.1.0"

__all__ = [
    "CostWeights",
    "DomainError",
    "Fopid",
    "FoPlant",
    "GaConfig",
    "RiccatiSolution",
    "SimConfig",
    "SimResult",
    "SimulationError",
    "SolverError",
    "StateSpaceModel",
    "TuningError",
    "TuningResult",
    "WeightMatrices",
    "build_state_space",
    "extract_fopid_gains",
    "gl_apply",
    "gl_weights",
    "isco",
    "itae",
    "mittag_leffler",
    "objective",
    "open_loop_step",
    "seed_sweep",
    "simulate",
    "solve_care",
    "state_trajectories",
    "tune_direct_mode",
    "tune_lqr_mode",
]
