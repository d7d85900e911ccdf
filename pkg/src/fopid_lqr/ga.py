"""Real-coded genetic algorithm for FOPID tuning.

Two decision spaces are supported:

* ``lqr``: ``[q1, q2, q3, r, lam, mu]``; each candidate goes through the
  Riccati solve and gain extraction before being simulated.
* ``direct``: ``[kp, ki, kd, lam, mu]`` simulated as-is.

All random draws happen in the generation loop; fitness evaluation is a
pure function, so results are bit-identical for any number of workers.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import Callable, Optional, Sequence

import numpy as np

from .closed_loop import Fopid, SimConfig, SimulationError, simulate
from .cost import DEFAULT_PENALTY, CostWeights, objective
from .lqr import R_FLOOR, RiccatiSolution, SolverError, WeightMatrices, extract_fopid_gains, solve_care
from .plant import FoPlant, build_state_space

log = logging.getLogger(__name__)

LQR_BOUNDS = ((0.0, 100.0),) * 4 + ((0.0, 2.0),) * 2
DIRECT_BOUNDS = ((0.0, 10.0),) * 3 + ((0.0, 2.0),) * 2
LQR_NAMES = ("q1", "q2", "q3", "r", "lam", "mu")
DIRECT_NAMES = ("kp", "ki", "kd", "lam", "mu")
MUTATION_SCALE = 0.1
TOURNAMENT_SIZE = 2


class TuningError(RuntimeError):
    pass


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 20
    elite_count: int = 2
    crossover_fraction: float = 0.8
    mutation_fraction: float = 0.2
    bounds: Optional[tuple] = None  # None -> defaults of the tuning mode
    tolerance: float = 1e-6
    stall_generations: int = 20
    max_generations: int = 100
    seed: int = 0
    penalty: float = DEFAULT_PENALTY
    # mutation sigma falls linearly from 10% of the range by this fraction at max_generations
    mutation_shrink: float = 1.0

    def __post_init__(self):
        if self.population_size < 1:
            raise ValueError("population_size must be >= 1")
        if not 0 <= self.elite_count < self.population_size:
            raise ValueError("elite_count must satisfy 0 <= elite_count < population_size")
        for name in ("crossover_fraction", "mutation_fraction"):
            if not 0 <= getattr(self, name) <= 1:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.max_generations < 1 or self.stall_generations < 1:
            raise ValueError("max_generations and stall_generations must be >= 1")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be > 0")
        if not 0 <= self.mutation_shrink <= 1:
            raise ValueError("mutation_shrink must lie in [0, 1]")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        if self.bounds is not None:
            object.__setattr__(self, "bounds", tuple((float(lo), float(hi)) for lo, hi in self.bounds))
            if any(lo > hi for lo, hi in self.bounds):
                raise ValueError("each bound needs low <= high")

    def with_seed(self, seed: int) -> "GaConfig":
        d = asdict(self)
        d["seed"] = seed
        return GaConfig(**d)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bounds"] = [list(b) for b in self.bounds] if self.bounds is not None else None
        return d


@dataclass
class TuningResult:
    mode: str
    best_vector: np.ndarray
    best_objective: float
    controller: Fopid
    history: list
    generation_best: list
    generations_run: int
    evaluations: int
    weights: Optional[WeightMatrices] = None
    riccati: Optional[RiccatiSolution] = None
    plant: Optional[FoPlant] = None
    ga: Optional[GaConfig] = None
    bounds: tuple = field(default=())

    def to_dict(self) -> dict:
        names = LQR_NAMES if self.mode == "lqr" else DIRECT_NAMES
        return {
            "mode": self.mode,
            "plant": self.plant.to_dict() if self.plant else None,
            "ga": self.ga.to_dict() if self.ga else None,
            "bounds": [list(b) for b in self.bounds],
            "best_vector": dict(zip(names, map(float, self.best_vector))),
            "best_objective": self.best_objective,
            "controller": self.controller.to_dict(),
            "weights": self.weights.to_dict() if self.weights else None,
            "riccati_p": self.riccati.p.tolist() if self.riccati is not None else None,
            "history": list(self.history),
            "generation_best": list(self.generation_best),
            "generations_run": self.generations_run,
            "evaluations": self.evaluations,
        }


def decode_lqr(plant: FoPlant, vector) -> tuple[WeightMatrices, RiccatiSolution, Fopid]:
    """Map ``[q1, q2, q3, r, lam, mu]`` to weights, Riccati solution and controller."""
    q1, q2, q3, r, lam, mu = (float(v) for v in vector)
    weights = WeightMatrices(q1, q2, q3, max(r, R_FLOOR))
    sol = solve_care(build_state_space(plant, lam, mu), weights)
    return weights, sol, extract_fopid_gains(sol, plant, weights, lam, mu)


def decode_direct(vector) -> Fopid:
    kp, ki, kd, lam, mu = (float(v) for v in vector)
    return Fopid(kp, ki, kd, lam, mu)


def lqr_fitness(vector, plant: FoPlant, sim: SimConfig, cost: CostWeights, penalty: float) -> float:
    try:
        controller = decode_lqr(plant, vector)[2]
        return objective(simulate(plant, controller, sim), cost, penalty)
    except (SolverError, SimulationError, ValueError, np.linalg.LinAlgError):
        return penalty


def direct_fitness(vector, plant: FoPlant, sim: SimConfig, cost: CostWeights, penalty: float) -> float:
    try:
        return objective(simulate(plant, decode_direct(vector), sim), cost, penalty)
    except (SimulationError, ValueError):
        return penalty


def _tournament(fitness: np.ndarray, rng: np.random.Generator) -> int:
    picks = rng.integers(0, len(fitness), size=TOURNAMENT_SIZE)
    return int(picks[np.argmin(fitness[picks])])


def mutation_sigma(ga: GaConfig, bounds, generation: int) -> np.ndarray:
    """Per-gene Gaussian sigma when breeding from ``generation`` (1-based)."""
    lo, hi = np.asarray(bounds, dtype=float).T
    frac = 1.0 - ga.mutation_shrink * (generation - 1) / ga.max_generations
    return MUTATION_SCALE * (hi - lo) * max(frac, 0.0)


def evolve_generation(
    population, fitness, ga: GaConfig, bounds, rng: np.random.Generator, generation: int = 1
) -> np.ndarray:
    """Produce the next population.

    The ``elite_count`` fittest individuals are copied unchanged.  Each other
    slot takes a size-2 tournament winner, blends it with a second winner
    (BLX-0.5) with probability ``crossover_fraction``, then perturbs each
    gene with probability ``mutation_fraction`` by Gaussian noise of 10% of
    the gene's range, shrunk linearly with ``generation`` according to
    ``ga.mutation_shrink``.  Offspring are clipped to ``bounds``.  ``rng``
    is advanced in place.
    """
    population = np.asarray(population, dtype=float)
    fitness = np.asarray(fitness, dtype=float)
    n, dim = population.shape
    lo, hi = np.asarray(bounds, dtype=float).T
    sigma = mutation_sigma(ga, bounds, generation)

    order = np.argsort(fitness, kind="stable")
    nxt = np.empty_like(population)
    nxt[: ga.elite_count] = population[order[: ga.elite_count]]
    for i in range(ga.elite_count, n):
        child = population[_tournament(fitness, rng)].copy()
        if rng.random() < ga.crossover_fraction:
            other = population[_tournament(fitness, rng)]
            low = np.minimum(child, other)
            width = np.abs(child - other)
            child = rng.uniform(low - 0.5 * width, low + 1.5 * width)
        mutate = rng.random(dim) < ga.mutation_fraction
        noise = rng.normal(0.0, 1.0, dim) * sigma
        child = np.where(mutate, child + noise, child)
        nxt[i] = np.clip(child, lo, hi)
    return nxt


def run_ga(
    fitness_fn: Callable[[tuple], float],
    bounds,
    ga: GaConfig,
    *,
    initial: Optional[Sequence[Sequence[float]]] = None,
    workers: int = 1,
    callback: Optional[Callable[[int, np.ndarray, np.ndarray], None]] = None,
):
    """Minimize ``fitness_fn`` over a box.

    Returns ``(best_vector, best_fitness, history, generation_best, generations, evaluations)``
    where ``history`` is the best-so-far per generation.
    """
    bounds = np.asarray(bounds, dtype=float)
    lo, hi = bounds.T
    rng = np.random.default_rng(ga.seed)
    pop = rng.uniform(lo, hi, size=(ga.population_size, len(bounds)))
    if initial is not None:
        seeded = np.clip(np.atleast_2d(np.asarray(initial, dtype=float)), lo, hi)
        k = min(len(seeded), ga.population_size)
        pop[:k] = seeded[:k]

    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None

    def evaluate(rows: np.ndarray) -> np.ndarray:
        args = [tuple(map(float, row)) for row in rows]
        if pool is None:
            return np.array([fitness_fn(a) for a in args])
        return np.array(list(pool.map(fitness_fn, args)))

    try:
        fit = evaluate(pop)
        evaluations = len(pop)
        history: list = []
        gen_best: list = []
        best_idx = int(np.argmin(fit))
        best_x, best_f = pop[best_idx].copy(), float(fit[best_idx])
        generation = 1
        while True:
            if callback is not None:
                callback(generation, pop, fit)
            i = int(np.argmin(fit))
            if fit[i] < best_f:
                best_x, best_f = pop[i].copy(), float(fit[i])
            gen_best.append(float(fit[i]))
            history.append(best_f)
            log.debug("generation %d best %.6g", generation, best_f)
            if generation >= ga.max_generations:
                break
            if generation > ga.stall_generations and history[-1 - ga.stall_generations] - best_f < ga.tolerance:
                break
            order = np.argsort(fit, kind="stable")
            elite_fit = fit[order[: ga.elite_count]]
            pop = evolve_generation(pop, fit, ga, bounds, rng, generation)
            fresh = evaluate(pop[ga.elite_count :])
            evaluations += len(fresh)
            fit = np.concatenate([elite_fit, fresh])
            generation += 1
    finally:
        if pool is not None:
            pool.shutdown()
    return best_x, best_f, history, gen_best, generation, evaluations


def _bounds_for(ga: GaConfig, default) -> tuple:
    bounds = ga.bounds if ga.bounds is not None else default
    if len(bounds) != len(default):
        raise ValueError(f"expected {len(default)} bounds, got {len(bounds)}")
    return tuple(tuple(b) for b in bounds)


def tune_lqr_mode(
    plant: FoPlant,
    sim: SimConfig,
    cost: CostWeights,
    ga: GaConfig,
    *,
    initial=None,
    workers: int = 1,
    callback=None,
) -> TuningResult:
    """Search ``{q1, q2, q3, r, lam, mu}``; candidates whose Riccati solve fails are penalized."""
    bounds = _bounds_for(ga, LQR_BOUNDS)
    fn = partial(lqr_fitness, plant=plant, sim=sim, cost=cost, penalty=ga.penalty)
    x, f, hist, gbest, gens, evals = run_ga(fn, bounds, ga, initial=initial, workers=workers, callback=callback)
    if f >= ga.penalty:
        raise TuningError(
            f"all {evals} candidates over {gens} generations were penalized (lqr mode, plant {plant})"
        )
    weights, sol, controller = decode_lqr(plant, x)
    return TuningResult("lqr", x, f, controller, hist, gbest, gens, evals, weights, sol, plant, ga, bounds)


def tune_direct_mode(
    plant: FoPlant,
    sim: SimConfig,
    cost: CostWeights,
    ga: GaConfig,
    *,
    initial=None,
    workers: int = 1,
    callback=None,
) -> TuningResult:
    """Search ``{kp, ki, kd, lam, mu}`` directly against the objective."""
    bounds = _bounds_for(ga, DIRECT_BOUNDS)
    fn = partial(direct_fitness, plant=plant, sim=sim, cost=cost, penalty=ga.penalty)
    x, f, hist, gbest, gens, evals = run_ga(fn, bounds, ga, initial=initial, workers=workers, callback=callback)
    if f >= ga.penalty:
        raise TuningError(
            f"all {evals} candidates over {gens} generations were penalized (direct mode, plant {plant})"
        )
    return TuningResult("direct", x, f, decode_direct(x), hist, gbest, gens, evals, plant=plant, ga=ga, bounds=bounds)


def tune(mode: str, plant, sim, cost, ga, **kwargs) -> TuningResult:
    if mode == "lqr":
        return tune_lqr_mode(plant, sim, cost, ga, **kwargs)
    if mode == "direct":
        return tune_direct_mode(plant, sim, cost, ga, **kwargs)
    raise ValueError(f"unknown mode {mode!r}")


def seed_sweep(mode: str, plant, sim, cost, ga: GaConfig, seeds: Sequence[int], **kwargs):
    """Run the GA once per seed and keep the lowest objective.

    Returns the best result and ``{seed: best_objective}`` for every run.
    Seeds where every candidate was penalized are skipped; if all fail the
    last TuningError is re-raised.
    """
    best = None
    scores = {}
    last_err = None
    for s in seeds:
        try:
            res = tune(mode, plant, sim, cost, ga.with_seed(int(s)), **kwargs)
        except TuningError as exc:
            last_err = exc
            continue
        scores[int(s)] = res.best_objective
        if best is None or res.best_objective < best.best_objective:
            best = res
    if best is None:
        raise last_err
    return best, scores
