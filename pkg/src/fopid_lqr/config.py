"""TOML run configuration.

Layout (every section and key optional unless noted)::

    mode = "lqr"              # "lqr" or "direct"
    output_dir = "out"
    workers = 1               # processes for GA fitness evaluation

    [plant]                   # required: gain/tau/alpha, or preset = "g1" | "g2"
    [controller]              # kp/ki/kd/lam/mu, or preset = "c1_lqr" | ...
    [sim]                     # step, horizon, setpoint_amplitude, disturbance_*, divergence_bound
    [cost]                    # w1, w2, include_disturbance
    [ga]                      # population_size, elite_count, ..., seed, bounds, penalty
    [report]                  # effort_window

Unknown keys raise ConfigError naming the key.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .closed_loop import Fopid, SimConfig
from .cost import CostWeights
from .fixtures import CONTROLLERS, PLANTS
from .ga import GaConfig
from .plant import FoPlant

MODES = ("lqr", "direct")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ReportConfig:
    effort_window: float = 1.0


@dataclass
class RunConfig:
    plant: FoPlant
    controller: Optional[Fopid] = None
    sim: SimConfig = field(default_factory=SimConfig)
    cost: CostWeights = field(default_factory=CostWeights)
    ga: GaConfig = field(default_factory=GaConfig)
    mode: str = "lqr"
    output_dir: Path = Path("out")
    workers: int = 1
    include_disturbance: bool = False
    report: ReportConfig = field(default_factory=ReportConfig)
    source: Optional[str] = None

    @property
    def tuning_sim(self) -> SimConfig:
        """Simulation settings the objective is evaluated on."""
        return self.sim if self.include_disturbance else self.sim.without_disturbance()

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "output_dir": str(self.output_dir),
            "workers": self.workers,
            "plant": self.plant.to_dict(),
            "controller": self.controller.to_dict() if self.controller else None,
            "sim": self.sim.to_dict(),
            "cost": {**self.cost.to_dict(), "include_disturbance": self.include_disturbance},
            "ga": self.ga.to_dict(),
            "report": {"effort_window": self.report.effort_window},
        }


def _names(cls) -> set:
    return {f.name for f in fields(cls)}


def _section(raw: dict, name: str, allowed: set) -> dict:
    sec = raw.get(name, {})
    if not isinstance(sec, dict):
        raise ConfigError(f"[{name}] must be a table")
    for key in sec:
        if key not in allowed:
            raise ConfigError(f"unknown key '{name}.{key}' (allowed: {', '.join(sorted(allowed))})")
    return dict(sec)


def _build(cls, name: str, kwargs: dict):
    for key, value in kwargs.items():
        if isinstance(value, bool) or not isinstance(value, (int, float, list)):
            if not (key == "bounds" and value is None):
                raise ConfigError(f"'{name}.{key}' must be a number, got {value!r}")
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[{name}] {exc}") from None


def _preset(sec: dict, name: str, table: dict):
    if "preset" not in sec:
        return None
    if len(sec) > 1:
        raise ConfigError(f"[{name}] preset cannot be combined with explicit values")
    key = sec["preset"]
    if key not in table:
        raise ConfigError(f"unknown {name} preset '{key}' (known: {', '.join(sorted(table))})")
    return table[key]


def parse_config(raw: dict, source: Optional[str] = None) -> RunConfig:
    top = {"mode", "output_dir", "workers", "plant", "controller", "sim", "cost", "ga", "report"}
    for key in raw:
        if key not in top:
            raise ConfigError(f"unknown key '{key}' (allowed: {', '.join(sorted(top))})")

    if "plant" not in raw:
        raise ConfigError("missing required section [plant]")
    psec = _section(raw, "plant", {"gain", "tau", "alpha", "preset"})
    plant = _preset(psec, "plant", PLANTS)
    if plant is None:
        missing = {"gain", "tau", "alpha"} - set(psec)
        if missing:
            raise ConfigError(f"[plant] missing key(s): {', '.join(sorted(missing))}")
        plant = _build(FoPlant, "plant", psec)

    controller = None
    if "controller" in raw:
        csec = _section(raw, "controller", _names(Fopid) | {"preset"})
        controller = _preset(csec, "controller", CONTROLLERS)
        if controller is None:
            controller = _build(Fopid, "controller", csec)

    sim = _build(SimConfig, "sim", _section(raw, "sim", _names(SimConfig)))

    csec = _section(raw, "cost", _names(CostWeights) | {"include_disturbance"})
    include = csec.pop("include_disturbance", False)
    if not isinstance(include, bool):
        raise ConfigError("'cost.include_disturbance' must be true or false")
    cost = _build(CostWeights, "cost", csec)

    ga = _build(GaConfig, "ga", _section(raw, "ga", _names(GaConfig)))
    report = _build(ReportConfig, "report", _section(raw, "report", _names(ReportConfig)))
    if report.effort_window <= 0 or report.effort_window > sim.horizon:
        raise ConfigError("'report.effort_window' must lie in (0, sim.horizon]")

    mode = raw.get("mode", "lqr")
    if mode not in MODES:
        raise ConfigError(f"'mode' must be one of {MODES}, got {mode!r}")
    workers = raw.get("workers", 1)
    if not isinstance(workers, int) or isinstance(workers, bool) or workers < 1:
        raise ConfigError("'workers' must be a positive integer")
    out = raw.get("output_dir", "out")
    if not isinstance(out, str):
        raise ConfigError("'output_dir' must be a string")

    return RunConfig(
        plant=plant,
        controller=controller,
        sim=sim,
        cost=cost,
        ga=ga,
        mode=mode,
        output_dir=Path(out),
        workers=workers,
        include_disturbance=include,
        report=report,
        source=source,
    )


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    try:
        return parse_config(raw, source=str(path))
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None
