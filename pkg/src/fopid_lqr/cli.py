"""Command-line front end: ``fopid-lqr {tune,simulate,validate,compare}``.

Exit codes: 0 success, 1 validation failure, 2 configuration error,
3 runtime or tuning failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import validate as validation
from .closed_loop import SimulationError, early_control_effort, peak_disturbance_deviation, simulate, state_trajectories, write_csv
from .config import ConfigError, RunConfig, load_config
from .cost import breakdown
from .ga import TuningError, seed_sweep

log = logging.getLogger("fopid_lqr")

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2, 3


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2) + "\n")


def run_metrics(result, cfg: RunConfig) -> dict:
    b = breakdown(result, cfg.cost, cfg.ga.penalty)
    out = {**b.to_dict(), "diverged": result.diverged}
    out["objective"] = out.pop("total")
    if result.diverged:
        out["early_control_effort"] = None
        out["peak_disturbance_deviation"] = None
    else:
        out["early_control_effort"] = early_control_effort(result, cfg.report.effort_window)
        out["peak_disturbance_deviation"] = peak_disturbance_deviation(result, cfg.sim.onset)
    return out


def _write_run(outdir: Path, cfg: RunConfig, controller, plots: bool, label: str) -> dict:
    """Simulate ``controller`` under ``cfg.sim`` and write response/states CSV (and SVG)."""
    res = simulate(cfg.plant, controller, cfg.sim)
    states = None if res.diverged else state_trajectories(res, controller.lam, controller.mu)
    write_csv(outdir / "response.csv", res)
    if states is not None:
        write_csv(outdir / "states.csv", res, states)
    if plots:
        from .plots import plot_response, plot_states

        plot_response(outdir / "response.svg", {label: res})
        if states is not None:
            plot_states(outdir / "states.svg", res.t, {label: states})
    return {"result": res, "metrics": run_metrics(res, cfg)}


def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    if getattr(args, "output", None):
        cfg = replace(cfg, output_dir=Path(args.output))
    if getattr(args, "seed", None) is not None:
        if args.seed < 0:
            raise ConfigError("--seed must be non-negative")
        cfg = replace(cfg, ga=cfg.ga.with_seed(args.seed))
    return cfg


def cmd_tune(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    if args.seeds < 1:
        raise ConfigError("--seeds must be >= 1")
    seeds = [cfg.ga.seed + i for i in range(args.seeds)]
    log.info("tuning %s mode on %s with seeds %s", cfg.mode, cfg.plant, seeds)
    best, scores = seed_sweep(cfg.mode, cfg.plant, cfg.tuning_sim, cfg.cost, cfg.ga, seeds, workers=cfg.workers)

    outdir = cfg.output_dir
    outdir.mkdir(parents=True, exist_ok=True)
    tuned = simulate(cfg.plant, best.controller, cfg.tuning_sim)
    doc = best.to_dict()
    doc["objective"] = breakdown(tuned, cfg.cost, cfg.ga.penalty).to_dict()
    doc["seed_objectives"] = {str(k): v for k, v in scores.items()}
    doc["config"] = cfg.to_dict()
    run = _write_run(outdir, cfg, best.controller, not args.no_plots, f"{cfg.mode} tuned")
    doc["response_metrics"] = run["metrics"]
    _write_json(outdir / "result.json", doc)

    c = best.controller
    print(f"best objective {best.best_objective:.6g} after {best.generations_run} generations (seed {best.ga.seed})")
    print(f"controller kp={c.kp:.6f} ki={c.ki:.6f} kd={c.kd:.6f} lam={c.lam:.6f} mu={c.mu:.6f}")
    print(f"artifacts written to {outdir}")
    if run["result"].diverged:
        print("error: tuned controller diverges under the reporting simulation", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    if cfg.controller is None:
        raise ConfigError(f"{args.config}: simulate needs a [controller] section")
    outdir = cfg.output_dir
    outdir.mkdir(parents=True, exist_ok=True)
    run = _write_run(outdir, cfg, cfg.controller, not args.no_plots, "controller")
    metrics = {**run["metrics"], "controller": cfg.controller.to_dict(), "config": cfg.to_dict()}
    _write_json(outdir / "metrics.json", metrics)
    for key in ("itae", "isco", "objective", "early_control_effort", "peak_disturbance_deviation"):
        print(f"{key:<28s} {metrics[key]}")
    if run["result"].diverged:
        print("error: closed loop diverged", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def cmd_compare(args) -> int:
    if len(args.config) != 2:
        raise ConfigError("compare takes exactly two --config files")
    first, second = (_apply_overrides(load_config(p), args) for p in args.config)
    for cfg, path in ((first, args.config[0]), (second, args.config[1])):
        if cfg.controller is None:
            raise ConfigError(f"{path}: compare needs a [controller] section")
    if first.plant != second.plant:
        raise ConfigError(f"plants differ: {first.plant} vs {second.plant}")

    runs = {"a": first.controller, "b": second.controller}
    results = {k: simulate(first.plant, c, first.sim) for k, c in runs.items()}
    metrics = {k: run_metrics(r, first) for k, r in results.items()}

    outdir = first.output_dir
    outdir.mkdir(parents=True, exist_ok=True)
    n = min(len(r.t) for r in results.values())
    header = ["t", "r"] + [f"{s}_{k}" for k in runs for s in ("y", "u", "e")]
    rows = [results["a"].t[:n], results["a"].r[:n]]
    for k in runs:
        rows += [results[k].y[:n], results[k].u[:n], results[k].e[:n]]
    np.savetxt(outdir / "compare.csv", np.column_stack(rows), fmt="%.9g", delimiter=",", header=",".join(header), comments="")
    _write_json(
        outdir / "compare.json",
        {
            "a": {"config": str(args.config[0]), "controller": runs["a"].to_dict(), "metrics": metrics["a"]},
            "b": {"config": str(args.config[1]), "controller": runs["b"].to_dict(), "metrics": metrics["b"]},
            "settings": first.to_dict(),
        },
    )
    if not args.no_plots:
        from .plots import plot_response

        plot_response(outdir / "compare.svg", {f"a: {args.config[0]}": results["a"], f"b: {args.config[1]}": results["b"]})

    print(f"{'metric':<28s} {'a':>14s} {'b':>14s}  better")
    for key in ("itae", "isco", "objective", "early_control_effort", "peak_disturbance_deviation"):
        va, vb = metrics["a"][key], metrics["b"][key]
        if va is None or vb is None:
            print(f"{key:<28s} {str(va):>14s} {str(vb):>14s}")
            continue
        better = "tie" if va == vb else ("a" if va < vb else "b")
        print(f"{key:<28s} {va:14.6g} {vb:14.6g}  {better}")
    if any(r.diverged for r in results.values()):
        print("error: at least one closed loop diverged", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def cmd_validate(args) -> int:
    checks = validation.run_all()
    for c in checks:
        print(c.line())
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return EXIT_VALIDATION if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fopid-lqr", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, multi=False):
        if multi:
            p.add_argument("--config", action="append", required=True, help="TOML run configuration (give twice)")
        else:
            p.add_argument("--config", required=True, help="TOML run configuration")
        p.add_argument("--output", help="output directory (overrides output_dir)")
        p.add_argument("--seed", type=int, help="GA seed (overrides ga.seed)")
        p.add_argument("--no-plots", action="store_true", help="skip SVG output")

    p = sub.add_parser("tune", help="GA search for the best controller")
    common(p)
    p.add_argument("--seeds", type=int, default=1, help="run this many consecutive seeds and keep the best")
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("simulate", help="simulate the configured controller")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="simulate two controllers under identical settings")
    common(p, multi=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("validate", help="run the built-in checks against published numbers")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (TuningError, SimulationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
