from pathlib import Path

import pytest

from fopid_lqr import fixtures as fx
from fopid_lqr.config import ConfigError, load_config, parse_config

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"


def test_minimal_config_fills_defaults():
    cfg = parse_config({"plant": {"preset": "g1"}})
    assert cfg.plant == fx.G1
    assert cfg.controller is None
    assert cfg.mode == "lqr" and cfg.workers == 1
    assert cfg.ga.population_size == 20 and cfg.sim.step == 0.01
    d = cfg.to_dict()
    assert d["sim"]["disturbance_time"] == 15.0
    assert d["cost"]["include_disturbance"] is False


def test_tuning_sim_strips_disturbance_by_default():
    cfg = parse_config({"plant": {"preset": "g1"}})
    assert cfg.tuning_sim.disturbance_magnitude == 0
    cfg = parse_config({"plant": {"preset": "g1"}, "cost": {"include_disturbance": True}})
    assert cfg.tuning_sim == cfg.sim


def test_explicit_sections():
    raw = {
        "mode": "direct",
        "plant": {"gain": 2, "tau": 0.5, "alpha": 1.2},
        "controller": {"kp": 1, "ki": 0.5, "kd": 0, "lam": 1, "mu": 0.5},
        "sim": {"step": 0.02, "horizon": 10},
        "ga": {"seed": 7, "bounds": [[0, 1]] * 5, "mutation_shrink": 0.0},
    }
    cfg = parse_config(raw)
    assert cfg.plant.alpha == 1.2 and cfg.controller.ki == 0.5
    assert cfg.ga.bounds == ((0.0, 1.0),) * 5 and cfg.ga.seed == 7


@pytest.mark.parametrize(
    "raw,fragment",
    [
        ({"plant": {"preset": "g1"}, "sim": {"stepsize": 0.1}}, "sim.stepsize"),
        ({"plant": {"preset": "g1"}, "colour": "red"}, "colour"),
        ({"plant": {"gain": 1, "tau": 1, "alpha": 1, "delay": 2}}, "plant.delay"),
        ({"plant": {"gain": 1, "tau": -1, "alpha": 1}}, "tau"),
        ({"plant": {"gain": 1, "tau": 1}}, "alpha"),
        ({"sim": {}}, "plant"),
        ({"plant": {"preset": "g9"}}, "g9"),
        ({"plant": {"preset": "g1", "tau": 2}}, "preset"),
        ({"plant": {"preset": "g1"}, "mode": "pso"}, "mode"),
        ({"plant": {"preset": "g1"}, "workers": 0}, "workers"),
        ({"plant": {"preset": "g1"}, "sim": {"step": "fast"}}, "sim.step"),
        ({"plant": {"preset": "g1"}, "ga": {"population_size": 0}}, "population_size"),
        ({"plant": {"preset": "g1"}, "report": {"effort_window": 100}}, "effort_window"),
        ({"plant": {"preset": "g1"}, "cost": {"include_disturbance": 1}}, "include_disturbance"),
    ],
)
def test_rejections_name_the_problem(raw, fragment):
    with pytest.raises(ConfigError, match=fragment):
        parse_config(raw)


def test_toml_syntax_error_reports_line(tmp_path):
    p = tmp_path / "bad.toml"
    p.write_text("[plant]\ngain = 5\ntau = = 1\n")
    with pytest.raises(ConfigError, match="line 3"):
        load_config(p)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "nope.toml")


@pytest.mark.parametrize("path", sorted(CONFIG_DIR.glob("*.toml")), ids=lambda p: p.name)
def test_shipped_configs_parse(path):
    cfg = load_config(path)
    assert cfg.plant in (fx.G1, fx.G2)
