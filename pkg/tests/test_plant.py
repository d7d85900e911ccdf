import numpy as np
import pytest

from fopid_lqr.fixtures import G1, G2
from fopid_lqr.frac_num import mittag_leffler
from fopid_lqr.plant import FoPlant, build_state_space, controllability_matrix, open_loop_step


def test_g1_state_space():
    m = build_state_space(FoPlant(5, 1.11, 1.7), 1.0, 0.4)
    np.testing.assert_allclose(m.a_matrix[2], [0, -0.900901, 0], atol=5e-7)
    np.testing.assert_allclose(m.b_vector, [0, 0, -4.504505], atol=5e-7)
    np.testing.assert_allclose(m.order_vector, [1, 0.4, 1.3], atol=1e-15)
    np.testing.assert_array_equal(m.a_matrix[:2], [[0, 1, 0], [0, 0, 1]])


def test_unit_parameters():
    m = build_state_space(FoPlant(1, 1, 0.3), 0.2, 1.9)
    assert m.a_matrix[2].tolist() == [0, -1, 0]
    assert m.b_vector.tolist() == [0, 0, -1]
    # mu > alpha is allowed; last order goes negative
    assert m.order_vector[2] == pytest.approx(-1.6)


def test_g2_orders():
    m = build_state_space(FoPlant(5, 1.11, 0.7), 0.9, 0.05)
    np.testing.assert_allclose(m.order_vector, [0.9, 0.05, 0.65], atol=1e-15)


@pytest.mark.parametrize("tau", [0.01, 1.0, 1.11, 250.0])
@pytest.mark.parametrize("gain", [-3.0, 0.5, 5.0])
def test_spectrum_and_controllability(tau, gain):
    m = build_state_space(FoPlant(gain, tau, 1.2), 1.0, 0.5)
    eig = np.sort_complex(np.linalg.eigvals(m.a_matrix))
    expected = np.sort_complex(np.array([0, 1j / np.sqrt(tau), -1j / np.sqrt(tau)]))
    np.testing.assert_allclose(eig, expected, atol=1e-12 * (1 + 1 / np.sqrt(tau)))
    assert np.linalg.matrix_rank(controllability_matrix(m)) == 3


@pytest.mark.parametrize(
    "kwargs,key",
    [
        ({"gain": 1, "tau": -1.0, "alpha": 1}, "tau"),
        ({"gain": 1, "tau": 0.0, "alpha": 1}, "tau"),
        ({"gain": 1, "tau": 1, "alpha": 0.0}, "alpha"),
        ({"gain": 1, "tau": 1, "alpha": 2.0}, "alpha"),
        ({"gain": float("nan"), "tau": 1, "alpha": 1}, "gain"),
    ],
)
def test_invalid_plants(kwargs, key):
    with pytest.raises(ValueError, match=key):
        FoPlant(**kwargs)


def test_classification():
    assert G1.kind == "oscillatory"
    assert G2.kind == "sluggish"
    assert FoPlant(1, 1, 1).kind == "first-order"


def test_first_order_step():
    t, y = open_loop_step(FoPlant(1, 1, 1), 1e-3, 5)
    assert np.max(np.abs(y - (1 - np.exp(-t)))) <= 0.005


@pytest.mark.parametrize("plant", [G1, G2, FoPlant(-2.0, 0.3, 0.45)])
def test_first_sample(plant):
    h = 0.05
    t, y = open_loop_step(plant, h, h)
    assert len(y) == 2 and y[0] == 0
    assert y[1] == pytest.approx(plant.gain / (1 + plant.tau * h**-plant.alpha), rel=1e-14)


def test_g1_step_against_mittag_leffler():
    t, y = open_loop_step(G1, 1e-3, 5)
    idx = np.arange(100, 5001, 7)
    exact = np.array([G1.gain * (1 - mittag_leffler(G1.alpha, -(x**G1.alpha) / G1.tau)) for x in t[idx]])
    assert np.max(np.abs(y[idx] - exact)) <= 0.02 * G1.gain


def test_overshoot_and_monotone_shapes():
    _, y1 = open_loop_step(G1, 0.01, 20)
    assert y1.max() > G1.gain
    t, y2 = open_loop_step(G2, 0.01, 20)
    assert np.all(np.diff(y2) >= 0) and y2.max() < G2.gain
    _, y_int = open_loop_step(FoPlant(G2.gain, G2.tau, 1.0), 0.01, 20)
    late = t >= 5
    assert np.all(y2[late] < y_int[late])


def test_dc_gain_oscillatory():
    horizon = 50 * G1.tau ** (1 / G1.alpha)
    _, y = open_loop_step(G1, 0.01, horizon)
    assert abs(y[-1] - G1.gain) <= 0.02 * G1.gain


def test_dc_gain_sluggish_follows_algebraic_tail():
    # the sluggish plant creeps towards K like t^-alpha; at 50 tau^(1/alpha)
    # it is still ~2.3% short, exactly as the analytic solution says
    horizon = 50 * G2.tau ** (1 / G2.alpha)
    _, y = open_loop_step(G2, 0.01, horizon)
    exact_gap = mittag_leffler(G2.alpha, -(horizon**G2.alpha) / G2.tau)
    assert 1 - y[-1] / G2.gain == pytest.approx(exact_gap, abs=1e-4)
    _, y_long = open_loop_step(G2, 0.05, 2000)
    assert abs(y_long[-1] - G2.gain) <= 0.02 * G2.gain


def test_bad_step():
    with pytest.raises(ValueError):
        open_loop_step(G1, 0, 1)
    with pytest.raises(ValueError):
        open_loop_step(G1, 0.1, 0.01)
