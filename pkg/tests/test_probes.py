"""Smoothing, relative-boundedness and Fourier-sum probes."""

import numpy as np
import pytest

from exprk.discretize import OperatorPair, build_grid, build_operators
from exprk.errors import ParameterError
from exprk.probes import (TREND_FACTOR, ProbeReport, bounded_trend,
                          fourier_beta_probe, operator_2norm,
                          relative_boundedness_probe,
                          sine_coefficients_initial_data, smoothing_probe,
                          worst_case_coefficients)

T_GRID = [2.0 ** -k for k in range(12, -1, -1)]


def make_ops(n=50, nu=0.2):
    return build_operators(build_grid(n), nu)


# --------------------------------------------------------- bounded_trend

def test_bounded_trend_flat_and_decay():
    assert bounded_trend([3.0, 3.0, 3.0, 3.0])
    assert bounded_trend([4.0, 2.0, 1.0, 0.5])


def test_bounded_trend_growth():
    assert not bounded_trend([1.0, 2.0, 4.0, 8.0])


def test_bounded_trend_threshold_exact():
    # last value exactly at factor x median still counts as bounded
    assert bounded_trend([1.0, 1.0, 1.0, TREND_FACTOR])
    assert not bounded_trend([1.0, 1.0, 1.0, TREND_FACTOR + 1e-9])


def test_bounded_trend_short_inputs():
    assert bounded_trend([])
    assert bounded_trend([7.0])


# -------------------------------------------------------- operator norm

def test_operator_2norm_diagonal():
    assert operator_2norm(np.diag([3.0, -5.0, 1.0])) == pytest.approx(5.0, rel=1e-9)


def test_operator_2norm_matches_svd():
    rng = np.random.default_rng(2)
    M = rng.standard_normal((20, 20))
    assert operator_2norm(M) == pytest.approx(np.linalg.svd(M, compute_uv=False)[0],
                                              rel=1e-5)


def test_operator_2norm_zero():
    assert operator_2norm(np.zeros((4, 4))) == 0.0


# ------------------------------------------------------- smoothing probe

@pytest.mark.parametrize("gamma", [0.25, 0.5, 0.75])
def test_smoothing_probe_calculus_envelope(gamma):
    rep = smoothing_probe(make_ops(), gamma, T_GRID)
    assert rep.max_value <= gamma ** gamma * np.exp(-gamma) + 1e-12
    assert rep.bounded


def test_smoothing_probe_scalar_attains_envelope():
    # with a single eigenvalue lam, the max over the grid containing
    # t = gamma/lam equals the calculus bound exactly
    gamma, lam = 0.5, 2.0
    ops = OperatorPair(A=np.array([[lam]]), B=np.zeros((1, 1)), nu=0.0)
    rep = smoothing_probe(ops, gamma, [0.1, gamma / lam, 1.0])
    assert rep.max_value == pytest.approx(gamma ** gamma * np.exp(-gamma), rel=1e-13)


def test_smoothing_probe_gamma_zero():
    # gamma = 0 reduces to ||e^{-tA}||_2 = e^{-t lam_min}, largest at the
    # smallest time in the grid
    ops = make_ops()
    rep = smoothing_probe(ops, 0.0, T_GRID)
    lam_min = np.linalg.eigvalsh(ops.A).min()
    assert rep.max_value == pytest.approx(np.exp(-T_GRID[0] * lam_min), rel=1e-12)
    assert rep.max_value < 1.0


def test_smoothing_probe_rejects_negative_gamma():
    with pytest.raises(ParameterError):
        smoothing_probe(make_ops(), -0.1, T_GRID)


def test_smoothing_probe_rejects_unordered_grid():
    with pytest.raises(ParameterError):
        smoothing_probe(make_ops(), 0.5, [1.0, 0.5, 2.0])


# ------------------------------------------------- relative boundedness

def test_relbound_gamma_one_bounded():
    # full-strength relative bound: values settle near a constant ~1.6
    rep = relative_boundedness_probe(1.0, [25, 50, 100, 200])
    assert rep.bounded
    assert rep.max_value <= 1.7


def test_relbound_gamma_half_bounded():
    rep = relative_boundedness_probe(0.5, [25, 50, 100, 200, 399])
    assert rep.bounded
    assert rep.max_value <= 2.3  # plateau near 1/sqrt(nu) ~ 2.24


def test_relbound_gamma_tenth_unbounded():
    rep = relative_boundedness_probe(0.1, [25, 50, 100, 200, 399])
    assert not rep.bounded
    assert rep.values[-1] > 1.5 * rep.values[0]


def test_relbound_rejects_bad_gamma():
    for gamma in (0.0, -0.5, 1.5):
        with pytest.raises(ParameterError):
            relative_boundedness_probe(gamma, [25, 50])


# -------------------------------------------------- Fourier coefficients

def test_sine_coefficients_match_quadrature():
    # oracle: f_k = 2 int_0^1 4x(1-x) sin(k pi x) dx by Simpson's rule
    x = np.linspace(0.0, 1.0, 20001)
    w = np.ones_like(x)
    w[1:-1:2], w[2:-1:2] = 4.0, 2.0
    w *= (x[1] - x[0]) / 3.0
    f = 4.0 * x * (1.0 - x)
    for k in range(1, 8):
        quad = 2.0 * float(w @ (f * np.sin(k * np.pi * x)))
        assert sine_coefficients_initial_data(k) == pytest.approx(quad, abs=1e-12)


def test_worst_case_coefficients():
    assert np.allclose(worst_case_coefficients(np.array([1, 2, 4])),
                       [1.0, 0.5, 0.25])


# ------------------------------------------------------- Fourier probe

def test_fourier_probe_zero_coefficients():
    rep = fourier_beta_probe(lambda k: np.zeros_like(k, dtype=float), 0.4,
                             [4, 8, 16])
    assert rep.max_value == 0.0 and rep.bounded


def test_fourier_probe_incremental_matches_direct():
    # running over [8, 32] must give the same final sum as [32] alone
    co = sine_coefficients_initial_data
    a = fourier_beta_probe(co, 0.45, [8, 32], norm="l2")
    b = fourier_beta_probe(co, 0.45, [32], norm="l2")
    assert a.values[-1] == pytest.approx(b.values[0], rel=1e-13)


def test_fourier_probe_linearity_in_coefficients():
    co = sine_coefficients_initial_data
    a = fourier_beta_probe(lambda k: 3.0 * co(k), 0.4, [16], norm="linf")
    b = fourier_beta_probe(co, 0.4, [16], norm="linf")
    assert a.values[0] == pytest.approx(3.0 * b.values[0], rel=1e-13)


def test_fourier_probe_single_mode_closed_form():
    # only k=1: term is a (cos(pi x) + 2x - 1) with a = pi^(2b-1)
    beta = 0.3
    co = lambda k: np.where(k == 1, 1.0, 0.0)
    rep = fourier_beta_probe(co, beta, [1], norm="linf", x_grid=4001)
    a = np.pi ** (2.0 * beta - 1.0)
    x = np.linspace(0.0, 1.0, 4001)
    exact = np.abs(a * (np.cos(np.pi * x) + 2.0 * x - 1.0)).max()
    assert rep.values[0] == pytest.approx(exact, rel=1e-13)


def test_fourier_probe_smooth_data_bounded():
    rep = fourier_beta_probe(sine_coefficients_initial_data, 0.49,
                             [2 ** j for j in range(6, 13)], norm="linf")
    assert rep.bounded


def test_fourier_probe_rejects_bad_args():
    co = sine_coefficients_initial_data
    with pytest.raises(ParameterError):
        fourier_beta_probe(co, 0.4, [8, 16], norm="sup")
    with pytest.raises(ParameterError):
        fourier_beta_probe(co, 0.4, [8, 16], x_grid=500)
    with pytest.raises(ParameterError):
        fourier_beta_probe(co, 0.4, [16, 8])


# ------------------------------------------------------------------ CSV

def test_probe_report_csv(tmp_path):
    rep = smoothing_probe(make_ops(10), 0.5, [0.25, 0.5, 1.0])
    path = tmp_path / "probe.csv"
    rep.to_csv(path)
    text = path.read_text()
    lines = text.splitlines()
    assert lines[0] == "grid_value,quantity"
    assert len(lines) == 5 and lines[-1].startswith("# verdict=bounded")
    assert "\r" not in text
