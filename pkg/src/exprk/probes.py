"""Desk-scale numerical probes of the analytical hypotheses.

Three probes: the semigroup smoothing quantity ||t^g A^g e^{-tA}||,
relative boundedness of the advection matrix by a fractional power of
the diffusion matrix, and boundedness of Fourier partial sums of the
operator combination A^{-1} B A^beta applied to a sine series.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import discretize
from .errors import ParameterError
from .matfuncs import frac_power, sym_eigen

TREND_FACTOR = 1.05


def bounded_trend(values) -> bool:
    """Last value at most 1.05x the median of the earlier values."""
    v = np.asarray(values, dtype=float)
    if v.size < 2:
        return True
    return bool(v[-1] <= TREND_FACTOR * np.median(v[:-1]))


@dataclass(frozen=True)
class ProbeReport:
    grid: np.ndarray       # strictly increasing control parameter
    values: np.ndarray     # measured quantity per grid point
    max_value: float
    bounded: bool
    label: str = ""

    def to_csv(self, path):
        lines = ["grid_value,quantity"]
        for g, v in zip(self.grid, self.values):
            lines.append(f"{g:.17g},{v:.17g}")
        lines.append(f"# verdict={'bounded' if self.bounded else 'unbounded'} "
                     f"max={self.max_value:.17g} label={self.label}")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")


def _report(grid, values, label):
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values, dtype=float)
    if np.any(np.diff(grid) <= 0):
        raise ParameterError("probe grid must be strictly increasing")
    return ProbeReport(grid=grid, values=values, max_value=float(values.max()),
                       bounded=bounded_trend(values), label=label)


def smoothing_probe(ops: discretize.OperatorPair, gamma: float,
                    t_grid: Sequence[float]) -> ProbeReport:
    """Spectral value of ||t^g A^g e^{-tA}||_2 over a grid of times.

    For SPD A this is max over eigenvalues of (t*lam)^g e^{-t*lam}, which
    calculus bounds by g^g e^{-g} independently of t.
    """
    if gamma < 0:
        raise ParameterError(f"gamma must be nonnegative, got {gamma}")
    lam = sym_eigen(ops.A).eigenvalues
    if lam.min() <= 0:
        raise ParameterError("smoothing probe requires a positive definite A")
    values = [float(((t * lam) ** gamma * np.exp(-t * lam)).max()) for t in t_grid]
    return _report(t_grid, values, f"smoothing gamma={gamma:g}")


def operator_2norm(M, iters: int = 50, tol: float = 1e-10) -> float:
    """Largest singular value via power iteration on M^T M."""
    M = np.asarray(M, dtype=float)
    G = M.T @ M
    rng = np.random.default_rng(12345)
    v = rng.standard_normal(G.shape[0])
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(iters):
        w = G @ v
        lam_new = float(np.linalg.norm(w))
        if lam_new == 0.0:
            return 0.0
        v = w / lam_new
        if abs(lam_new - lam) <= tol * lam_new:
            lam = lam_new
            break
        lam = lam_new
    return float(np.sqrt(lam))


def relative_boundedness_probe(gamma: float, n_list: Sequence[int],
                               nu: float = 0.2) -> ProbeReport:
    """max(||B A^-g||_2, ||A^-g B||_2) on the testbed across grid sizes."""
    if not 0.0 < gamma <= 1.0:
        raise ParameterError(f"gamma must be in (0, 1], got {gamma}")
    values = []
    for n in n_list:
        g = discretize.build_grid(int(n))
        ops = discretize.build_operators(g, nu)
        A_neg_g = frac_power(sym_eigen(ops.A), -gamma)
        values.append(max(operator_2norm(ops.B @ A_neg_g), operator_2norm(A_neg_g @ ops.B)))
    return _report(n_list, values, f"relbound gamma={gamma:g}")


def sine_coefficients_initial_data(k):
    """Sine-series coefficients of 4x(1-x): 32/(k^3 pi^3) for odd k, else 0."""
    k = np.asarray(k, dtype=float)
    return np.where(k % 2 == 1, 32.0 / (k ** 3 * np.pi ** 3), 0.0)


def worst_case_coefficients(k):
    """The generic decay rate 1/k admitted for any bounded odd extension."""
    return 1.0 / np.asarray(k, dtype=float)


def fourier_beta_probe(coeffs: Callable, beta: float, N_list: Sequence[int],
                       norm: str = "linf", x_grid: int = 2048) -> ProbeReport:
    """Partial sums of sum_k f_k (k pi)^(2b-1) (cos(k pi x) + (1-(-1)^k) x - 1).

    coeffs maps an integer array of indices k to the coefficients f_k.
    The requested discrete norm of the partial sum is reported for each
    truncation length N.
    """
    if norm not in ("l1", "l2", "linf"):
        raise ParameterError(f"norm must be l1, l2 or linf, got {norm!r}")
    if x_grid < 1000:
        raise ParameterError(f"need at least 1000 evaluation points, got {x_grid}")
    N_list = [int(N) for N in N_list]
    x = np.linspace(0.0, 1.0, x_grid)
    h = 1.0 / (x_grid - 1)
    S = np.zeros_like(x)
    values = []
    k_prev = 0
    for N in N_list:
        k = np.arange(k_prev + 1, N + 1)
        if k.size:
            a = np.asarray(coeffs(k), dtype=float) * (k * np.pi) ** (2.0 * beta - 1.0)
            odd = (k % 2 == 1)
            S = S + np.cos(np.outer(x, k * np.pi)) @ a + 2.0 * a[odd].sum() * x - a.sum()
        k_prev = N
        if norm == "l1":
            values.append(h * np.abs(S).sum())
        elif norm == "l2":
            values.append(float(np.sqrt(h * (S ** 2).sum())))
        else:
            values.append(float(np.abs(S).max()))
    return _report(N_list, values, f"fourier beta={beta:g} norm={norm}")
