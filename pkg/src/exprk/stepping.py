"""Time stepping for explicit exponential Runge-Kutta schemes.

A Stepper precomputes, once per (tableau, A, tau), the dense coefficient
matrices e^{-c_i tau A} and all phi combinations, so each step costs
matrix-vector products only. For symmetric A a single eigendecomposition
feeds every coefficient; otherwise each phi matrix is formed through the
augmented-matrix kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .discretize import OperatorPair
from .errors import DimensionError, InstabilityError, ParameterError
from .matfuncs import expm, is_symmetric, phi_matrix, phi_values
from .tableaus import PhiCombo, Tableau

RK4_STABILITY_LIMIT = 2.7  # inside the real-axis stability interval (~2.785)


@dataclass(frozen=True)
class SolveResult:
    final: np.ndarray
    steps: int
    tau: float
    trace: Optional[list] = None


class Stepper:
    """Cached single-step map for one (tableau, operators, tau) triple."""

    def __init__(self, tableau: Tableau, ops: OperatorPair, tau: float):
        if tau <= 0:
            raise ParameterError(f"step size must be positive, got {tau}")
        A = np.asarray(ops.A, dtype=float)
        B = np.asarray(ops.B, dtype=float)
        n = A.shape[0]
        if A.shape != (n, n) or B.shape != (n, n):
            raise DimensionError("operator matrices must be square and equally sized")
        self.tableau = tableau
        self.tau = tau
        self.n = n
        self._B = B

        if is_symmetric(A):
            lam, Q = np.linalg.eigh(A)
            z = -tau * lam

            def phi_mat(order, scale):
                return (Q * phi_values(order, scale * z)) @ Q.T
        else:
            def phi_mat(order, scale):
                arg = -scale * tau * A
                return expm(arg) if order == 0 else phi_matrix(order, arg)

        cache = {}

        def get(order, scale):
            key = (order, scale)
            if key not in cache:
                cache[key] = phi_mat(order, scale)
            return cache[key]

        def combo_matrix(combo: PhiCombo):
            out = np.zeros((n, n))
            for t in combo.terms:
                out += t.weight * get(t.order, t.scale)
            return out

        self._exp_stage = [get(0, ci) if ci != 0.0 else np.eye(n) for ci in tableau.c]
        self._exp_full = get(0, 1.0)
        self._a = {ij: combo_matrix(combo) for ij, combo in tableau.a.items()}
        self._b = [combo_matrix(combo) for combo in tableau.b]

    def step(self, u):
        u = np.asarray(u, dtype=float)
        if u.shape != (self.n,):
            raise DimensionError(f"state length {u.shape} does not match operators ({self.n})")
        tab, tau, B = self.tableau, self.tau, self._B
        Bu = [B @ u]  # B U_1, with U_1 = u since c_1 = 0
        for i in range(2, tab.s + 1):
            Ui = self._exp_stage[i - 1] @ u
            for j in range(1, i):
                if (i, j) in self._a:
                    Ui = Ui + tau * (self._a[(i, j)] @ Bu[j - 1])
            Bu.append(B @ Ui)
        out = self._exp_full @ u
        for i in range(tab.s):
            out = out + tau * (self._b[i] @ Bu[i])
        return out


def step(tableau: Tableau, ops: OperatorPair, tau: float, u):
    """One step with per-call coefficient recomputation (reference path)."""
    return Stepper(tableau, ops, tau).step(u)


def _check_divides(T, tau, what="tau"):
    ratio = T / tau
    N = round(ratio)
    if N < 1 or abs(ratio - N) > 1e-9:
        raise ParameterError(f"{what}={tau:g} does not divide T={T:g}")
    return N


def solve(tableau: Tableau, ops: OperatorPair, u0, T: float, tau: float,
          capture_trace: bool = False) -> SolveResult:
    """Integrate u' = -A u + B u from 0 to T with N = T/tau steps."""
    N = _check_divides(T, tau)
    stepper = Stepper(tableau, ops, tau)
    u = np.asarray(u0, dtype=float).copy()
    trace = [u.copy()] if capture_trace else None
    for i in range(N):
        u = stepper.step(u)
        if not np.all(np.isfinite(u)):
            raise InstabilityError(i + 1)
        if capture_trace:
            trace.append(u.copy())
    return SolveResult(final=u, steps=N, tau=tau, trace=trace)


def spectral_radius_estimate(L, iters: int = 20, seed: int = 0) -> float:
    """Power-iteration estimate of the spectral radius of L."""
    L = np.asarray(L, dtype=float)
    n = L.shape[0]
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    rho = 0.0
    for _ in range(iters):
        w = L @ v
        rho = np.linalg.norm(w)
        if rho == 0.0:
            return 0.0
        v = w / rho
    return float(rho)


def solve_reference_rk4(ops: OperatorPair, u0, T: float, tau_ref: float):
    """Classical RK4 on u' = (B - A) u; the reference solver.

    Rejects step sizes outside the explicit stability bound
    tau_ref <= 2.7 / rho(A - B).
    """
    N = _check_divides(T, tau_ref, "tau_ref")
    L = np.asarray(ops.B, dtype=float) - np.asarray(ops.A, dtype=float)
    rho = spectral_radius_estimate(ops.A - ops.B)
    if rho > 0 and tau_ref > RK4_STABILITY_LIMIT / rho:
        raise ParameterError(
            f"tau_ref={tau_ref:g} exceeds RK4 stability bound "
            f"{RK4_STABILITY_LIMIT / rho:g} (spectral radius ~{rho:g})")
    n = L.shape[0]
    I = np.eye(n)
    M = tau_ref * L
    # RK4 on a linear autonomous system is the quartic Taylor polynomial in tau*L.
    P = I + M @ (I + M @ (I / 2.0 + M @ (I / 6.0 + M / 24.0)))
    u = np.asarray(u0, dtype=float).copy()
    for i in range(N):
        u = P @ u
    if not np.all(np.isfinite(u)):
        raise InstabilityError(N, "reference solve produced non-finite values")
    return u


def default_reference_step(ops: OperatorPair, T: float = 1.0) -> float:
    """Largest tau_ref = T/N with tau_ref <= min(2^-16, 0.9 * 2.7 / rho)."""
    rho = spectral_radius_estimate(ops.A - ops.B)
    bound = 2.0 ** -16
    if rho > 0:
        bound = min(bound, 0.9 * RK4_STABILITY_LIMIT / rho)
    return T / math.ceil(T / bound)
