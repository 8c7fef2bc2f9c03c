"""Numerical checks of the stiff order conditions (orders one to three).

The five conditions are operator identities in Z = -tau*A:
  1: sum_i b_i(Z) = phi_1(Z)
  2: sum_i b_i(Z) c_i = phi_2(Z)
  3: sum_j a_ij(Z) = c_i phi_1(c_i Z)            for each stage i >= 2
  4: sum_i b_i(Z) c_i^2 / 2 = phi_3(Z)
  5: sum_i b_i(Z) J (sum_k a_ik(Z) c_k - c_i^2 phi_2(c_i Z)) = 0

Each is checked in strong form (a concrete matrix Z), weak form (all phi
arguments at the zero matrix), or the intermediate weak-b-only form where
only the b_i are evaluated at zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from . import discretize
from .errors import DimensionError, ParameterError
from .matfuncs import phi_matrix
from .tableaus import Tableau

MODES = ("strong", "weak", "weak-b-only")
PASS_TOLERANCE = 1e-9  # residual <= tol * (1 + ||rhs||_inf)


def _inf_norm(M):
    return float(np.abs(M).max())


def check_condition(tableau: Tableau, no: int, Z=None, J=None,
                    mode: str = "strong") -> Dict[int, Tuple[float, float]]:
    """Residuals of one order condition.

    Returns {stage: (residual, rhs_inf_norm)}; condition 3 yields one
    entry per stage i >= 2, the others a single entry keyed 0. Z defaults
    to the 1x1 zero matrix, J to the identity.
    """
    if no not in (1, 2, 3, 4, 5):
        raise ParameterError(f"condition number must be 1..5, got {no}")
    if mode not in MODES:
        raise ParameterError(f"mode must be one of {MODES}, got {mode!r}")
    if Z is None:
        Z = np.zeros((1, 1))
    Z = np.asarray(Z, dtype=float)
    if Z.ndim != 2 or Z.shape[0] != Z.shape[1]:
        raise DimensionError(f"Z must be square, got shape {Z.shape}")
    n = Z.shape[0]
    if mode == "weak":
        Z = np.zeros((1, 1))
        n = 1
    I = np.eye(n)
    if J is None:
        J = I
    J = np.asarray(J, dtype=float)
    if J.shape != (n, n):
        raise DimensionError(f"J shape {J.shape} does not match Z ({n}x{n})")

    s, c = tableau.s, tableau.c

    def bmat(i):
        if mode == "weak-b-only":
            return tableau.b[i - 1].at_zero() * I
        return tableau.b[i - 1].eval_matrix(Z)

    def amat(i, j):
        combo = tableau.a.get((i, j))
        return None if combo is None else combo.eval_matrix(Z)

    if no == 1:
        lhs = sum((bmat(i) for i in range(1, s + 1)), np.zeros((n, n)))
        rhs = phi_matrix(1, Z)
        return {0: (_inf_norm(lhs - rhs), _inf_norm(rhs))}
    if no == 2:
        lhs = sum((c[i - 1] * bmat(i) for i in range(2, s + 1)), np.zeros((n, n)))
        rhs = phi_matrix(2, Z)
        return {0: (_inf_norm(lhs - rhs), _inf_norm(rhs))}
    if no == 3:
        out = {}
        for i in range(2, s + 1):
            lhs = np.zeros((n, n))
            for j in range(1, i):
                aij = amat(i, j)
                if aij is not None:
                    lhs += aij
            rhs = c[i - 1] * phi_matrix(1, c[i - 1] * Z)
            out[i] = (_inf_norm(lhs - rhs), _inf_norm(rhs))
        return out
    if no == 4:
        lhs = sum((0.5 * c[i - 1] ** 2 * bmat(i) for i in range(2, s + 1)),
                  np.zeros((n, n)))
        rhs = phi_matrix(3, Z)
        return {0: (_inf_norm(lhs - rhs), _inf_norm(rhs))}
    # condition 5
    lhs = np.zeros((n, n))
    for i in range(2, s + 1):
        bracket = -c[i - 1] ** 2 * phi_matrix(2, c[i - 1] * Z)
        for k in range(2, i):
            aik = tableau.a.get((i, k))
            if aik is not None:
                bracket = bracket + c[k - 1] * aik.eval_matrix(Z)
        lhs += bmat(i) @ J @ bracket
    return {0: (_inf_norm(lhs), 0.0)}


@dataclass(frozen=True)
class ConditionResidual:
    condition: int
    stage: int          # 0 unless the condition is stage-resolved
    mode: str
    z_spec: str
    residual: float
    rhs_norm: float

    @property
    def passed(self) -> bool:
        return self.residual <= PASS_TOLERANCE * (1.0 + self.rhs_norm)


@dataclass(frozen=True)
class OrderConditionReport:
    scheme: str
    seed: int
    rows: Tuple[ConditionResidual, ...]

    def to_table(self) -> str:
        lines = [f"{'condition':>9}  {'stage':>5}  {'mode':<11}  {'z_spec':<10}  "
                 f"{'residual':>12}  {'status':<6}"]
        for r in self.rows:
            lines.append(f"{r.condition:>9}  {r.stage:>5}  {r.mode:<11}  {r.z_spec:<10}  "
                         f"{r.residual:>12.3e}  {'pass' if r.passed else 'fail':<6}")
        return "\n".join(lines) + "\n"


def random_stable_matrix(n: int, seed: int, norm_bound: float = 5.0):
    """Seeded random matrix shifted so every eigenvalue has negative real part."""
    rng = np.random.default_rng(seed)
    S = rng.standard_normal((n, n))
    shift = max(np.linalg.eigvals(S).real.max(), 0.0) + 0.5
    Z = S - shift * np.eye(n)
    norm1 = np.linalg.norm(Z, 1)
    if norm1 > norm_bound:
        Z *= norm_bound / norm1
    return Z


def full_report(tableau: Tableau, z_seed: int = 0) -> OrderConditionReport:
    """All five conditions on three Z specifications.

    (a) the zero matrix (weak form), (b) a seeded random stable 6x6
    matrix, (c) Z = -tau*A for the n=10 testbed with tau = 0.1.
    Condition 5 is additionally evaluated with a seeded random J.
    """
    g = discretize.build_grid(10)
    ops = discretize.build_operators(g, 0.2)
    specs = [
        ("zero", None, "weak"),
        ("random6", random_stable_matrix(6, z_seed), "strong"),
        ("testbed10", -0.1 * ops.A, "strong"),
    ]
    rows = []
    for z_spec, Z, mode in specs:
        for no in (1, 2, 3, 4, 5):
            for stage, (resid, rhs) in check_condition(tableau, no, Z, mode=mode).items():
                rows.append(ConditionResidual(no, stage, mode, z_spec, resid, rhs))
        if mode == "strong":
            n = Z.shape[0]
            Jr = np.random.default_rng(z_seed + 1).standard_normal((n, n))
            (resid, rhs), = check_condition(tableau, 5, Z, J=Jr, mode=mode).values()
            rows.append(ConditionResidual(5, 0, mode, z_spec + "+randJ", resid, rhs))
    return OrderConditionReport(scheme=tableau.name, seed=z_seed, rows=tuple(rows))


def claims_satisfied(tableau: Tableau, report: OrderConditionReport) -> bool:
    """True iff every condition the scheme claims passes in the claimed form."""
    for no, form in tableau.claims.items():
        for r in report.rows:
            if r.condition != no or r.z_spec.endswith("+randJ"):
                continue
            if form == "strong" and not r.passed:
                return False
            if form == "weak" and r.mode == "weak" and not r.passed:
                return False
    return True
