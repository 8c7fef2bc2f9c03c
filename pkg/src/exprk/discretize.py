"""1D advection-diffusion testbed on the unit interval.

Central second-order finite differences with homogeneous Dirichlet
boundary conditions give a symmetric positive definite diffusion matrix
A (discretizing -nu * d2/dx2) and a skew-symmetric advection matrix B
(discretizing d/dx), so the semidiscrete evolution is u' = -A u + B u.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ParameterError


@dataclass(frozen=True)
class Grid1D:
    n_inner: int
    h: float
    xs: np.ndarray  # inner nodes i*h, i = 1..n_inner


@dataclass(frozen=True)
class OperatorPair:
    A: np.ndarray  # SPD, discrete -nu * d2/dx2
    B: np.ndarray  # skew-symmetric, discrete d/dx
    nu: float


@dataclass(frozen=True)
class NormTriple:
    l1: float
    l2: float
    linf: float


def build_grid(n_inner: int) -> Grid1D:
    if n_inner < 2:
        raise ParameterError(f"need at least 2 inner points, got {n_inner}")
    h = 1.0 / (n_inner + 1)
    xs = h * np.arange(1, n_inner + 1)
    return Grid1D(n_inner=n_inner, h=h, xs=xs)


def build_operators(g: Grid1D, nu: float) -> OperatorPair:
    """Stencils: A = (nu/h^2) tridiag(-1, 2, -1), B = (1/2h) tridiag(-1, 0, 1)."""
    if nu <= 0:
        raise ParameterError(f"diffusion coefficient must be positive, got {nu}")
    n, h = g.n_inner, g.h
    off = np.ones(n - 1)
    A = (nu / h ** 2) * (2.0 * np.eye(n) - np.diag(off, 1) - np.diag(off, -1))
    B = (1.0 / (2.0 * h)) * (np.diag(off, 1) - np.diag(off, -1))
    return OperatorPair(A=A, B=B, nu=nu)


def initial_data(g: Grid1D) -> np.ndarray:
    """Parabolic bump 4 x (1 - x) sampled at the inner nodes."""
    return 4.0 * g.xs * (1.0 - g.xs)


def discrete_norms(g: Grid1D, v) -> NormTriple:
    """h-weighted l1 and l2 norms plus the max norm of a grid function."""
    v = np.asarray(v, dtype=float)
    if v.shape != (g.n_inner,):
        raise DimensionError(
            f"vector length {v.shape} does not match grid size {g.n_inner}")
    h = g.h
    return NormTriple(
        l1=float(h * np.abs(v).sum()),
        l2=float(np.sqrt(h * (v ** 2).sum())),
        linf=float(np.abs(v).max()) if v.size else 0.0,
    )
