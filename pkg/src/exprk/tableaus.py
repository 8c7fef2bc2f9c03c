"""Tableaus for explicit exponential Runge-Kutta methods.

A coefficient a_ij or b_i is a linear combination of phi functions at
scaled arguments: sum over terms of weight * phi_order(-scale * tau * A).
Each term carries its own scale because the built-in third-order scheme
mixes arguments -tau*A/2 and -tau*A inside a single coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Tuple

import numpy as np

from .errors import ContractError, ParameterError
from .matfuncs import phi_matrix, phi_values


@dataclass(frozen=True)
class PhiTerm:
    scale: float   # node multiplier: argument is scale * Z with Z = -tau*A
    order: int     # phi index k
    weight: float


@dataclass(frozen=True)
class PhiCombo:
    terms: Tuple[PhiTerm, ...]

    def eval_scalar(self, z: float) -> float:
        return float(sum(t.weight * phi_values(t.order, t.scale * z) for t in self.terms))

    def eval_spectral(self, z):
        """Vectorized evaluation on an array of (real) arguments."""
        z = np.asarray(z, dtype=float)
        out = np.zeros_like(z)
        for t in self.terms:
            out += t.weight * phi_values(t.order, t.scale * z)
        return out

    def eval_matrix(self, Z, method="auto"):
        Z = np.asarray(Z, dtype=float)
        out = np.zeros_like(Z)
        for t in self.terms:
            out += t.weight * phi_matrix(t.order, t.scale * Z, method=method)
        return out

    def at_zero(self) -> float:
        """Classical (A = 0) weight: phi_k(0) = 1/k!."""
        return sum(t.weight / math.factorial(t.order) for t in self.terms)


def _combo(*terms) -> PhiCombo:
    return PhiCombo(terms=tuple(PhiTerm(*t) for t in terms))


@dataclass(frozen=True)
class Tableau:
    """Explicit exponential Runge-Kutta tableau.

    a maps (i, j) with 1 <= j < i <= s to the stage coefficient combo;
    claims records which stiff order conditions the scheme is built to
    satisfy and in which form ('strong' or 'weak').
    """

    name: str
    c: Tuple[float, ...]
    a: Mapping[Tuple[int, int], PhiCombo]
    b: Tuple[PhiCombo, ...]
    claims: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        s = len(self.c)
        if s < 1 or self.c[0] != 0.0:
            raise ContractError("first node must be 0")
        if len(self.b) != s:
            raise ContractError("b must have one combo per stage")
        for (i, j) in self.a:
            if not (1 <= j < i <= s):
                raise ContractError(f"a[{i}][{j}] violates explicit lower-triangular structure")
        for combo in list(self.a.values()) + list(self.b):
            for t in combo.terms:
                if not (0.0 <= t.scale <= 1.0):
                    raise ContractError(f"phi argument scale {t.scale} outside [0, 1]")
                if not math.isfinite(t.weight):
                    raise ContractError("non-finite coefficient weight")

    @property
    def s(self) -> int:
        return len(self.c)


def exponential_euler() -> Tableau:
    """One-stage scheme: u+ = e^{-tau A} u + tau phi_1(-tau A) B u."""
    return Tableau(
        name="euler",
        c=(0.0,),
        a={},
        b=(_combo((1.0, 1, 1.0)),),
        claims={1: "strong"},
    )


def second_order(c: float = 0.5) -> Tableau:
    """One-parameter family of two-stage second-order schemes.

    b_2 = (1/c) phi_2, b_1 = phi_1 - (1/c) phi_2, a_21 = c phi_1(-c tau A).
    """
    if not 0.0 < c <= 1.0:
        raise ParameterError(f"node c must be in (0, 1], got {c}")
    return Tableau(
        name=f"rk2(c={c:g})",
        c=(0.0, c),
        a={(2, 1): _combo((c, 1, c))},
        b=(
            _combo((1.0, 1, 1.0), (1.0, 2, -1.0 / c)),
            _combo((1.0, 2, 1.0 / c)),
        ),
        claims={1: "strong", 2: "strong", 3: "strong"},
    )


def third_order() -> Tableau:
    """Three-stage third-order scheme with nodes (0, 1/2, 1).

    Satisfies stiff order conditions 1-4 in strong form and condition 5
    weakly (with the b coefficients evaluated at the zero matrix).
    """
    half, one = 0.5, 1.0
    return Tableau(
        name="rk3paper",
        c=(0.0, 0.5, 1.0),
        a={
            (2, 1): _combo((half, 1, 0.5)),
            (3, 1): _combo((one, 1, 1.0), (half, 2, -2.0), (one, 2, -2.0)),
            (3, 2): _combo((half, 2, 2.0), (one, 2, 2.0)),
        },
        b=(
            _combo((one, 1, 1.0), (one, 2, -3.0), (one, 3, 4.0)),
            _combo((one, 2, 4.0), (one, 3, -8.0)),
            _combo((one, 2, -1.0), (one, 3, 4.0)),
        ),
        claims={1: "strong", 2: "strong", 3: "strong", 4: "strong", 5: "weak"},
    )


BUILTIN_SCHEMES = ("euler", "rk2", "rk3paper")


def resolve_scheme(name: str, c: float = 0.5) -> Tableau:
    if name == "euler":
        return exponential_euler()
    if name == "rk2":
        return second_order(c)
    if name == "rk3paper":
        return third_order()
    raise ParameterError(
        f"unknown scheme {name!r}; built-ins are {', '.join(BUILTIN_SCHEMES)}")
