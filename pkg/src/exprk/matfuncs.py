"""Dense matrix-function kernel.

Provides the matrix exponential (scaling-and-squaring with a diagonal
Pade approximant of order 13), the phi functions phi_k in scalar and
matrix form, the augmented-matrix evaluation of linear combinations
sum_i phi_i(M) v_i as a single exponential, and a symmetric
eigendecomposition with fractional powers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DimensionError, DomainError, ParameterError

MAX_PHI_ORDER = 8

# Numerator coefficients of the [13/13] diagonal Pade approximant to exp.
_PADE13 = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0,
    670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
    960960.0, 16380.0, 182.0, 1.0,
)
_PADE13_BOUND = 5.37  # 1-norm up to which the approximant is full precision

_PHI_TAYLOR_CUTOFF = 0.1
_PHI_TAYLOR_TERMS = 20


def _as_array(x, name="input"):
    a = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(a)):
        raise ContractError(f"{name} contains non-finite entries")
    return a


def _as_square(M, name="matrix"):
    M = _as_array(M, name)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {M.shape}")
    return M


def is_symmetric(M, rtol=1e-12):
    M = np.asarray(M)
    if M.shape[0] != M.shape[1]:
        return False
    scale = np.abs(M).max()
    if scale == 0.0:
        return True
    return np.abs(M - M.T).max() <= rtol * scale


def expm(M):
    """Matrix exponential e^M via scaling-and-squaring, Pade order 13.

    Scaling: s = max(0, ceil(log2(||M||_1 / 5.37))).
    """
    M = _as_square(M)
    n = M.shape[0]
    norm1 = np.linalg.norm(M, 1)
    s = max(0, math.ceil(math.log2(norm1 / _PADE13_BOUND))) if norm1 > _PADE13_BOUND else 0
    Ms = M / (2.0 ** s)
    b = _PADE13
    I = np.eye(n)
    M2 = Ms @ Ms
    M4 = M2 @ M2
    M6 = M4 @ M2
    U = Ms @ (M6 @ (b[13] * M6 + b[11] * M4 + b[9] * M2)
              + b[7] * M6 + b[5] * M4 + b[3] * M2 + b[1] * I)
    V = (M6 @ (b[12] * M6 + b[10] * M4 + b[8] * M2)
         + b[6] * M6 + b[4] * M4 + b[2] * M2 + b[0] * I)
    E = np.linalg.solve(V - U, V + U)
    for _ in range(s):
        E = E @ E
    return E


def phi_values(k: int, z):
    """phi_k evaluated elementwise on a scalar or array argument.

    Uses the downward recursion from exp for |z| >= 0.1 and a truncated
    Taylor series sum_j z^j / (j+k)! below that, where the recursion
    would cancel catastrophically.
    """
    if not 0 <= k <= MAX_PHI_ORDER:
        raise ParameterError(f"phi order must be in [0, {MAX_PHI_ORDER}], got {k}")
    z = np.asarray(z, dtype=float)
    if k == 0:
        return np.exp(z)
    out = np.empty_like(z)
    small = np.abs(z) < _PHI_TAYLOR_CUTOFF
    zs = z[small]
    acc = np.zeros_like(zs)
    for j in range(_PHI_TAYLOR_TERMS - 1, -1, -1):
        acc = acc * zs + 1.0 / math.factorial(j + k)
    out[small] = acc
    zb = z[~small]
    p = np.exp(zb)
    for j in range(k):
        p = (p - 1.0 / math.factorial(j)) / zb
    out[~small] = p
    return out


def phi_scalar(k: int, z: float) -> float:
    return float(phi_values(k, z))


def phi_combination(M, vs):
    """Evaluate sum_{i=1..k} phi_i(M) v_i as one matrix exponential.

    Builds the (n+k)x(n+k) augmentation [[M, W], [0, K]] with W columns
    v_k, ..., v_1 and K the nilpotent superdiagonal shift; the first n
    entries of exp's last column give the combination.
    """
    M = _as_square(M)
    n = M.shape[0]
    if len(vs) < 1:
        raise ParameterError("need at least one vector")
    vs = [_as_array(v, "vector") for v in vs]
    for v in vs:
        if v.shape != (n,):
            raise DimensionError(f"vector length {v.shape} does not match matrix size {n}")
    k = len(vs)
    W = np.column_stack([vs[k - 1 - j] for j in range(k)])
    aug = np.zeros((n + k, n + k))
    aug[:n, :n] = M
    aug[:n, n:] = W
    if k > 1:
        aug[n:, n:] = np.diag(np.ones(k - 1), 1)
    return expm(aug)[:n, -1]


def phi_matrix(k: int, M, method="auto"):
    """phi_k(M) as a dense matrix.

    method: 'auto' uses the eigendecomposition when M is symmetric and
    the augmented-matrix device columnwise otherwise; 'eigen' and
    'augmented' force a path (useful for cross-validation).
    """
    M = _as_square(M)
    if not 0 <= k <= MAX_PHI_ORDER:
        raise ParameterError(f"phi order must be in [0, {MAX_PHI_ORDER}], got {k}")
    if k == 0:
        return expm(M)
    if method not in ("auto", "eigen", "augmented"):
        raise ParameterError(f"unknown method {method!r}")
    if method == "eigen" or (method == "auto" and is_symmetric(M)):
        if not is_symmetric(M):
            raise ContractError("eigen path requires a symmetric matrix")
        lam, Q = np.linalg.eigh(M)
        return (Q * phi_values(k, lam)) @ Q.T
    n = M.shape[0]
    zeros = [np.zeros(n)] * (k - 1)
    cols = [phi_combination(M, zeros + [e]) for e in np.eye(n)]
    return np.column_stack(cols)


@dataclass(frozen=True)
class SymEigen:
    """Eigendecomposition M = Q diag(eigenvalues) Q^T, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def sym_eigen(M) -> SymEigen:
    """Full eigendecomposition of a symmetric matrix.

    Raises ContractError when the relative asymmetry (inf-norm) exceeds 1e-12.
    """
    M = _as_square(M)
    scale = np.abs(M).max()
    if scale > 0 and np.abs(M - M.T).max() > 1e-12 * scale:
        raise ContractError("matrix is not symmetric to 1e-12")
    lam, Q = np.linalg.eigh(0.5 * (M + M.T))
    return SymEigen(eigenvalues=lam, eigenvectors=Q)


def frac_power(E: SymEigen, gamma: float):
    """Q diag(lambda^gamma) Q^T; requires positive spectrum for non-integral gamma."""
    lam = E.eigenvalues
    if gamma != int(gamma) and lam.min() <= 0.0:
        raise DomainError(
            f"fractional power {gamma} undefined: smallest eigenvalue {lam.min():g} <= 0")
    Q = E.eigenvectors
    return (Q * lam ** gamma) @ Q.T
