"""Homology of Z^2 = <x, y> with coefficients in a finite-dimensional F_p-module.

The module is F_p^d with x and y acting on row vectors by the given matrices.
The Koszul complex 0 -> A -> A^2 -> A -> 0 has differentials
d2 = [(y - 1), (1 - x)] and d1 = [(x - 1); (y - 1)].
"""

from __future__ import annotations

import logging

import numpy as np

from nilbal.errors import NonCommutingError
from nilbal.models import EulerDims
from nilbal.utils import modp

logger = logging.getLogger(__name__)


def euler_dims(p: int, A_dim: int, act_x: np.ndarray, act_y: np.ndarray) -> EulerDims:
    """(b0, b1, b2) = dims of H_i(Z^2; A).

    b0 - b1 + b2 = 0 always. b2 = b0 holds when x and y are polynomials in one
    unipotent operator but can fail for other commuting pairs.
    """
    x = modp.as_mod(act_x, p).reshape(A_dim, A_dim)
    y = modp.as_mod(act_y, p).reshape(A_dim, A_dim)
    if A_dim == 0:
        return EulerDims(0, 0, 0)
    if not np.array_equal(modp.matmul(x, y, p), modp.matmul(y, x, p)):
        raise NonCommutingError("the actions of x and y do not commute")
    eye = np.eye(A_dim, dtype=np.int64)
    d1 = np.mod(np.vstack([x - eye, y - eye]), p)
    d2 = np.mod(np.hstack([y - eye, eye - x]), p)
    r1, r2 = modp.rank(d1, p), modp.rank(d2, p)
    dims = EulerDims(A_dim - r1, 2 * A_dim - r1 - r2, A_dim - r2)
    logger.debug("euler_dims over F_%d, d = %d: %s", p, A_dim, dims)
    return dims


def _unitriangular_inverse(t: np.ndarray, p: int) -> np.ndarray:
    """(I + M)^-1 = sum of (-M)^i for nilpotent M."""
    d = t.shape[0]
    eye = np.eye(d, dtype=np.int64)
    minus_m = np.mod(eye - t, p)
    out, power = eye.copy(), eye.copy()
    for _ in range(d):
        power = modp.matmul(power, minus_m, p)
        out = np.mod(out + power, p)
    return out


def random_polynomial_pair(
    rng: np.random.Generator, p: int, dim: int
) -> tuple[np.ndarray, np.ndarray]:
    """Commuting unipotent x, y that are polynomials in one nilpotent operator.

    The pair is conjugated by a random unimodular change of basis.
    """
    n = np.triu(rng.integers(0, p, size=(dim, dim)), k=1).astype(np.int64)
    eye = np.eye(dim, dtype=np.int64)

    def poly() -> np.ndarray:
        out = np.zeros((dim, dim), dtype=np.int64)
        power = eye
        for _ in range(dim):
            power = modp.matmul(power, n, p)
            out = np.mod(out + int(rng.integers(0, p)) * power, p)
        return np.mod(eye + out, p)

    x, y = poly(), poly()
    lower = np.tril(rng.integers(0, p, size=(dim, dim)), k=-1).astype(np.int64) + eye
    upper = np.triu(rng.integers(0, p, size=(dim, dim)), k=1).astype(np.int64) + eye
    change = modp.matmul(lower, upper, p)
    change_inv = modp.matmul(_unitriangular_inverse(upper, p), _unitriangular_inverse(lower, p), p)

    def conj(m: np.ndarray) -> np.ndarray:
        return modp.matmul(modp.matmul(change, m, p), change_inv, p)

    return conj(x), conj(y)


def square_zero_pair(p: int) -> tuple[np.ndarray, np.ndarray]:
    """x = 1 + s, y = 1 + t on F_p[s, t]/(s, t)^2 (basis 1, s, t): b = (1, 3, 2)."""
    x = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]], dtype=np.int64)
    y = np.array([[1, 0, 1], [0, 1, 0], [0, 0, 1]], dtype=np.int64)
    return np.mod(x, p), np.mod(y, p)
