"""H_2 and H^2 of finitely generated abelian groups with F_p coefficients.

The model pairs explicit bar 2-cycles with explicit normalized 2-cocycles.
With J the standard generators that survive in A/pA:

* cycles: w_ab = [g_a|g_b] - [g_b|g_a] for a < b in J, and for torsion k in J
  t_k = sum_{j < d_k} [g_k | j g_k];
* cocycles: the bilinear u_a v_b mod p, and for torsion k the carry
  floor((u_k + v_k) / d_k) mod p.

The pairing matrix is the identity, so the matrix of an induced map is read
off by evaluating every cocycle on the image of every cycle. Cohomology maps
are the transposes.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from math import comb
from typing import NamedTuple

import numpy as np

from nilbal.abelian.automorphisms import is_unipotent
from nilbal.abelian.groups import AbHom, FinAbGroup
from nilbal.errors import NotUnipotentError
from nilbal.models import H2Decomposition, Regime
from nilbal.utils import modp

logger = logging.getLogger(__name__)


class AbelianH2Model:
    """Cycle and cocycle bases of H_2(A; F_p) and H^2(A; F_p)."""

    def __init__(self, A: FinAbGroup, p: int):
        self.A = A
        self.p = p
        orders = A.generator_orders
        J = A.p_indices(p)
        self.pairs = [(a, b) for i, a in enumerate(J) for b in J[i + 1:]]
        self.carries = [k for k in J if orders[k] != 0]
        self.orders = np.array(orders, dtype=np.int64)

        us, vs, coef, owner = [], [], [], []
        eye = np.eye(A.rank, dtype=np.int64)
        for z, (a, b) in enumerate(self.pairs):
            us += [eye[a], eye[b]]
            vs += [eye[b], eye[a]]
            coef += [1, -1]
            owner += [z, z]
        for z, k in enumerate(self.carries, start=len(self.pairs)):
            for j in range(orders[k]):
                us.append(eye[k])
                vs.append(j * eye[k])
                coef.append(1)
                owner.append(z)
        width = A.rank
        self._u = np.array(us, dtype=np.int64).reshape(-1, width)
        self._v = np.array(vs, dtype=np.int64).reshape(-1, width)
        self._coef = np.array(coef, dtype=np.int64)
        self._owner = np.array(owner, dtype=np.int64)

    @property
    def dim(self) -> int:
        return len(self.pairs) + len(self.carries)

    @property
    def wedge_dim(self) -> int:
        return len(self.pairs)

    def _reduce(self, cells: np.ndarray) -> np.ndarray:
        torsion = self.orders > 0
        out = cells.copy()
        out[:, torsion] = np.mod(out[:, torsion], self.orders[torsion])
        return out

    def _evaluate(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Values (cells x cocycles) of every cocycle on the cells [u|v]."""
        cols = [u[:, a] * v[:, b] for a, b in self.pairs]
        for k in self.carries:
            cols.append((u[:, k] + v[:, k]) // self.orders[k])
        if not cols:
            return np.zeros((u.shape[0], 0), dtype=np.int64)
        return np.mod(np.stack(cols, axis=1), self.p)

    def homology_matrix(self, f: AbHom) -> np.ndarray:
        """H[z][z'] = c_z'(f_* z): the induced map on H_2, row convention."""
        if f.source != self.A or f.target != self.A:
            raise ValueError("the map must be an endomorphism of the model's group")
        n = self.dim
        if n == 0:
            return np.zeros((0, 0), dtype=np.int64)
        mat = np.array(f.matrix.to_rows(), dtype=np.int64).reshape(self.A.rank, self.A.rank)
        u = self._reduce(self._u @ mat.T)
        v = self._reduce(self._v @ mat.T)
        vals = self._evaluate(u, v) * self._coef[:, None]
        H = np.zeros((n, n), dtype=np.int64)
        np.add.at(H, self._owner, vals)
        return np.mod(H, self.p)

    def cohomology_matrix(self, f: AbHom) -> np.ndarray:
        """Induced map f^* on H^2 in the dual basis, row convention."""
        return self.homology_matrix(f).T


class CupSquare(NamedTuple):
    """Dimensions of the canonical pieces of H^2(A; F_2)."""

    cup_image_dim: int
    sq_image_dim: int
    cup_kernel_dim: int


def is_exponent_two_regime(A: FinAbGroup, p: int) -> bool:
    return p == 2 and any(d % 4 == 2 for d in A.invariant_factors)


def cup_square_structure(A: FinAbGroup) -> CupSquare:
    """Images of B*.A* under cup product and of Sq, and the kernel of c_A, over F_2.

    B* is dual to the summands that are free or divisible by 4 and E indexes
    the summands with d = 2 mod 4.
    """
    J = A.p_indices(2)
    orders = A.generator_orders
    E = [i for i in J if orders[i] % 4 == 2]
    B = [i for i in J if orders[i] == 0 or orders[i] % 4 == 0]
    return CupSquare(
        cup_image_dim=comb(len(J), 2) - comb(len(E), 2),
        sq_image_dim=len(E),
        cup_kernel_dim=len(B),
    )


def h2_split_dims(A: FinAbGroup, p: int) -> H2Decomposition:
    r = A.p_rank(p)
    t = A.p_torsion_rank(p)
    if is_exponent_two_regime(A, p):
        cs = cup_square_structure(A)
        return H2Decomposition(
            p, comb(r, 2), t, t, Regime.EXPONENT_TWO,
            cup_image_dim=cs.cup_image_dim,
            sq_image_dim=cs.sq_image_dim,
            cup_kernel_dim=cs.cup_kernel_dim,
        )
    return H2Decomposition(p, comb(r, 2), t, t, Regime.SPLIT)


def _require_unipotent(autos: Sequence[AbHom]) -> None:
    for f in autos:
        if not is_unipotent(f):
            raise NotUnipotentError(f"{f.matrix.to_rows()} is not unipotent on {f.source}")


def fixed_h2_dim_formula(A: FinAbGroup, autos: Sequence[AbHom], p: int) -> int:
    """dim H^2(A; F_p)^N for the group N generated by unipotent ``autos``."""
    _require_unipotent(autos)
    model = AbelianH2Model(A, p)
    maps = [model.cohomology_matrix(f) for f in autos]
    return modp.fixed_dim(maps, model.dim, p)


def fixed_h2_homology_dim(A: FinAbGroup, autos: Sequence[AbHom], p: int) -> int:
    """dim of the common fixed subspace of H_2(A; F_p) under unipotent ``autos``."""
    _require_unipotent(autos)
    model = AbelianH2Model(A, p)
    maps = [model.homology_matrix(f) for f in autos]
    return modp.fixed_dim(maps, model.dim, p)


def wedge_fixed_dim(A: FinAbGroup, psi: AbHom, p: int) -> int:
    """Kernel dimension of H_2(psi) - I restricted to (A/pA)^(A/pA)."""
    model = AbelianH2Model(A, p)
    w = model.wedge_dim
    if w == 0:
        return 0
    block = model.homology_matrix(psi)[:w, :w]
    return modp.fixed_dim([block], w, p)


def h1_matrix(f: AbHom, p: int) -> np.ndarray:
    """Induced map on H_1(A; F_p) = A/pA, row convention."""
    return f.mod_p(p).T
