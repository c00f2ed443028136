"""Normalized bar complex of a finite group in degrees <= 3.

Cells of degree n are n-tuples of non-identity elements; [a|b] has index
(a-1)(N-1) + (b-1), and degree-3 cells are ordered the same way. Boundaries
use trivial coefficients:

    d[a|b]   = [b] - [ab] + [a]
    d[a|b|c] = [b|c] - [ab|c] + [a|bc] - [a|b]

with cells containing the identity dropped. Everything is written in the
row-vector convention of :mod:`nilbal.utils.modp`.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np
from sympy import factorint

from nilbal.abelian.groups import FinAbGroup
from nilbal.errors import SizeLimitError
from nilbal.fingroup.group import FiniteGroup, GrpAutomorphism
from nilbal.utils import modp
from nilbal.utils.constants import BAR_CHUNK_ROWS

logger = logging.getLogger(__name__)


def _d2(G: FiniteGroup) -> np.ndarray:
    n = G.order - 1
    a, b = np.meshgrid(np.arange(1, G.order), np.arange(1, G.order), indexing="ij")
    a, b = a.ravel(), b.ravel()
    rows = np.arange(n * n)
    dense = np.zeros((n * n, n), dtype=np.int64)
    np.add.at(dense, (rows, b - 1), 1)
    np.add.at(dense, (rows, a - 1), 1)
    ab = G.mult[a, b]
    keep = ab != 0
    np.add.at(dense, (rows[keep], ab[keep] - 1), -1)
    return dense


def _d3_chunks(G: FiniteGroup, modulus: int) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Row blocks of the degree-3 boundary as (dense, slot columns, slot values)."""
    n = G.order - 1
    width = n * n
    per_chunk = max(1, BAR_CHUNK_ROWS // max(width, 1))
    bb, cc = np.meshgrid(np.arange(1, G.order), np.arange(1, G.order), indexing="ij")
    bb, cc = bb.ravel(), cc.ravel()
    for start in range(1, G.order, per_chunk):
        a_vals = np.arange(start, min(start + per_chunk, G.order))
        a = np.repeat(a_vals, width)
        b = np.tile(bb, a_vals.size)
        c = np.tile(cc, a_vals.size)
        ab = G.mult[a, b].astype(np.int64)
        bc = G.mult[b, c].astype(np.int64)
        cols = np.stack([
            (b - 1) * n + (c - 1),
            np.where(ab != 0, (ab - 1) * n + (c - 1), -1),
            np.where(bc != 0, (a - 1) * n + (bc - 1), -1),
            (a - 1) * n + (b - 1),
        ], axis=1)
        vals = np.mod(np.array([1, -1, 1, -1], dtype=np.int64), modulus)
        vals = np.broadcast_to(vals, cols.shape).copy()
        vals[cols < 0] = 0
        rows = np.arange(a.size)
        dense = np.zeros((a.size, width), dtype=np.int64)
        for slot in range(4):
            ok = cols[:, slot] >= 0
            np.add.at(dense, (rows[ok], cols[ok, slot]), vals[ok, slot])
        yield np.mod(dense, modulus), cols, vals


@dataclass
class BarHomology:
    """H_0..H_2 of a finite group over F_p with chosen bases."""

    group: FiniteGroup
    p: int
    h1: modp.Subquotient
    h2: modp.Subquotient | None

    @property
    def dims(self) -> tuple[int, int, int]:
        return 1, self.h1.dim, (self.h2.dim if self.h2 is not None else 0)

    def _cell_perm1(self, auto: GrpAutomorphism) -> np.ndarray:
        return auto.image[1:].astype(np.int64) - 1

    def _cell_perm2(self, auto: GrpAutomorphism) -> np.ndarray:
        n = self.group.order - 1
        img = auto.image.astype(np.int64)
        a, b = np.meshgrid(np.arange(1, n + 1), np.arange(1, n + 1), indexing="ij")
        return ((img[a] - 1) * n + (img[b] - 1)).ravel()

    def induced_h1(self, auto: GrpAutomorphism) -> np.ndarray:
        """Matrix (row convention) of the induced map on H_1."""
        reps = self.h1.representatives
        images = np.zeros_like(reps)
        images[:, self._cell_perm1(auto)] = reps
        return self.h1.induced(images)

    def induced_h2(self, auto: GrpAutomorphism) -> np.ndarray:
        if self.h2 is None:
            raise ValueError("degree-2 homology was not computed")
        reps = self.h2.representatives
        images = np.zeros_like(reps)
        images[:, self._cell_perm2(auto)] = reps
        return self.h2.induced(images)

    def cohomology_h1(self, auto: GrpAutomorphism) -> np.ndarray:
        return self.induced_h1(auto).T

    def cohomology_h2(self, auto: GrpAutomorphism) -> np.ndarray:
        return self.induced_h2(auto).T

    def fixed_dims(self, autos: Sequence[GrpAutomorphism], degree: int = 2) -> tuple[int, int]:
        """(homology, cohomology) fixed-subspace dimensions in the given degree."""
        sub = self.h2 if degree == 2 else self.h1
        if sub is None:
            raise ValueError("degree-2 homology was not computed")
        induce = self.induced_h2 if degree == 2 else self.induced_h1
        maps = [induce(a) for a in autos]
        return (
            modp.fixed_dim(maps, sub.dim, self.p),
            modp.fixed_dim([m.T for m in maps], sub.dim, self.p),
        )


def bar_homology(G: FiniteGroup, p: int, degree: int = 2, limit: int = 48) -> BarHomology:
    """H_i(G; F_p) for i <= degree from the normalized bar complex."""
    if degree not in (1, 2):
        raise ValueError("bar homology is computed in degrees 1 and 2")
    if degree == 2 and G.order > limit:
        raise SizeLimitError("degree-2 bar homology", G.order, limit)
    n = G.order - 1
    if G.order % p:
        empty1 = np.zeros((0, n), dtype=np.int64)
        h2 = modp.Subquotient(np.zeros((0, n * n), dtype=np.int64), np.zeros((0, n * n)), p)
        return BarHomology(G, p, modp.Subquotient(empty1, empty1, p), h2 if degree == 2 else None)

    d2 = np.mod(_d2(G), p)
    h1 = modp.Subquotient(np.eye(n, dtype=np.int64), d2, p)
    if degree == 1:
        return BarHomology(G, p, h1, None)

    cycles = modp.left_nullspace(d2, p)
    target = cycles.shape[0]
    reducer = modp.RowReducer(n * n, p)
    for dense, cols, vals in _d3_chunks(G, p):
        reducer.add_residues(reducer.reduce_sparse(dense, cols, vals))
        if reducer.rank >= target:
            break
    h2 = modp.Subquotient(cycles, reducer, p)
    logger.debug(
        "Bar homology of %s over F_%d: dims (1, %d, %d)", G.name or "group", p, h1.dim, h2.dim
    )
    return BarHomology(G, p, h1, h2)


def integral_H2_bar(G: FiniteGroup, limit: int = 24) -> FinAbGroup:
    """H_2(G; Z) from the elementary divisors of the degree-3 bar boundary.

    H_2 of a finite group is finite of exponent dividing |G|, so its p-part is
    read off from elimination over Z/p^E with E = v_p(|G|) + 1: unit pivots
    are removed, the remainder is divided by p, and the number of pivots found
    at level k is the number of Z/p^k summands.
    """
    if G.order > limit:
        raise SizeLimitError("integral bar homology", G.order, limit)
    if G.order == 1:
        return FinAbGroup()
    summands: list[int] = []
    for p, v in factorint(G.order).items():
        p = int(p)
        modulus = p ** (v + 1)
        mat = np.vstack([dense for dense, _, _ in _d3_chunks(G, modulus)])
        for level, count in enumerate(_pivot_levels(mat, p, v + 1)):
            if level:
                summands.extend([p**level] * count)
    H2 = FinAbGroup.from_orders(*summands)
    logger.debug("Integral H2 of %s: %s", G.name or "group", H2)
    return H2


def _pivot_levels(mat: np.ndarray, p: int, exponent: int) -> list[int]:
    modulus = p**exponent
    m = np.unique(np.mod(mat, modulus), axis=0)
    m = m[m.any(axis=1)]
    counts = []
    for _ in range(exponent):
        used = np.zeros(m.shape[0], dtype=bool)
        pivot_cols = []
        for j in range(m.shape[1]):
            candidates = np.flatnonzero((m[:, j] % p != 0) & ~used)
            if candidates.size == 0:
                continue
            i = int(candidates[0])
            m[i] = np.mod(m[i] * pow(int(m[i, j]), -1, modulus), modulus)
            hit = np.flatnonzero((m[:, j] != 0) & ~used)
            hit = hit[hit != i]
            if hit.size:
                m[hit] = np.mod(m[hit] - np.outer(m[hit, j], m[i]), modulus)
            used[i] = True
            pivot_cols.append(j)
        counts.append(len(pivot_cols))
        keep_cols = np.setdiff1d(np.arange(m.shape[1]), pivot_cols)
        m = m[~used][:, keep_cols]
        if modulus == 1 or m.size == 0:
            break
        m = m // p
        modulus //= p
        m = m[m.any(axis=1)]
        if m.size:
            m = np.unique(m, axis=0)
    return counts


def fixed_H2_dim(
    K: FiniteGroup, autos: Sequence[GrpAutomorphism], p: int, limit: int = 48
) -> int:
    """dim H^2(K; F_p)^N for the group N generated by ``autos``."""
    bar = bar_homology(K, p, 2, limit)
    return bar.fixed_dims(autos, 2)[1]
