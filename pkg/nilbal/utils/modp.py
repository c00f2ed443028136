"""Dense linear algebra over F_p on numpy int64 arrays.

Everything here uses the row-vector convention: a matrix M acts by v -> v @ M,
subspaces are row spaces, and reduced bases are kept in reduced row echelon
form (pivot entries 1, all other entries of a pivot column 0).
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

IntArray = NDArray[np.int64]


def as_mod(a: ArrayLike, p: int) -> IntArray:
    """Copy ``a`` into a 2D int64 array with entries in [0, p)."""
    arr = np.array(a, dtype=np.int64, copy=True)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return np.mod(arr, p)


def rref(a: ArrayLike, p: int) -> tuple[IntArray, list[int]]:
    """Reduced row echelon form of ``a`` mod p.

    Returns the nonzero rows of the echelon form and the pivot columns.
    """
    m = as_mod(a, p)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a: ArrayLike, p: int) -> int:
    arr = np.asarray(a)
    if arr.size == 0:
        return 0
    return len(rref(arr, p)[1])


def nullity(a: ArrayLike, p: int) -> int:
    """Dimension of the left kernel {v : v @ a = 0}."""
    arr = np.asarray(a)
    if arr.ndim < 2 or arr.shape[0] == 0:
        return 0
    return arr.shape[0] - rank(arr, p)


def right_nullspace(a: ArrayLike, p: int, ncols: int | None = None) -> IntArray:
    """Basis (as rows) of {x : a @ x = 0}."""
    arr = np.asarray(a, dtype=np.int64)
    n = arr.shape[1] if arr.ndim == 2 and arr.size else (ncols or 0)
    if arr.size == 0:
        return np.eye(n, dtype=np.int64)
    r, pivots = rref(arr, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    if free:
        basis[np.arange(len(free)), free] = 1
        if pivots:
            basis[:, pivots] = np.mod(-r[:, free].T, p)
    return basis


def left_nullspace(a: ArrayLike, p: int) -> IntArray:
    """Basis (as rows) of {v : v @ a = 0}."""
    arr = np.asarray(a, dtype=np.int64)
    return right_nullspace(arr.T, p, ncols=arr.shape[0])


def is_nilpotent(a: ArrayLike, p: int) -> bool:
    """Whether the square matrix ``a`` is nilpotent mod p."""
    m = as_mod(a, p)
    n = m.shape[0]
    if n == 0:
        return True
    power = np.eye(n, dtype=np.int64)
    for _ in range(n):
        power = matmul(power, m, p)
        if not power.any():
            return True
    return False


def matmul(a: IntArray, b: IntArray, p: int) -> IntArray:
    """Product mod p. Float accumulation is exact while inner * p^2 < 2^53."""
    inner = a.shape[1] if a.ndim == 2 else 0
    if inner * (p - 1) ** 2 < 2**53:
        prod = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        return np.mod(prod, p)
    return np.mod(a.astype(object) @ b.astype(object), p).astype(np.int64)


class RowReducer:
    """Incrementally maintained RREF basis of a row space mod p.

    Rows are fed in chunks; each chunk is first reduced against the current
    basis, and only the residual is put into echelon form.
    """

    def __init__(self, ncols: int, p: int):
        self.p = p
        self.ncols = ncols
        self.basis = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []
        self._pivot_pos = np.full(ncols, -1, dtype=np.int64)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, rows: ArrayLike) -> IntArray:
        """Residues of ``rows`` modulo the current span (zero on pivot columns)."""
        arr = as_mod(rows, self.p)
        if not self.pivots or arr.shape[0] == 0:
            return arr
        coeff = arr[:, self.pivots]
        return np.mod(arr - matmul(coeff, self.basis, self.p), self.p)

    def reduce_sparse(
        self, rows: ArrayLike, cols: IntArray, vals: IntArray
    ) -> IntArray:
        """Like :meth:`reduce` for rows given as dense ``rows`` whose nonzeros
        are listed in ``cols``/``vals`` (one slot per column, -1 for unused).

        Only the listed entries can hit pivot columns, so the correction is a
        gather of at most ``cols.shape[1]`` basis rows per input row.
        """
        res = as_mod(rows, self.p)
        if not self.pivots:
            return res
        for slot in range(cols.shape[1]):
            c = cols[:, slot]
            valid = c >= 0
            pos = np.full(c.shape, -1, dtype=np.int64)
            pos[valid] = self._pivot_pos[c[valid]]
            hit = np.flatnonzero(pos >= 0)
            if hit.size:
                res[hit] -= vals[hit, slot][:, None] * self.basis[pos[hit]]
        return np.mod(res, self.p)

    def add_residues(self, residues: IntArray) -> int:
        """Add already reduced rows to the basis; returns the rank increase."""
        keep = residues[residues.any(axis=1)]
        if keep.shape[0] == 0:
            return 0
        new, new_pivots = rref(keep, self.p)
        if not new_pivots:
            return 0
        if self.pivots:
            coeff = self.basis[:, new_pivots]
            self.basis = np.mod(self.basis - matmul(coeff, new, self.p), self.p)
        self.basis = np.vstack([self.basis, new])
        start = len(self.pivots)
        self.pivots.extend(new_pivots)
        self._pivot_pos[new_pivots] = np.arange(start, start + len(new_pivots))
        return len(new_pivots)

    def add(self, rows: ArrayLike) -> int:
        return self.add_residues(self.reduce(rows))


class Subquotient:
    """A subquotient Z/B of F_p^n with chosen representatives.

    ``cycles`` spans Z and ``boundaries`` spans B (B inside Z). Coordinates of
    a vector z in Z are read off from its residue modulo B on the pivot
    columns of the complement basis.
    """

    def __init__(self, cycles: ArrayLike, boundaries: RowReducer | ArrayLike, p: int):
        self.p = p
        cyc = as_mod(cycles, p)
        if isinstance(boundaries, RowReducer):
            self._boundaries = boundaries
        else:
            bnd = as_mod(boundaries, p)
            self._boundaries = RowReducer(cyc.shape[1], p)
            if bnd.size:
                self._boundaries.add(bnd)
        self._complement = RowReducer(cyc.shape[1], p)
        if cyc.size:
            self._complement.add_residues(self._boundaries.reduce(cyc))

    @property
    def dim(self) -> int:
        return self._complement.rank

    @property
    def representatives(self) -> IntArray:
        return self._complement.basis

    def coordinates(self, vectors: ArrayLike) -> IntArray:
        """Coordinates (rows) of cycles in the chosen basis of Z/B."""
        residue = self._boundaries.reduce(vectors)
        return residue[:, self._complement.pivots]

    def induced(self, images: ArrayLike) -> IntArray:
        """Matrix (row convention) of a map given by the images of the representatives."""
        if self.dim == 0:
            return np.zeros((0, 0), dtype=np.int64)
        return self.coordinates(images)


def fixed_dim(maps: list[IntArray], dim: int, p: int) -> int:
    """Dimension of the common fixed space of the given dim x dim matrices."""
    if dim == 0:
        return 0
    if not maps:
        return dim
    eye = np.eye(dim, dtype=np.int64)
    stacked = np.hstack([np.mod(m - eye, p) for m in maps])
    return nullity(stacked, p)
