"""Exact integer matrices and the Smith normal form."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

Rows = list[list[int]]


@dataclass(frozen=True)
class IntMatrix:
    """Dense row-major matrix of Python integers."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"IntMatrix {self.rows}x{self.cols} needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(nrows, ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> Rows:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [list(self.col(j)) for j in range(self.cols)], cols=self.rows
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        b_cols = [other.col(j) for j in range(other.cols)]
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(self.row(i), bc)) for bc in b_cols]
             for i in range(self.rows)],
            cols=other.cols,
        )

    def diagonal(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def to_json(self) -> list[list[int]]:
        return self.to_rows()


# ---------------------------------------------------------------------------
# Elementary operations on mutable row lists
# ---------------------------------------------------------------------------


def _identity_rows(n: int) -> Rows:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _swap_rows(a: Rows, i: int, j: int) -> None:
    a[i], a[j] = a[j], a[i]


def _swap_cols(a: Rows, i: int, j: int) -> None:
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_row(a: Rows, dst: int, src: int, factor: int) -> None:
    """row[dst] += factor * row[src]"""
    if factor:
        s = a[src]
        a[dst] = [x + factor * y for x, y in zip(a[dst], s)]


def _add_col(a: Rows, dst: int, src: int, factor: int) -> None:
    if factor:
        for row in a:
            row[dst] += factor * row[src]


def _min_abs_position(a: Rows, t: int) -> tuple[int, int] | None:
    best: tuple[int, int] | None = None
    best_val = 0
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            v = abs(row[j])
            if v and (best is None or v < best_val):
                best, best_val = (i, j), v
                if v == 1:
                    return best
    return best


def _snf(m: IntMatrix) -> tuple[Rows, Rows, Rows, Rows]:
    """Returns U, D, V, V^-1 as row lists with U m V = D."""
    a = m.to_rows()
    nr, nc = m.rows, m.cols
    u = _identity_rows(nr)
    v = _identity_rows(nc)
    v_inv = _identity_rows(nc)

    def col_swap(i: int, j: int) -> None:
        _swap_cols(a, i, j)
        _swap_cols(v, i, j)
        _swap_rows(v_inv, i, j)

    def col_add(dst: int, src: int, factor: int) -> None:
        # column dst += factor * column src; inverse: row src -= factor * row dst
        _add_col(a, dst, src, factor)
        _add_col(v, dst, src, factor)
        _add_row(v_inv, src, dst, -factor)

    def row_swap(i: int, j: int) -> None:
        _swap_rows(a, i, j)
        _swap_rows(u, i, j)

    def row_add(dst: int, src: int, factor: int) -> None:
        _add_row(a, dst, src, factor)
        _add_row(u, dst, src, factor)

    for t in range(min(nr, nc)):
        pos = _min_abs_position(a, t)
        if pos is None:
            break
        row_swap(t, pos[0])
        col_swap(t, pos[1])
        while True:
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    row_add(i, t, -(a[i][t] // a[t][t]))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    col_add(j, t, -(a[t][j] // a[t][t]))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                # bring the smallest remaining entry of row/column t to the pivot
                best_i = min(
                    (i for i in range(t + 1, nr) if a[i][t]),
                    key=lambda i: abs(a[i][t]),
                    default=None,
                )
                best_j = min(
                    (j for j in range(t + 1, nc) if a[t][j]),
                    key=lambda j: abs(a[t][j]),
                    default=None,
                )
                if best_i is not None and (
                    best_j is None or abs(a[best_i][t]) <= abs(a[t][best_j])
                ):
                    row_swap(t, best_i)
                elif best_j is not None:
                    col_swap(t, best_j)
                continue
            bad = next(
                (i for i in range(t + 1, nr)
                 for j in range(t + 1, nc) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v, v_inv


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Unimodular U, V and diagonal D with U @ m @ V == D and d_1 | d_2 | ..."""
    u, d, v, _ = _snf(m)
    return (
        IntMatrix.from_rows(u, cols=m.rows),
        IntMatrix.from_rows(d, cols=m.cols),
        IntMatrix.from_rows(v, cols=m.cols),
    )


def snf_rows(m: IntMatrix) -> tuple[Rows, Rows, Rows, Rows]:
    """U, D, V and V^-1 as row lists with U m V = D."""
    return _snf(m)


def elementary_divisors(m: IntMatrix) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form."""
    _, d, _, _ = _snf(m)
    return [d[i][i] for i in range(min(m.rows, m.cols)) if d[i][i]]


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Lattices (subgroups of Z^n given by generating rows)
# ---------------------------------------------------------------------------


def lattice_basis(rows: Sequence[Sequence[int]], n: int) -> Rows:
    """A Z-basis of the row lattice spanned by ``rows`` in Z^n."""
    if not rows:
        return []
    _, d, _, v_inv = _snf(IntMatrix.from_rows(rows, cols=n))
    basis = []
    for i in range(min(len(rows), n)):
        if d[i][i]:
            basis.append([d[i][i] * x for x in v_inv[i]])
    return basis


def left_kernel(m: IntMatrix) -> Rows:
    """Z-basis of {x in Z^rows : x m = 0}."""
    u, d, _, _ = _snf(m)
    r = sum(1 for i in range(min(m.rows, m.cols)) if d[i][i])
    return [u[i] for i in range(r, m.rows)]


def right_kernel(m: IntMatrix) -> Rows:
    """Z-basis (as rows) of {x in Z^cols : m x = 0}."""
    return left_kernel(m.transpose())


def lattice_contains(basis: Sequence[Sequence[int]], vector: Sequence[int]) -> bool:
    """Whether ``vector`` lies in the row lattice spanned by ``basis``."""
    n = len(vector)
    if not any(vector):
        return True
    if not basis:
        return False
    u, d, v, _ = _snf(IntMatrix.from_rows(basis, cols=n))
    # x B = y  <=>  (x U^-1) D = y V
    yv = [sum(vector[k] * v[k][j] for k in range(n)) for j in range(n)]
    for j in range(n):
        dj = d[j][j] if j < len(basis) else 0
        if dj == 0:
            if yv[j]:
                return False
        elif yv[j] % dj:
            return False
    return True


def lattice_index_is_one(basis: Sequence[Sequence[int]], n: int) -> bool:
    """Whether the row lattice of ``basis`` is all of Z^n."""
    if n == 0:
        return True
    divisors = elementary_divisors(IntMatrix.from_rows(basis, cols=n)) if basis else []
    return len(divisors) == n and all(d == 1 for d in divisors)
