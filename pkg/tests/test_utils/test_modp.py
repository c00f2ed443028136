"""Tests for linear algebra over F_p."""

import numpy as np

from nilbal.utils import modp


class TestElimination:
    def test_rref_and_pivots(self):
        echelon, pivots = modp.rref([[2, 4, 1], [1, 2, 0]], 5)
        assert pivots == [0, 2]
        assert echelon.tolist() == [[1, 2, 0], [0, 0, 1]]

    def test_rank(self):
        assert modp.rank([[1, 2], [2, 4]], 5) == 1
        assert modp.rank([[1, 2], [2, 4]], 3) == 1
        assert modp.rank([[1, 0], [0, 3]], 3) == 1
        assert modp.rank(np.zeros((0, 3)), 2) == 0

    def test_nullity_is_left_kernel_dimension(self):
        assert modp.nullity([[1, 2], [2, 4], [0, 1]], 5) == 1

    def test_right_nullspace(self):
        assert modp.right_nullspace([[1, 2]], 5).tolist() == [[3, 1]]

    def test_right_nullspace_of_empty_matrix(self):
        basis = modp.right_nullspace(np.zeros((0, 0), dtype=np.int64), 2, ncols=3)
        assert basis.tolist() == np.eye(3, dtype=np.int64).tolist()

    def test_left_nullspace(self):
        basis = modp.left_nullspace([[1], [2]], 5)
        assert basis.tolist() == [[3, 1]]

    def test_is_nilpotent(self):
        assert modp.is_nilpotent([[0, 1], [0, 0]], 7)
        assert not modp.is_nilpotent(np.eye(2, dtype=np.int64), 7)
        assert modp.is_nilpotent([[1, 1], [1, 1]], 2)

    def test_matmul(self):
        a = np.array([[1, 2], [3, 4]], dtype=np.int64)
        assert modp.matmul(a, a, 5).tolist() == [[2, 0], [0, 2]]


class TestRowReducer:
    def test_incremental_rank(self):
        reducer = modp.RowReducer(3, 3)
        assert reducer.add([[1, 0, 0], [2, 0, 0]]) == 1
        assert reducer.add([[0, 1, 0]]) == 1
        assert reducer.rank == 2
        assert not reducer.reduce([[1, 1, 0]]).any()
        assert reducer.reduce([[0, 0, 1]]).tolist() == [[0, 0, 1]]

    def test_reduce_sparse_matches_dense(self):
        reducer = modp.RowReducer(3, 5)
        reducer.add([[1, 2, 0]])
        rows = np.array([[3, 1, 4]], dtype=np.int64)
        cols = np.array([[0, 1, 2]], dtype=np.int64)
        vals = rows.copy()
        assert reducer.reduce_sparse(rows, cols, vals).tolist() == reducer.reduce(rows).tolist()


class TestSubquotient:
    def test_dimension_and_coordinates(self):
        sub = modp.Subquotient(np.eye(3, dtype=np.int64), [[1, 0, 0]], 2)
        assert sub.dim == 2
        assert not sub.coordinates([[1, 0, 0]]).any()
        assert sub.coordinates([[1, 1, 0]]).tolist() in ([[1, 0]], [[0, 1]])

    def test_induced_identity(self):
        sub = modp.Subquotient(np.eye(2, dtype=np.int64), np.zeros((0, 2), dtype=np.int64), 3)
        assert sub.induced(sub.representatives).tolist() == [[1, 0], [0, 1]]


class TestFixedDim:
    def test_fixed_dim(self):
        swap = np.array([[0, 1], [1, 0]], dtype=np.int64)
        assert modp.fixed_dim([np.eye(2, dtype=np.int64)], 2, 3) == 2
        assert modp.fixed_dim([swap], 2, 3) == 1
        assert modp.fixed_dim([], 2, 3) == 2
        assert modp.fixed_dim([swap], 0, 3) == 0
