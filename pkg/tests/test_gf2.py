import unittest

import numpy as np

from cfkinv.core.gf2 import (
    SpanBasis,
    gf2_inverse,
    gf2_matmul,
    gf2_nullspace_basis,
    gf2_rank,
    gf2_row_reduce,
    gf2_solve,
    graded_homology_ranks,
)


class TestGf2(unittest.TestCase):
    """Bit matrix linear algebra."""

    def test_row_reduce(self):
        result = gf2_row_reduce(np.array([[1, 1, 0], [1, 1, 1], [0, 0, 1]]))
        self.assertEqual(result.rank, 2)
        self.assertEqual(result.pivots, (0, 2))
        self.assertEqual(result.matrix.tolist(), [[1, 1, 0], [0, 0, 1], [0, 0, 0]])

    def test_rank_of_empty(self):
        self.assertEqual(gf2_rank(np.zeros((0, 3), dtype=np.uint8)), 0)

    def test_nullspace(self):
        matrix = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
        basis = gf2_nullspace_basis(matrix)
        self.assertEqual(basis.tolist(), [[1, 1, 1]])
        self.assertFalse(gf2_matmul(matrix, basis.T).any())

    def test_nullspace_full_rank(self):
        self.assertEqual(gf2_nullspace_basis(np.eye(3, dtype=np.uint8)).shape, (0, 3))

    def test_solve(self):
        matrix = np.array([[1, 0, 1], [0, 1, 1]], dtype=np.uint8)
        solution = gf2_solve(matrix, np.array([1, 0]))
        self.assertEqual(gf2_matmul(matrix, solution.reshape(-1, 1)).reshape(-1).tolist(), [1, 0])
        self.assertIsNone(gf2_solve(np.zeros((2, 2), dtype=np.uint8), np.array([0, 1])))

    def test_inverse(self):
        matrix = np.array([[1, 1], [0, 1]], dtype=np.uint8)
        inverse = gf2_inverse(matrix)
        self.assertEqual(gf2_matmul(matrix, inverse).tolist(), [[1, 0], [0, 1]])
        self.assertIsNone(gf2_inverse(np.array([[1, 1], [1, 1]], dtype=np.uint8)))

    def test_span_basis(self):
        span = SpanBasis(3)
        self.assertTrue(span.add(np.array([1, 1, 0])))
        self.assertTrue(span.add(np.array([0, 1, 1])))
        self.assertFalse(span.add(np.array([1, 0, 1])))
        self.assertIn(np.array([1, 0, 1]), span)
        self.assertNotIn(np.array([0, 0, 1]), span)
        self.assertEqual(span.rank, 2)

    def test_graded_homology(self):
        # x in degree 1 with ∂x = y, z in degree 0
        differential = np.array([[0, 0, 0], [1, 0, 0], [0, 0, 0]], dtype=np.uint8)
        self.assertEqual(graded_homology_ranks([1, 0, 0], differential), {0: 1})
        self.assertEqual(graded_homology_ranks([2, 0], np.zeros((2, 2), dtype=np.uint8)), {0: 1, 2: 1})
