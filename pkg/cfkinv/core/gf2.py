"""GF(2) linear algebra on numpy ``uint8`` bit matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np


def to_gf2(matrix) -> np.ndarray:
    """Copy ``matrix`` into a ``uint8`` array reduced mod 2.

    >>> to_gf2([[3, 2], [1, 0]]).tolist()
    [[1, 0], [1, 0]]
    """
    return np.array(matrix, dtype=np.int64).astype(np.uint8) % 2


def gf2_matmul(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    return ((left.astype(np.int64) @ right.astype(np.int64)) % 2).astype(np.uint8)


@dataclass(frozen=True)
class RowReduceResult:
    matrix: np.ndarray
    rank: int
    pivots: Tuple[int, ...]


def gf2_row_reduce(matrix: np.ndarray) -> RowReduceResult:
    """Reduced row echelon form over GF(2)."""
    mat = to_gf2(matrix)
    if mat.ndim != 2:
        mat = mat.reshape(len(mat), -1)
    m, n = mat.shape
    pivots: List[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        candidates = np.flatnonzero(mat[row:, col])
        if not len(candidates):
            continue
        pivot = row + int(candidates[0])
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
        hits = np.flatnonzero(mat[:, col])
        hits = hits[hits != row]
        if len(hits):
            mat[hits] ^= mat[row]
        pivots.append(col)
        row += 1
    return RowReduceResult(matrix=mat, rank=len(pivots), pivots=tuple(pivots))


def gf2_rank(matrix: np.ndarray) -> int:
    """Rank over GF(2).

    >>> gf2_rank([[1, 1], [1, 1]])
    1
    """
    mat = to_gf2(matrix)
    if mat.size == 0:
        return 0
    return gf2_row_reduce(mat).rank


def gf2_nullspace_basis(matrix: np.ndarray, n_cols: Optional[int] = None) -> np.ndarray:
    """Rows of the result span the nullspace of ``matrix`` over GF(2)."""
    mat = to_gf2(matrix)
    n = n_cols if n_cols is not None else mat.shape[1]
    if mat.size == 0:
        return np.eye(n, dtype=np.uint8)
    reduced = gf2_row_reduce(mat)
    pivots = set(reduced.pivots)
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        vec = np.zeros(n, dtype=np.uint8)
        vec[free] = 1
        for row, col in enumerate(reduced.pivots):
            if reduced.matrix[row, free]:
                vec[col] = 1
        basis.append(vec)
    if not basis:
        return np.zeros((0, n), dtype=np.uint8)
    return np.vstack(basis)


def gf2_solve(matrix: np.ndarray, vector: np.ndarray) -> Optional[np.ndarray]:
    """One solution ``x`` of ``matrix @ x = vector`` (free variables set to zero), or ``None``.

    >>> gf2_solve([[1, 1], [0, 1]], [0, 1]).tolist()
    [1, 1]
    >>> gf2_solve([[1, 1], [1, 1]], [0, 1]) is None
    True
    """
    mat = to_gf2(matrix)
    vec = to_gf2(vector).reshape(-1)
    n = mat.shape[1] if mat.ndim == 2 else 0
    if not vec.any():
        return np.zeros(n, dtype=np.uint8)
    if mat.size == 0:
        return None
    reduced = gf2_row_reduce(np.concatenate([mat, vec.reshape(-1, 1)], axis=1))
    if reduced.pivots and reduced.pivots[-1] == n:
        return None
    solution = np.zeros(n, dtype=np.uint8)
    for row, col in enumerate(reduced.pivots):
        solution[col] = reduced.matrix[row, n]
    return solution


def gf2_is_consistent(matrix: np.ndarray, vector: np.ndarray) -> bool:
    return gf2_solve(matrix, vector) is not None


def gf2_inverse(matrix: np.ndarray) -> Optional[np.ndarray]:
    """Inverse of a square bit matrix, ``None`` if singular."""
    mat = to_gf2(matrix)
    n = mat.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.uint8)
    reduced = gf2_row_reduce(np.concatenate([mat, np.eye(n, dtype=np.uint8)], axis=1))
    if reduced.pivots[:n] != tuple(range(n)) or reduced.rank < n:
        return None
    return reduced.matrix[:, n:].copy()


@dataclass
class SpanBasis:
    """Incrementally maintained echelon basis of a subspace of GF(2)^n.

    Each stored row has a distinct leading column and is zero on the leading columns of the
    other rows, so membership is a single sweep.
    """

    dimension: int
    rows: List[np.ndarray] = field(default_factory=list)
    leads: List[int] = field(default_factory=list)

    def reduce(self, vector: np.ndarray) -> np.ndarray:
        residue = to_gf2(vector).reshape(-1)
        for row, lead in zip(self.rows, self.leads):
            if residue[lead]:
                residue ^= row
        return residue

    def __contains__(self, vector) -> bool:
        return not self.reduce(vector).any()

    def add(self, vector: np.ndarray) -> bool:
        """Add ``vector``; return ``False`` if it was already in the span."""
        residue = self.reduce(vector)
        hits = np.flatnonzero(residue)
        if not len(hits):
            return False
        lead = int(hits[0])
        for index, row in enumerate(self.rows):
            if row[lead]:
                self.rows[index] = row ^ residue
        self.rows.append(residue)
        self.leads.append(lead)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def graded_homology_ranks(degrees: Sequence[int], differential: np.ndarray) -> Dict[int, int]:
    """Per-degree homology ranks of a GF(2) complex of degree −1.

    ``differential[t, s]`` is the coefficient of basis element ``t`` in ``∂s``.

    >>> graded_homology_ranks([1, 0, 0], [[0, 0, 0], [1, 0, 0], [1, 0, 0]])
    {0: 1}
    """
    degrees = np.asarray(degrees, dtype=np.int64)
    mat = to_gf2(differential).reshape(len(degrees), len(degrees))
    ranks: Dict[int, int] = {}
    boundary_rank: Dict[int, int] = {}
    for degree in sorted(set(degrees.tolist())):
        sources = np.flatnonzero(degrees == degree)
        targets = np.flatnonzero(degrees == degree - 1)
        block = mat[np.ix_(targets, sources)]
        boundary_rank[degree] = gf2_rank(block) if block.size else 0
    for degree in sorted(set(degrees.tolist())):
        size = int((degrees == degree).sum())
        rank = size - boundary_rank[degree] - boundary_rank.get(degree + 1, 0)
        if rank:
            ranks[degree] = rank
    return ranks


def bigraded_homology_ranks(
    bidegrees: Sequence[Tuple[int, int]], differential: np.ndarray
) -> Dict[Tuple[int, int], int]:
    """Like :func:`graded_homology_ranks` for a differential of bidegree (−1, 0)."""
    keys = [tuple(b) for b in bidegrees]
    mat = to_gf2(differential).reshape(len(keys), len(keys))
    index: Dict[Tuple[int, int], List[int]] = {}
    for position, key in enumerate(keys):
        index.setdefault(key, []).append(position)

    def block_rank(key: Tuple[int, int]) -> int:
        target = (key[0] - 1, key[1])
        if target not in index:
            return 0
        return gf2_rank(mat[np.ix_(index[target], index[key])])

    out_rank = {key: block_rank(key) for key in index}
    ranks: Dict[Tuple[int, int], int] = {}
    for key, positions in index.items():
        rank = len(positions) - out_rank[key] - out_rank.get((key[0] + 1, key[1]), 0)
        if rank:
            ranks[key] = rank
    return ranks
