"""Homology of free graded complexes over F₂[U] by Smith normal form, A₀⁻ and V₀."""

from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from cfkinv.core.cfk_algebra import CfkComplex, format_monomial
from cfkinv.core.gf2 import gf2_matmul, graded_homology_ranks, to_gf2
from cfkinv.errors import DSquaredNonzero, GradingInconsistent, OracleMismatch, TowerCountUnexpected

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FreeGradedComplex:
    """Free F₂[U]-complex; ``matrix[t, s] = 1`` means ``∂s`` contains ``U^p t`` with p forced by the gradings."""

    labels: Tuple[str, ...]
    gradings: np.ndarray
    matrix: np.ndarray
    q_tags: Optional[Tuple[bool, ...]] = None

    def __post_init__(self):
        gradings = np.asarray(self.gradings, dtype=np.int64)
        matrix = to_gf2(self.matrix).reshape(len(gradings), len(gradings))
        object.__setattr__(self, "gradings", gradings)
        object.__setattr__(self, "matrix", matrix)
        rows, cols = np.nonzero(matrix)
        doubled = gradings[rows] - gradings[cols] + 1
        if (doubled % 2).any() or (doubled < 0).any():
            raise GradingInconsistent("differential is not homogeneous of degree -1 over F2[U]")
        if gf2_matmul(matrix, matrix).any():
            raise DSquaredNonzero("differential does not square to zero")

    def __len__(self) -> int:
        return len(self.labels)

    def upower(self, t: int, s: int) -> int:
        return int(self.gradings[t] - self.gradings[s] + 1) // 2

    def format_chain(self, bits: np.ndarray, degree: Optional[int] = None) -> str:
        """Human readable chain, e.g. ``c + QUb``; U-powers are shown relative to ``degree``."""
        terms = []
        for k in np.flatnonzero(bits):
            power = 0 if degree is None else int(self.gradings[k] - degree) // 2
            terms.append(format_monomial(power, self.labels[k]))
        return " + ".join(terms) or "0"


def build_a0_minus(c: CfkComplex) -> FreeGradedComplex:
    """A₀⁻ = C{i ≤ 0, j ≤ 0}, free on ``U^max(0, A(x)) · x``."""
    shifts = np.maximum(c.alexander, 0)
    return FreeGradedComplex(
        labels=tuple(format_monomial(int(m), name) for m, name in zip(shifts, c.names)),
        gradings=c.maslov - 2 * shifts,
        matrix=c.differential,
    )


@dataclass(frozen=True, eq=False)
class Tower:
    index: int
    grading: int
    representative: np.ndarray
    label: str


@dataclass(frozen=True, eq=False)
class TorsionSummand:
    index: int
    source: int
    grading: int
    order: int
    representative: np.ndarray
    label: str


@dataclass(frozen=True, eq=False)
class ModuleDecomposition:
    """``H_*(f) = ⊕ F₂[U]·tower ⊕ F₂[U]/U^order·torsion`` with the basis change that exhibits it.

    ``forward`` holds the new basis in original coordinates (columns); ``inverse`` maps original
    coordinates to new ones.
    """

    complex: FreeGradedComplex
    towers: Tuple[Tower, ...]
    torsion: Tuple[TorsionSummand, ...]
    pairs: Tuple[Tuple[int, int, int], ...]
    forward: np.ndarray
    inverse: np.ndarray

    def class_vector(self, cycle: np.ndarray, degree: int) -> np.ndarray:
        """Coordinates of the class of a homogeneous cycle on (towers, torsion summands)."""
        coords = gf2_matmul(self.inverse, to_gf2(cycle).reshape(-1, 1)).reshape(-1)
        free = [coords[t.index] for t in self.towers]
        # U^a·t vanishes in F₂[U]/U^order once a reaches the order
        torsion = [coords[s.index] if (s.grading - degree) // 2 < s.order else 0 for s in self.torsion]
        return np.array(free + torsion, dtype=np.uint8)

    @property
    def rank(self) -> int:
        return len(self.towers)


def snf_homology(f: FreeGradedComplex) -> ModuleDecomposition:
    """Exact homology over F₂[U].

    Pivots are taken at the smallest U-power, ties broken by the (source, target) labels; the
    pivot row and column are cleared by homogeneous row and column operations. Every pivot
    splits off a summand ``s → U^p t``; unpaired basis elements are free towers.
    """
    n = len(f)
    d = f.matrix.copy()
    forward = np.eye(n, dtype=np.uint8)
    inverse = np.eye(n, dtype=np.uint8)
    paired = np.zeros(n, dtype=bool)
    pairs: List[Tuple[int, int, int]] = []
    while True:
        rows, cols = np.nonzero(d)
        keep = ~(paired[rows] | paired[cols])
        rows, cols = rows[keep], cols[keep]
        if not len(rows):
            break
        t, s = min(zip(rows.tolist(), cols.tolist()), key=lambda ts: (f.upower(*ts), f.labels[ts[1]], f.labels[ts[0]]))
        for s2 in np.flatnonzero(d[t]):
            if s2 == s:
                continue
            d[:, s2] ^= d[:, s]
            d[s] ^= d[s2]
            forward[:, s2] ^= forward[:, s]
            inverse[s] ^= inverse[s2]
        for t2 in np.flatnonzero(d[:, s]):
            if t2 == t:
                continue
            d[:, t] ^= d[:, t2]
            d[t2] ^= d[t]
            forward[:, t] ^= forward[:, t2]
            inverse[t2] ^= inverse[t]
        paired[[s, t]] = True
        pairs.append((s, t, f.upower(t, s)))

    towers = tuple(
        sorted(
            (
                Tower(k, int(f.gradings[k]), forward[:, k].copy(), f.format_chain(forward[:, k]))
                for k in np.flatnonzero(~paired)
            ),
            key=lambda tower: (-tower.grading, tower.label),
        )
    )
    torsion = tuple(
        TorsionSummand(t, s, int(f.gradings[t]), p, forward[:, t].copy(), f.format_chain(forward[:, t]))
        for s, t, p in pairs
        if p > 0
    )
    logger.debug("snf: %s generators, %s towers, %s torsion summands", n, len(towers), len(torsion))
    return ModuleDecomposition(f, towers, torsion, tuple(pairs), forward, inverse)


def compute_v0(c: CfkComplex) -> int:
    """V₀ = −½ · grading of the tower top of H(A₀⁻)."""
    decomposition = snf_homology(build_a0_minus(c))
    if decomposition.rank != 1:
        raise TowerCountUnexpected(f"H(A0-) has {decomposition.rank} towers, expected 1")
    grading = decomposition.towers[0].grading
    if grading % 2:
        raise GradingInconsistent(f"tower top of H(A0-) sits in odd grading {grading}")
    return -grading // 2


def truncated_homology_ranks(f: FreeGradedComplex, truncation: int) -> Dict[int, int]:
    """Per-degree ranks of H(f / U^N) by plain GF(2) linear algebra."""
    n = len(f)
    size = n * truncation
    matrix = np.zeros((size, size), dtype=np.uint8)
    for t, s in zip(*np.nonzero(f.matrix)):
        p = f.upower(t, s)
        for a in range(truncation - p):
            matrix[t * truncation + a + p, s * truncation + a] = 1
    degrees = [int(f.gradings[k]) - 2 * a for k in range(n) for a in range(truncation)]
    return graded_homology_ranks(degrees, matrix)


def predicted_truncated_ranks(decomposition: ModuleDecomposition, truncation: int) -> Dict[int, int]:
    """Ranks of H(f / U^N) read off a decomposition."""
    gradings = decomposition.complex.gradings
    counts: Dict[int, int] = {}

    def bump(degree: int):
        counts[degree] = counts.get(degree, 0) + 1

    for tower in decomposition.towers:
        for a in range(truncation):
            bump(tower.grading - 2 * a)
    for s, t, p in decomposition.pairs:
        if p == 0:
            continue
        for a in range(min(p, truncation)):
            bump(int(gradings[t]) - 2 * a)
        for a in range(max(truncation - p, 0), truncation):
            bump(int(gradings[s]) - 2 * a)
    return dict(sorted(counts.items()))


def check_against_oracle(
    f: FreeGradedComplex, truncations: Sequence[int], decomposition: Optional[ModuleDecomposition] = None
) -> None:
    """Raise :class:`OracleMismatch` unless exact and truncated homology agree for every N."""
    decomposition = decomposition or snf_homology(f)
    for truncation in truncations:
        brute = dict(sorted(truncated_homology_ranks(f, truncation).items()))
        predicted = predicted_truncated_ranks(decomposition, truncation)
        if brute != predicted:
            logger.warning("oracle disagreement at N=%s: %s != %s", truncation, brute, predicted)
            raise OracleMismatch(f"truncated homology at N={truncation} is {brute}, decomposition predicts {predicted}")
        logger.debug("oracle agrees at N=%s", truncation)


__all__ = [
    "FreeGradedComplex",
    "ModuleDecomposition",
    "TorsionSummand",
    "Tower",
    "build_a0_minus",
    "check_against_oracle",
    "compute_v0",
    "predicted_truncated_ranks",
    "snf_homology",
    "truncated_homology_ranks",
]
