"""The mapping cone AI₀⁻ of Q(ι + Id) and the invariants V̲₀, V̄₀."""

from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Dict, List, Tuple

import numpy as np

from cfkinv.core.cfk_algebra import CfkComplex, GradedMap
from cfkinv.core.gf2 import SpanBasis, gf2_matmul
from cfkinv.core.homology import (
    FreeGradedComplex,
    ModuleDecomposition,
    TorsionSummand,
    Tower,
    build_a0_minus,
    snf_homology,
)
from cfkinv.core.involution import IotaSolutionSet, drop_equivariant_acyclic_summands
from cfkinv.errors import (
    GradingInconsistent,
    IotaInvariantsDisagree,
    IotaNotA0Compatible,
    TowerClassificationAmbiguous,
    TowerCountUnexpected,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ConeComplex:
    """Cone(A₀⁻ → Q·A₀⁻[−1]).

    Basis: the plain copy of A₀⁻ (indices ``0..m-1``, grading shifted up by one) followed by the
    Q copy (indices ``m..2m-1``). The differential is ``[[∂, 0], [ι + Id, ∂]]``.
    """

    base: FreeGradedComplex
    complex: FreeGradedComplex
    connecting: np.ndarray

    @property
    def size(self) -> int:
        return len(self.base)

    @property
    def q_action(self) -> np.ndarray:
        """Q sends the plain copy of a basis element to its Q copy."""
        m = self.size
        q = np.zeros((2 * m, 2 * m), dtype=np.uint8)
        q[np.arange(m, 2 * m), np.arange(m)] = 1
        return q


def build_ai0_minus(c: CfkComplex, iota: GradedMap) -> ConeComplex:
    base = build_a0_minus(c)
    shifts = np.maximum(c.alexander, 0)
    connecting = iota.matrix ^ np.eye(len(c), dtype=np.uint8)
    for t, s in zip(*np.nonzero(connecting)):
        if shifts[s] + iota.upower(t, s) < shifts[t]:
            raise IotaNotA0Compatible(
                f"(ι + Id)({base.labels[s]}) leaves A0- through {c.names[t]}",
            )
    m = len(c)
    matrix = np.zeros((2 * m, 2 * m), dtype=np.uint8)
    matrix[:m, :m] = base.matrix
    matrix[m:, m:] = base.matrix
    matrix[m:, :m] = connecting
    cone = FreeGradedComplex(
        labels=base.labels + tuple(f"Q{label}" for label in base.labels),
        gradings=np.concatenate([base.gradings + 1, base.gradings]),
        matrix=matrix,
        q_tags=(False,) * m + (True,) * m,
    )
    return ConeComplex(base, cone, connecting)


@dataclass(frozen=True, eq=False)
class TowerReport:
    """The two towers of H(AI₀⁻): one never meets Im(Q), the other eventually does."""

    not_im_q: Tower
    eventually_im_q: Tower
    im_q_power: int
    extras: Tuple[TorsionSummand, ...]
    decomposition: ModuleDecomposition

    @property
    def v0_under(self) -> int:
        grading = self.not_im_q.grading
        if (grading - 1) % 2:
            raise GradingInconsistent(f"tower outside Im(Q) has top grading {grading}")
        return -(grading - 1) // 2

    @property
    def v0_over(self) -> int:
        grading = self.eventually_im_q.grading
        if grading % 2:
            raise GradingInconsistent(f"tower meeting Im(Q) has top grading {grading}")
        return -grading // 2

    def describe(self) -> Dict[str, str]:
        return {
            "not_im_q": f"[{self.not_im_q.label}] in grading {self.not_im_q.grading}",
            "eventually_im_q": f"[{self.eventually_im_q.label}] in grading {self.eventually_im_q.grading}",
        }


class _ImageOfQ:
    """Im(Q_*) in each degree, as spans of class vectors."""

    def __init__(self, cone: ConeComplex, decomposition: ModuleDecomposition):
        self.decomposition = decomposition
        self.q = cone.q_action
        self.generators = [(t.index, t.grading) for t in decomposition.towers]
        self.generators += [(s.index, s.grading) for s in decomposition.torsion]
        self.images = {
            index: gf2_matmul(self.q, decomposition.forward[:, [index]]).reshape(-1)
            for index, _ in self.generators
        }
        self.dimension = len(decomposition.towers) + len(decomposition.torsion)
        self._cache: Dict[int, SpanBasis] = {}

    def span(self, degree: int) -> SpanBasis:
        if degree not in self._cache:
            span = SpanBasis(self.dimension)
            for index, grading in self.generators:
                gap = grading - 1 - degree
                if gap >= 0 and gap % 2 == 0:
                    span.add(self.decomposition.class_vector(self.images[index], degree))
            self._cache[degree] = span
        return self._cache[degree]

    def first_power_in_image(self, position: int, tower: Tower, bound: int) -> int:
        """Smallest m ≤ bound with U^m·tower in Im(Q), or −1."""
        unit = np.zeros(self.dimension, dtype=np.uint8)
        unit[position] = 1
        for m in range(bound + 1):
            if unit in self.span(tower.grading - 2 * m):
                return m
        return -1


def classify_towers(cone: ConeComplex) -> TowerReport:
    decomposition = snf_homology(cone.complex)
    if decomposition.rank != 2:
        raise TowerCountUnexpected(f"H(AI0-) has {decomposition.rank} towers, expected 2")
    first, second = decomposition.towers
    torsion_bound = max((s.order for s in decomposition.torsion), default=0)
    bound = (abs(first.grading - second.grading) + 2) // 2 + torsion_bound + 1
    image = _ImageOfQ(cone, decomposition)
    powers = [image.first_power_in_image(position, tower, bound) for position, tower in enumerate((first, second))]
    logger.debug("towers %s / %s meet Im(Q) at U-powers %s", first.label, second.label, powers)
    if (powers[0] < 0) == (powers[1] < 0):
        raise TowerClassificationAmbiguous(
            f"towers [{first.label}] ({first.grading}) and [{second.label}] ({second.grading}) "
            f"meet Im(Q) at U-powers {powers}"
        )
    if powers[0] < 0:
        not_im_q, eventually, power = first, second, powers[1]
    else:
        not_im_q, eventually, power = second, first, powers[0]
    return TowerReport(not_im_q, eventually, power, decomposition.torsion, decomposition)


def tower_report(c: CfkComplex, iota: GradedMap, drop_summands: bool = False) -> TowerReport:
    if drop_summands:
        c, (iota,) = drop_equivariant_acyclic_summands(c, [iota])
    return classify_towers(build_ai0_minus(c, iota))


def compute_involutive_v0s(
    c: CfkComplex, solutions: IotaSolutionSet, drop_summands: bool = False
) -> Tuple[int, int]:
    """(V̲₀, V̄₀), computed for every ι class and required to agree."""
    values: List[Tuple[int, int]] = []
    for iota in solutions.representatives:
        report = tower_report(c, iota, drop_summands)
        values.append((report.v0_under, report.v0_over))
        logger.debug("iota class towers: %s", report.describe())
    if len(set(values)) != 1:
        raise IotaInvariantsDisagree(f"ι classes give different invariants: {values}", values=tuple(values))
    return values[0]


__all__ = [
    "ConeComplex",
    "TowerReport",
    "build_ai0_minus",
    "classify_towers",
    "compute_involutive_v0s",
    "tower_report",
]
