"""Bigons of a (1,1) diagram in the universal cover and the complex CFK∞ they define.

The cover is drawn in integer coordinates: the lifted β-lines are ``y = Y·S`` and the lifted
intersection points sit at ``(X·S, Y·S)`` with ``S = 64N²``. Loops are rectangles of height
``8·span`` on their side of the line, bridges leave their endpoints through short vertical stubs.
Every domain is the closed polygon "α from p to q, then β back to p"; multiplicities are winding
numbers of that polygon.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from cfkinv.core.cfk_algebra import (
    Arrow,
    CfkComplex,
    Generator,
    alexander_polynomial,
    hfk_hat,
)
from cfkinv.core.diagram import (
    Crossing,
    OneOneDiagram,
    Parameterization,
    build_diagram,
    enumerate_parameterizations,
    point_name,
)
from cfkinv.core.gf2 import gf2_matmul, graded_homology_ranks
from cfkinv.errors import CfkError, DiagramDisconnected, DSquaredNonzero, GradingInconsistent, WindowExhausted

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 3
DEFAULT_MAX_WINDOW = 64

BRIDGE_STUB = 4
LOOP_STEP = 8
BASEPOINT_OFFSET = 2


def winding_numbers(polygon: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Winding number of the closed integer polygon around each point (none may lie on it)."""
    if not len(points):
        return np.zeros(0, dtype=np.int64)
    x1, y1 = polygon[:, 0][None, :], polygon[:, 1][None, :]
    closed = np.roll(polygon, -1, axis=0)
    x2, y2 = closed[:, 0][None, :], closed[:, 1][None, :]
    px, py = points[:, 0][:, None], points[:, 1][:, None]
    is_left = (x2 - x1) * (py - y1) - (px - x1) * (y2 - y1)
    upward = (y1 <= py) & (y2 > py) & (is_left > 0)
    downward = (y1 > py) & (y2 <= py) & (is_left < 0)
    return upward.sum(axis=1) - downward.sum(axis=1)


def signed_area2(polygon: np.ndarray) -> int:
    """Twice the signed area; positive for counterclockwise polygons."""
    x, y = polygon[:, 0], polygon[:, 1]
    return int(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


@dataclass(frozen=True)
class Domain:
    """Domain from the lift ``start`` to the lift ``end`` (both on the line ``y = 0``)."""

    start: int
    end: int
    maslov_index: int
    orientation: int
    w_count: int = 0
    z_count: int = 0


@dataclass(frozen=True, order=True)
class Bigon:
    """Embedded bigon contributing ``source → U^w_count · target``."""

    source: str
    target: str
    w_count: int
    z_count: int


class LiftedDiagram:
    """The lift of α through ``x0`` and the β-line it starts on.

    Crossing ``i + q·L`` is crossing ``i`` of the stored period shifted by ``q·period``. The lift meets
    the line ``y = 0`` once per label; ``window`` bounds how many periods may be unrolled to find
    all of them.
    """

    def __init__(self, diagram: OneOneDiagram, window: int = DEFAULT_WINDOW):
        self.diagram = diagram
        self.window = window
        self.n = diagram.n_points
        self.scale = 64 * self.n * self.n
        self.length = len(diagram.crossings)
        self.dx, self.dy = diagram.period
        required = max(abs(cr.y) for cr in diagram.crossings)
        if required > window:
            raise WindowExhausted(
                f"α needs {required} periods to meet every point on one β-line, window is {window}",
                required=required,
                window=window,
            )
        self.line_zero = tuple(
            sorted(index + (-cr.y * self.dy) * self.length for index, cr in enumerate(diagram.crossings))
        )
        self.index_of = {self.crossing(index).label: index for index in self.line_zero}
        p = diagram.parameterization
        self._w_center = p.c + p.k
        self._z_center = -p.c + p.k

    def crossing(self, index: int) -> Crossing:
        q, rest = divmod(index, self.length)
        base = self.diagram.crossings[rest]
        return Crossing(base.label, base.x + q * self.dx, base.y + q * self.dy, base.up)

    def segment(self, index: int) -> Tuple[List[Tuple[int, int]], int]:
        """Vertices of α from crossing ``index`` to ``index + 1`` and its turning in units of π."""
        a, b = self.crossing(index), self.crossing(index + 1)
        s = self.scale
        if a.y == b.y:
            height = LOOP_STEP * abs(b.x - a.x)
            if a.up:
                level, turn = a.y * s + height, -1 if b.x > a.x else 1
            else:
                level, turn = a.y * s - height, 1 if b.x > a.x else -1
            return [(a.x * s, a.y * s), (a.x * s, level), (b.x * s, level), (b.x * s, b.y * s)], turn
        stub = BRIDGE_STUB if b.y > a.y else -BRIDGE_STUB
        return [(a.x * s, a.y * s), (a.x * s, a.y * s + stub), (b.x * s, b.y * s - stub), (b.x * s, b.y * s)], 0

    def path(self, start: int, end: int) -> Tuple[np.ndarray, int]:
        """α from crossing ``start`` to crossing ``end`` as a vertex array, with its turning."""
        first = self.crossing(start)
        vertices = [(first.x * self.scale, first.y * self.scale)]
        turning = 0
        step = 1 if end > start else -1
        for index in range(start, end, step):
            segment, turn = self.segment(index if step > 0 else index - 1)
            if step < 0:
                segment, turn = segment[::-1], -turn
            vertices.extend(segment[1:])
            turning += turn
        return np.array(vertices, dtype=np.int64), turning

    def crosses_between(self, start: int, end: int) -> bool:
        """Whether α between the two line-zero crossings meets the β-segment joining them."""
        lo, hi = min(start, end), max(start, end)
        x_lo, x_hi = sorted((self.crossing(start).x, self.crossing(end).x))
        return any(lo < index < hi and x_lo < self.crossing(index).x < x_hi for index in self.line_zero)

    def _corner_quarters(self, polygon: np.ndarray, at_start: bool) -> int:
        """Four times the point measure of the domain at one of its corners."""
        here, there = (polygon[0], polygon[-1]) if at_start else (polygon[-1], polygon[0])
        along_alpha = polygon[1] if at_start else polygon[-2]
        beta = int(np.sign(there[0] - here[0]))
        alpha = int(np.sign(along_alpha[1] - here[1]))
        probes = np.array([[here[0] + beta, alpha], [here[0] - beta, -alpha]], dtype=np.int64)
        inner, outer = winding_numbers(polygon, probes)
        return int(inner + 3 * outer)

    def _basepoint_lifts(self, polygon: np.ndarray, center: int, offset: int) -> np.ndarray:
        s, period = self.scale, self.n * self.scale
        x0 = (2 * center + 1) * s // 2
        (x_min, y_min), (x_max, y_max) = polygon.min(axis=0), polygon.max(axis=0)
        shifts = np.arange((x_min - x0) // period, (x_max - x0) // period + 2)
        levels = np.arange(y_min // s, y_max // s + 2)
        xs, ys = np.meshgrid(x0 + shifts * period, levels * s + offset)
        return np.stack([xs.ravel(), ys.ravel()], axis=1).astype(np.int64)

    def domain(self, start: int, end: int, counts: bool = True) -> Domain:
        polygon, turning = self.path(start, end)
        quarters = 2 * turning + self._corner_quarters(polygon, True) + self._corner_quarters(polygon, False)
        if quarters % 4:
            raise GradingInconsistent(f"domain between lifts {start} and {end} has Maslov index {quarters}/4")
        orientation = int(np.sign(signed_area2(polygon)))
        if not counts:
            return Domain(start, end, quarters // 4, orientation)
        w = winding_numbers(polygon, self._basepoint_lifts(polygon, self._w_center, BASEPOINT_OFFSET)).sum()
        z = winding_numbers(polygon, self._basepoint_lifts(polygon, self._z_center, -BASEPOINT_OFFSET)).sum()
        return Domain(start, end, quarters // 4, orientation, int(w), int(z))


def enumerate_bigons(d: OneOneDiagram, window: int = DEFAULT_WINDOW) -> List[Bigon]:
    """Every embedded bigon with convex corners, up to deck translation."""
    lift = LiftedDiagram(d, window)
    bigons = []
    for position, start in enumerate(lift.line_zero):
        for end in lift.line_zero[position + 1 :]:
            if lift.crosses_between(start, end):
                continue
            shape = lift.domain(start, end, counts=False)
            if shape.maslov_index not in (1, -1) or shape.maslov_index != shape.orientation:
                continue
            found = lift.domain(start, end)
            source, target = lift.crossing(start).label, lift.crossing(end).label
            if found.orientation < 0:
                source, target = target, source
            sign = found.orientation
            bigons.append(Bigon(point_name(source), point_name(target), sign * found.w_count, sign * found.z_count))
    logger.debug("%s: %s bigons", d.parameterization, len(bigons))
    return sorted(bigons)


def _relative_gradings(lift: LiftedDiagram) -> Dict[str, Tuple[int, int]]:
    """(A, M) of every point relative to ``x0``."""
    base = lift.index_of[0]
    gradings = {point_name(0): (0, 0)}
    for label, index in lift.index_of.items():
        if index == base:
            continue
        domain = lift.domain(base, index)
        gradings[point_name(label)] = (domain.w_count - domain.z_count, 2 * domain.w_count - domain.maslov_index)
    return gradings


def _vertical_homology_degree(generators: Sequence[Generator], arrows: Sequence[Arrow]) -> int:
    index = {g.name: position for position, g in enumerate(generators)}
    vertical = np.zeros((len(generators), len(generators)), dtype=np.uint8)
    for arrow in arrows:
        if arrow.upower == 0:
            vertical[index[arrow.target], index[arrow.source]] ^= 1
    homology = graded_homology_ranks([g.maslov for g in generators], vertical)
    ranks = {degree: rank for degree, rank in homology.items() if rank}
    if sum(ranks.values()) != 1:
        raise GradingInconsistent(f"vertical homology has ranks {ranks}, expected a single F2")
    return next(iter(ranks))


def assemble_cfk(d: OneOneDiagram, bigons: Sequence[Bigon], window: int = DEFAULT_WINDOW) -> CfkComplex:
    """One generator per point, one arrow per bigon (mod 2), gradings from domains, normalized."""
    lift = LiftedDiagram(d, window)
    gradings = _relative_gradings(lift)
    for bigon in bigons:
        a_source, m_source = gradings[bigon.source]
        a_target, m_target = gradings[bigon.target]
        if a_source - a_target != bigon.z_count - bigon.w_count or m_source - m_target != 1 - 2 * bigon.w_count:
            raise GradingInconsistent(
                f"bigon {bigon.source} -> U^{bigon.w_count} {bigon.target} disagrees with the domain gradings"
            )
    counts: Dict[Tuple[str, str, int], int] = {}
    for bigon in bigons:
        key = (bigon.source, bigon.target, bigon.w_count)
        counts[key] = counts.get(key, 0) ^ 1
    arrows = [Arrow(source, target, upower) for (source, target, upower), odd in sorted(counts.items()) if odd]

    poly: Dict[int, int] = {}
    for a, m in gradings.values():
        poly[a] = poly.get(a, 0) + (-1) ** (m % 2)
    degrees = [a for a, coeff in poly.items() if coeff]
    if not degrees or (min(degrees) + max(degrees)) % 2:
        raise GradingInconsistent(f"Euler characteristic {poly} cannot be made symmetric")
    a_shift = -(min(degrees) + max(degrees)) // 2
    generators = [Generator(name, gradings[name][0] + a_shift, gradings[name][1]) for name in d.points]
    m_shift = _vertical_homology_degree(generators, arrows)
    generators = [Generator(g.name, g.alexander, g.maslov - m_shift) for g in generators]

    c = CfkComplex(tuple(generators), tuple(arrows))
    if gf2_matmul(c.differential, c.differential).any():
        raise DSquaredNonzero(f"{d.parameterization}: bigon differential does not square to zero")
    logger.debug("%s: assembled %r", d.parameterization, c)
    return c


def diagram_complex(
    d: OneOneDiagram, window: Optional[int] = None, max_window: int = DEFAULT_MAX_WINDOW
) -> CfkComplex:
    """Bigons and complex of ``d``, doubling the window until the lift closes up."""
    window = window or DEFAULT_WINDOW
    while True:
        try:
            return assemble_cfk(d, enumerate_bigons(d, window), window)
        except WindowExhausted as e:
            if e.required > max_window:
                raise WindowExhausted(
                    f"{d.parameterization}: needs window {e.required}, limit is {max_window}",
                    required=e.required,
                    window=max_window,
                ) from e
            while window < e.required:
                window *= 2
            window = min(window, max_window)
            logger.debug("%s: window enlarged to %s", d.parameterization, window)


def search_parameterizations(
    alexander: Mapping[int, int],
    max_k: int,
    hfk: Optional[Mapping[Tuple[int, int], int]] = None,
    max_window: int = DEFAULT_MAX_WINDOW,
) -> List[Parameterization]:
    """Tuples with ``k ≤ max_k`` whose complex has the given Alexander polynomial (up to sign)."""
    target = {degree: coeff for degree, coeff in alexander.items() if coeff}
    negated = {degree: -coeff for degree, coeff in target.items()}
    matches = []
    for p in enumerate_parameterizations(max_k):
        try:
            c = diagram_complex(build_diagram(p), max_window=max_window)
        except DiagramDisconnected:
            continue
        except CfkError as e:
            logger.debug("%s skipped: %s", p, e)
            continue
        if alexander_polynomial(c) not in (target, negated):
            continue
        if hfk is not None and hfk_hat(c) != dict(hfk):
            continue
        matches.append(p)
    logger.info("search up to k=%s: %s matching parameterizations", max_k, len(matches))
    return matches


__all__ = [
    "Bigon",
    "Domain",
    "LiftedDiagram",
    "assemble_cfk",
    "diagram_complex",
    "enumerate_bigons",
    "search_parameterizations",
    "winding_numbers",
]
