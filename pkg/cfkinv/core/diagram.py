"""(1,1) Heegaard diagrams from (k, r, c, s) parameterizations, and the knot table.

β is cut open to a horizontal segment carrying the ``N = 2k + 1`` intersection points at positions
``−k..k``. The left side of β (drawn above it) carries r nested loops around ``w``, the right side
(drawn below) carries r nested loops around ``z``, and bridges join the two sides.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

import pandas as pd

from cfkinv.core.type_mapping import ArcKind, SourceKind
from cfkinv.errors import (
    DiagramDisconnected,
    KnotNotFound,
    ParameterizationInvalid,
    ParseError,
    PendingKnotData,
    ValidationReport,
)

logger = logging.getLogger(__name__)

KNOT_TABLE_COLUMNS = ("name", "kind", "value", "provenance")


@dataclass(frozen=True, order=True)
class Parameterization:
    k: int
    r: int
    c: int
    s: int

    @property
    def t(self) -> int:
        """Number of second family bridges."""
        return 2 * (self.k - self.r) + 1 - abs(self.s)

    @property
    def n_points(self) -> int:
        return 2 * self.k + 1

    @classmethod
    def parse(cls, text: str) -> Parameterization:
        """
        >>> Parameterization.parse("14, 7, -7, 1")
        Parameterization(k=14, r=7, c=-7, s=1)
        """
        parts = [part.strip() for part in text.strip().strip("()").split(",")]
        if len(parts) != 4:
            raise ParseError(f"expected four comma separated integers, got {text!r}", field="params")
        try:
            return cls(*(int(part) for part in parts))
        except ValueError as e:
            raise ParseError(f"expected four comma separated integers, got {text!r}", field="params") from e

    def label(self, position: int) -> int:
        """Representative of ``position`` mod N in ``−k..k``."""
        return (position + self.k) % self.n_points - self.k

    def __str__(self) -> str:
        return f"({self.k},{self.r},{self.c},{self.s})"


def point_name(label: int) -> str:
    return f"x{label}"


def validate_parameterization(p: Parameterization) -> ValidationReport:
    violations = []
    if p.k < 0:
        violations.append(f"k = {p.k} is negative")
    if p.r < 0:
        violations.append(f"r = {p.r} is negative")
    if p.r > p.k:
        violations.append(f"r = {p.r} exceeds k = {p.k}")
    if p.t < 0:
        violations.append(f"t = 2(k-r)+1-|s| = {p.t} is negative")
    if not violations and 2 * p.r + abs(p.s) + p.t != p.n_points:
        violations.append(f"loops and bridges give {2 * p.r + abs(p.s) + p.t} endpoints per side, not {p.n_points}")
    return ValidationReport(tuple(violations))


def enumerate_parameterizations(max_k: int) -> Iterator[Parameterization]:
    """Every valid tuple with ``k ≤ max_k``, ``s ≥ 0`` and ``c`` in ``−k..k``, ordered by (k, r, c, s)."""
    for k in range(max_k + 1):
        for r in range(k + 1):
            for c in range(-k, k + 1):
                for s in range(2 * (k - r) + 2):
                    yield Parameterization(k, r, c, s)


@dataclass(frozen=True)
class AlphaArc:
    """An arc of α on one side of β.

    Loops store both endpoints on their side (smaller label first); bridges store
    ``(left endpoint, right endpoint)``.
    """

    kind: ArcKind
    ends: Tuple[int, int]

    def sort_key(self) -> Tuple[int, int]:
        return list(ArcKind).index(self.kind), min(self.ends)


@dataclass(frozen=True)
class Crossing:
    """α crossing the lifted β-line ``y`` at ``x``, upward or downward."""

    label: int
    x: int
    y: int
    up: bool


@dataclass(frozen=True, eq=False)
class OneOneDiagram:
    """Doubly pointed genus one diagram.

    ``crossings`` is one period of the lift of α to the universal cover starting at ``x0`` going up;
    the next period is shifted by ``period``. ``w_region`` (``z_region``) is the label after which
    ``w`` (``z``) sits on the left (right) side of β.
    """

    parameterization: Parameterization
    points: Tuple[str, ...]
    alpha_arcs: Tuple[AlphaArc, ...]
    w_region: int
    z_region: int
    crossings: Tuple[Crossing, ...]
    period: Tuple[int, int]

    @property
    def n_points(self) -> int:
        return len(self.points)

    def arcs_of(self, kind: ArcKind) -> Tuple[AlphaArc, ...]:
        return tuple(arc for arc in self.alpha_arcs if arc.kind == kind)

    def side_endpoints(self) -> Dict[str, List[int]]:
        """Arc endpoints on each side of β; each label occurs once per side."""
        left: List[int] = []
        right: List[int] = []
        for arc in self.alpha_arcs:
            if arc.kind == ArcKind.loop_left:
                left.extend(arc.ends)
            elif arc.kind == ArcKind.loop_right:
                right.extend(arc.ends)
            else:
                left.append(arc.ends[0])
                right.append(arc.ends[1])
        return {"left": sorted(left), "right": sorted(right)}

    def to_dict(self) -> Dict[str, Any]:
        p = self.parameterization
        return {
            "parameterization": {"k": p.k, "r": p.r, "c": p.c, "s": p.s},
            "points": list(self.points),
            "alpha_arcs": [{"kind": arc.kind.value, "ends": list(arc.ends)} for arc in self.alpha_arcs],
            "w_region": self.w_region,
            "z_region": self.z_region,
            "period": list(self.period),
            "crossings": [[cr.label, cr.x, cr.y, int(cr.up)] for cr in self.crossings],
        }


def _alpha_arcs(p: Parameterization) -> List[AlphaArc]:
    k, r, c, s, t = p.k, p.r, p.c, abs(p.s), p.t
    arcs = []
    for i in range(k - r + 1, k + 1):
        arcs.append(AlphaArc(ArcKind.loop_left, tuple(sorted((p.label(c - i), p.label(c + i))))))
        arcs.append(AlphaArc(ArcKind.loop_right, tuple(sorted((p.label(-c - i), p.label(-c + i))))))
    for i in range(c - k + r, c - k + r + s):
        arcs.append(AlphaArc(ArcKind.bridge_1, (p.label(i), p.label(i - 2 * (c - k + r) - s + 1))))
    for i in range(c + k - r - t + 1, c + k - r + 1):
        arcs.append(AlphaArc(ArcKind.bridge_2, (p.label(i), p.label(i - 2 * (c + k - r) + t - 1))))
    return sorted(arcs, key=AlphaArc.sort_key)


def _trace_alpha(p: Parameterization) -> Tuple[List[Crossing], Tuple[int, int]]:
    """Follow the lift of α from ``x0`` (going up) until it returns to a translate of ``x0``."""
    n, k, r, c, s, t = p.n_points, p.k, p.r, p.c, abs(p.s), p.t
    shift_1 = -2 * (c - k + r) - s + 1
    shift_2 = -2 * (c + k - r) + t - 1 + n
    x, y, up = 0, 0, True
    crossings: List[Crossing] = []
    while True:
        crossings.append(Crossing(p.label(x), x, y, up))
        if up:
            u = (x - (c + k - r + 1)) % n
            if u < 2 * r:
                x, up = x + 2 * r - 1 - 2 * u, False
            else:
                x += shift_1 if (x - (c - k + r)) % n < s else shift_2
                y += 1
        else:
            u = (x - (-c + k - r + 1)) % n
            if u < 2 * r:
                x, up = x + 2 * r - 1 - 2 * u, True
            else:
                x -= shift_2 if (x - (-c - k + r)) % n < t else shift_1
                y -= 1
        if x % n == 0:
            break
        if len(crossings) > n:
            raise DiagramDisconnected(f"{p}: α does not close up")
    if not up:
        raise DiagramDisconnected(f"{p}: α returns to x0 with the opposite orientation")
    return crossings, (x, y)


def build_diagram(p: Parameterization) -> OneOneDiagram:
    report = validate_parameterization(p)
    if not report.ok:
        raise ParameterizationInvalid(f"{p}: {'; '.join(report.violations)}")
    crossings, period = _trace_alpha(p)
    if len(crossings) < p.n_points:
        raise DiagramDisconnected(
            f"{p}: α has more than one component, the one through x0 meets {len(crossings)} of {p.n_points} points"
        )
    if abs(period[1]) != 1:
        raise DiagramDisconnected(f"{p}: α meets β algebraically {period[1]} times, not a knot in S3")
    k = p.k
    diagram = OneOneDiagram(
        parameterization=p,
        points=tuple(point_name(label) for label in list(range(k + 1)) + list(range(-k, 0))),
        alpha_arcs=tuple(_alpha_arcs(p)),
        w_region=p.label(p.c + k),
        z_region=p.label(-p.c + k),
        crossings=tuple(crossings),
        period=period,
    )
    logger.debug("diagram %s: period %s, %s arcs", p, period, len(diagram.alpha_arcs))
    return diagram


@dataclass(frozen=True)
class KnotEntry:
    name: str
    kind: SourceKind
    parameterization: Optional[Parameterization] = None
    complex_path: Optional[Path] = None
    provenance: str = ""


def load_knot_table(path: Union[str, Path]) -> List[KnotEntry]:
    """Read the tab separated knot table (columns ``name kind value provenance``).

    ``value`` holds ``k,r,c,s`` for ``params`` rows, a path relative to the table for ``complex``
    rows and nothing for ``pending`` rows.
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, sep="\t", dtype=str, keep_default_na=False)
    except FileNotFoundError as e:
        raise ParseError(f"knot table {path} does not exist", path=str(path)) from e
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ParseError(f"{path.name}: {e}", path=str(path)) from e
    missing = [column for column in KNOT_TABLE_COLUMNS if column not in frame.columns]
    if missing:
        raise ParseError(f"{path.name}: missing columns {missing}", line=1, field=missing[0])

    entries: List[KnotEntry] = []
    seen = set()
    for row_index, row in frame.iterrows():
        line = int(row_index) + 2
        name = row["name"].strip()
        if not name:
            raise ParseError(f"{path.name}: empty knot name", line=line, field="name")
        if name in seen:
            raise ParseError(f"{path.name}: duplicate knot {name}", line=line, field="name")
        seen.add(name)
        if row["kind"] not in SourceKind:
            raise ParseError(f"{path.name}: unknown source kind {row['kind']!r}", line=line, field="kind")
        kind = SourceKind(row["kind"])
        value = row["value"].strip()
        entry = KnotEntry(name, kind, provenance=row["provenance"].strip())
        if kind == SourceKind.params:
            try:
                params = Parameterization.parse(value)
            except ParseError as e:
                raise ParseError(f"{path.name}: {e.message}", line=line, field="value") from e
            report = validate_parameterization(params)
            if not report.ok:
                violations = "; ".join(report.violations)
                raise ParseError(f"{path.name}: {name} {params}: {violations}", line=line, field="value")
            entry = KnotEntry(name, kind, parameterization=params, provenance=entry.provenance)
        elif kind == SourceKind.complex:
            complex_path = path.parent / value
            if not value or not complex_path.is_file():
                raise ParseError(f"{path.name}: complex file {value!r} not found", line=line, field="value")
            entry = KnotEntry(name, kind, complex_path=complex_path, provenance=entry.provenance)
        entries.append(entry)
    logger.debug("knot table %s: %s entries", path, len(entries))
    return entries


def lookup_knot(entries: List[KnotEntry], name: str) -> KnotEntry:
    for entry in entries:
        if entry.name == name:
            if entry.kind == SourceKind.pending:
                raise PendingKnotData(f"no diagram or complex is available for {name}", knot=name)
            return entry
    raise KnotNotFound(f"{name} is not in the knot table", knot=name)


__all__ = [
    "AlphaArc",
    "Crossing",
    "KnotEntry",
    "OneOneDiagram",
    "Parameterization",
    "build_diagram",
    "enumerate_parameterizations",
    "load_knot_table",
    "lookup_knot",
    "point_name",
    "validate_parameterization",
]
