"""Per-knot pipeline shared by every command, whole-table runs and the comparison with expected rows."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor, as_completed
from contextlib import contextmanager
from dataclasses import dataclass
import logging
import multiprocessing
from pathlib import Path
import time
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import orjson
import pandas as pd
from pydantic import ValidationError

from cfkinv.config.settings import CfkSettings
from cfkinv.core.cfk_algebra import CfkComplex, load_complex, mirror_dual, reduce, require_verified
from cfkinv.core.diagram import KnotEntry, Parameterization, build_diagram, load_knot_table, lookup_knot
from cfkinv.core.floer_from_diagram import diagram_complex
from cfkinv.core.homology import build_a0_minus, check_against_oracle, compute_v0
from cfkinv.core.involution import IotaSolutionSet, solve_iota
from cfkinv.core.involutive_invariants import build_ai0_minus, compute_involutive_v0s
from cfkinv.core.schema import ExpectedRow, ExpectedTable, KnotResult, KnotResults
from cfkinv.core.type_mapping import ResultSource, RowStatus, SourceKind
from cfkinv.errors import CfkError, ParseError, PendingKnotData, with_knot_context

logger = logging.getLogger(__name__)

Selector = Union[str, Parameterization, Path, KnotEntry]

RESULT_COLUMNS = ("V0", "V0under", "V0over", "mirror_V0", "mirror_V0under", "mirror_V0over")


class Stopwatch:
    def __init__(self):
        self.timings: Dict[str, float] = {}

    @contextmanager
    def lap(self, stage: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[stage] = round(time.perf_counter() - start, 6)


@dataclass(frozen=True, eq=False)
class ResolvedKnot:
    name: str
    complex: CfkComplex
    source: ResultSource


@dataclass(frozen=True)
class Invariants:
    v0: int
    v0_under: int
    v0_over: int
    classes: int

    @property
    def triple(self) -> Tuple[int, int, int]:
        return self.v0, self.v0_under, self.v0_over


def _selector_label(selector: Selector) -> str:
    if isinstance(selector, KnotEntry):
        return selector.name
    if isinstance(selector, Path):
        return selector.stem
    return str(selector)


def complex_from_parameterization(p: Parameterization, settings: CfkSettings) -> CfkComplex:
    diagram = build_diagram(p)
    c = diagram_complex(diagram, window=settings.bigon_window, max_window=settings.max_bigon_window)
    logger.info("%s: diagram complex with %s generators and %s arrows", p, len(c), len(c.arrows))
    return require_verified(c, f"diagram complex of {p}")


def resolve_knot(selector: Selector, settings: CfkSettings) -> ResolvedKnot:
    """Complex of a knot name, a parameterization, a complex file or a knot table entry."""
    if isinstance(selector, Parameterization):
        return ResolvedKnot(str(selector), complex_from_parameterization(selector, settings), ResultSource.diagram)
    if isinstance(selector, Path):
        return ResolvedKnot(selector.stem, load_complex(selector), ResultSource.complex_file)
    entry = lookup_knot(load_knot_table(settings.knot_table_path), selector) if isinstance(selector, str) else selector
    if entry.kind == SourceKind.params and entry.parameterization is not None:
        c = complex_from_parameterization(entry.parameterization, settings)
        return ResolvedKnot(entry.name, c, ResultSource.diagram)
    if entry.kind == SourceKind.complex and entry.complex_path is not None:
        return ResolvedKnot(entry.name, load_complex(entry.complex_path), ResultSource.complex_file)
    raise PendingKnotData(f"no diagram or complex is available for {entry.name}", knot=entry.name)


def run_oracle(c: CfkComplex, solutions: IotaSolutionSet, truncation: int) -> None:
    """Compare exact homology of A₀⁻ and of every cone with the U-truncated computation."""
    truncations = (truncation, truncation + 2)
    check_against_oracle(build_a0_minus(c), truncations)
    for iota in solutions.representatives:
        check_against_oracle(build_ai0_minus(c, iota).complex, truncations)
    logger.debug("oracle agrees at N=%s", truncations)


def knot_invariants(c: CfkComplex, settings: CfkSettings) -> Invariants:
    """(V₀, V̲₀, V̄₀) of the reduced model of ``c``."""
    reduced, _ = reduce(c)
    v0 = compute_v0(reduced)
    solutions = solve_iota(reduced, cap=settings.iota_enumeration_cap, class_limit=settings.iota_class_limit)
    v0_under, v0_over = compute_involutive_v0s(reduced, solutions, drop_summands=settings.drop_equivariant_summands)
    if settings.oracle_truncation:
        run_oracle(reduced, solutions, settings.oracle_truncation)
    return Invariants(v0, v0_under, v0_over, len(solutions.equivalence_classes))


def compute_knot(selector: Selector, settings: Optional[CfkSettings] = None) -> KnotResult:
    """Full pipeline for one knot and its mirror."""
    settings = settings or CfkSettings()
    watch = Stopwatch()
    with with_knot_context(_selector_label(selector)):
        with watch.lap("complex"):
            knot = resolve_knot(selector, settings)
        with watch.lap("invariants"):
            own = knot_invariants(knot.complex, settings)
        logger.info("%s: V0=%s V0under=%s V0over=%s (%s ι classes)", knot.name, *own.triple, own.classes)
        with watch.lap("mirror"):
            mirror = knot_invariants(mirror_dual(knot.complex), settings)
        logger.info(
            "%s mirror: V0=%s V0under=%s V0over=%s (%s ι classes)", knot.name, *mirror.triple, mirror.classes
        )

    result = KnotResult(
        name=knot.name,
        V0=own.v0,
        V0under=own.v0_under,
        V0over=own.v0_over,
        mirror_V0=mirror.v0,
        mirror_V0under=mirror.v0_under,
        mirror_V0over=mirror.v0_over,
        source=knot.source.value,
        iota_classes=own.classes,
        mirror_iota_classes=mirror.classes,
        timings=watch.timings,
    )
    if not result.ordering_ok():
        logger.warning("%s: V0under >= V0 >= V0over fails for %s / %s", knot.name, own.triple, mirror.triple)
    return result


def _compute_entry(entry: KnotEntry, settings: CfkSettings) -> KnotResult:
    if entry.kind == SourceKind.pending:
        logger.warning("%s: no diagram or complex is available", entry.name)
        return KnotResult(name=entry.name, status=RowStatus.skipped.value, error="no diagram or complex is available")
    try:
        return compute_knot(entry, settings)
    except CfkError as e:
        logger.warning("%s failed: %s", entry.name, e)
        return KnotResult(name=entry.name, status=RowStatus.error.value, error=str(e))


def run_table(
    names: Sequence[str],
    settings: Optional[CfkSettings] = None,
    on_result: Optional[Callable[[KnotResult], None]] = None,
) -> List[KnotResult]:
    """Compute every named knot of the knot table; failures become results with an ``error``.

    Knots are processed by a process pool when ``settings.max_workers > 1``. The returned list is
    ordered by knot name.
    """
    settings = settings or CfkSettings()
    entries = {entry.name: entry for entry in load_knot_table(settings.knot_table_path)}
    results: List[KnotResult] = []
    selected: List[KnotEntry] = []
    for name in dict.fromkeys(names):
        if name in entries:
            selected.append(entries[name])
        else:
            error = f"{name} is not in the knot table"
            results.append(KnotResult(name=name, status=RowStatus.error.value, error=error))

    def collect(result: KnotResult):
        results.append(result)
        if on_result:
            on_result(result)

    if settings.max_workers > 1 and len(selected) > 1:
        context = multiprocessing.get_context("spawn")
        with ProcessPoolExecutor(max_workers=settings.max_workers, mp_context=context) as executor:
            futures = {executor.submit(_compute_entry, entry, settings): entry.name for entry in selected}
            for future in as_completed(futures):
                try:
                    collect(future.result())
                except Exception as e:
                    logger.exception("worker for %s failed", futures[future])
                    collect(KnotResult(name=futures[future], status=RowStatus.error.value, error=str(e)))
    else:
        for entry in selected:
            collect(_compute_entry(entry, settings))

    logger.info(
        "table: %s computed, %s skipped, %s failed",
        sum(r.status == RowStatus.ok.value for r in results),
        sum(r.status == RowStatus.skipped.value for r in results),
        sum(r.status == RowStatus.error.value for r in results),
    )
    return sorted(results, key=lambda r: r.name)


@dataclass(frozen=True)
class RowComparison:
    name: str
    status: RowStatus
    columns: Tuple[str, ...] = ()
    detail: str = ""


@dataclass(frozen=True)
class TableComparison:
    rows: Tuple[RowComparison, ...]

    def failures(self, allow_skipped: bool = False) -> Tuple[RowComparison, ...]:
        """Rows that fail the run. A knot without data fails unless ``allow_skipped``."""
        failing = {RowStatus.mismatch, RowStatus.error, RowStatus.missing, RowStatus.skipped}
        if allow_skipped:
            failing.discard(RowStatus.skipped)
        return tuple(row for row in self.rows if row.status in failing)

    def ok(self, allow_skipped: bool = False) -> bool:
        return not self.failures(allow_skipped)

    def checked(self) -> Tuple[RowComparison, ...]:
        """Rows whose values were actually compared."""
        return tuple(row for row in self.rows if row.status in (RowStatus.match, RowStatus.swapped, RowStatus.mismatch))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {"name": row.name, "status": row.status.value, "columns": ", ".join(row.columns), "detail": row.detail}
                for row in self.rows
            ],
            columns=["name", "status", "columns", "detail"],
        )


def compare_row(result: Optional[KnotResult], row: ExpectedRow) -> RowComparison:
    """Compare one computed row with the expected one, allowing the K / mirror column groups to be swapped."""
    if result is None:
        return RowComparison(row.name, RowStatus.missing, detail="not computed")
    if result.status == RowStatus.skipped.value:
        return RowComparison(row.name, RowStatus.skipped, detail=result.error or "")
    if result.triple is None or result.mirror_triple is None:
        return RowComparison(row.name, RowStatus.error, detail=result.error or "no values")
    computed = result.triple + result.mirror_triple
    direct = row.triple + row.mirror_triple
    if computed == direct:
        return RowComparison(row.name, RowStatus.match)
    if computed == row.mirror_triple + row.triple:
        return RowComparison(row.name, RowStatus.swapped)
    differing = [(column, want, got) for column, got, want in zip(RESULT_COLUMNS, computed, direct) if got != want]
    return RowComparison(
        row.name,
        RowStatus.mismatch,
        columns=tuple(column for column, _, _ in differing),
        detail="; ".join(f"{column}: expected {want}, got {got}" for column, want, got in differing),
    )


def compare_with_expected(results: Sequence[KnotResult], expected: Sequence[ExpectedRow]) -> TableComparison:
    by_name = {result.name: result for result in results}
    comparison = TableComparison(tuple(compare_row(by_name.get(row.name), row) for row in expected))
    for row in comparison.failures():
        logger.warning("%s: %s %s", row.name, row.status.value, row.detail)
    return comparison


def load_expected(path: Union[str, Path]) -> List[ExpectedRow]:
    path = Path(path)
    try:
        return ExpectedTable.validate_python(orjson.loads(path.read_bytes()))
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}", path=str(path)) from e
    except orjson.JSONDecodeError as e:
        raise ParseError(f"{path.name}: invalid JSON: {e.msg}", line=e.lineno, path=str(path)) from e
    except ValidationError as e:
        error = e.errors()[0]
        location = ".".join(str(part) for part in error["loc"])
        raise ParseError(f"{path.name}: {error['msg']}", field=location, path=str(path)) from e


def dump_results(results: Sequence[KnotResult]) -> bytes:
    """JSON array of results with sorted keys."""
    return orjson.dumps(
        KnotResults.dump_python(list(results), mode="json"), option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS
    )


def write_results(results: Sequence[KnotResult], path: Union[str, Path]) -> None:
    Path(path).write_bytes(dump_results(results))


def read_results(path: Union[str, Path]) -> List[KnotResult]:
    return KnotResults.validate_json(Path(path).read_bytes())


__all__ = [
    "Invariants",
    "ResolvedKnot",
    "RowComparison",
    "TableComparison",
    "compare_row",
    "compare_with_expected",
    "complex_from_parameterization",
    "compute_knot",
    "dump_results",
    "knot_invariants",
    "load_expected",
    "read_results",
    "resolve_knot",
    "run_oracle",
    "run_table",
    "write_results",
]
