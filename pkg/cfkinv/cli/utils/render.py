"""Rich tables for the human readable output of the commands."""

from typing import Optional, Sequence

from rich.markup import escape
from rich.table import Table

from cfkinv.core.pipeline import RESULT_COLUMNS, TableComparison
from cfkinv.core.schema import KnotResult
from cfkinv.core.type_mapping import RowStatus

STATUS_STYLE = {
    RowStatus.ok: "green",
    RowStatus.match: "green",
    RowStatus.swapped: "green",
    RowStatus.mismatch: "red bold",
    RowStatus.error: "red bold",
    RowStatus.missing: "red",
    RowStatus.skipped: "yellow",
}

HEADERS = ("V0", "V0 under", "V0 over")


def _value(value: Optional[int]) -> str:
    return "-" if value is None else str(value)


def knot_table(result: KnotResult) -> Table:
    """The two invariant triples of one knot."""
    table = Table(title=f"{result.name} ({result.source})")
    table.add_column("knot")
    for header in HEADERS:
        table.add_column(header, justify="right")
    table.add_column("ι classes", justify="right")
    table.add_row(result.name, *map(_value, result.triple or (None,) * 3), _value(result.iota_classes))
    table.add_row(
        f"mirror {result.name}",
        *map(_value, result.mirror_triple or (None,) * 3),
        _value(result.mirror_iota_classes),
    )
    return table


def results_table(results: Sequence[KnotResult], comparison: Optional[TableComparison] = None) -> Table:
    statuses = {row.name: row for row in comparison.rows} if comparison else {}
    table = Table(title="Involutive invariants")
    table.add_column("knot")
    for column in RESULT_COLUMNS:
        table.add_column(column.replace("mirror_", "m."), justify="right")
    table.add_column("status")
    table.add_column("detail", overflow="fold")
    for result in results:
        row = statuses.get(result.name)
        status = row.status if row else RowStatus(result.status)
        detail = row.detail if row and row.detail else result.error or ""
        values = [getattr(result, column) for column in RESULT_COLUMNS]
        table.add_row(
            escape(result.name),
            *map(_value, values),
            f"[{STATUS_STYLE[status]}]{status.value}",
            escape(detail),
        )
    return table
