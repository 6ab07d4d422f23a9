import logging
from pathlib import Path
import sys
from typing import Annotated, Any, Dict, Optional

from rich import print

from cfkinv.cli.global_options import is_silent
from cfkinv.cli.utils import echo_json, error_markup
from cfkinv.cli.utils.loading_animation import LoadingAnimation
from cfkinv.cli.utils.render import results_table
from cfkinv.config.settings import CfkSettings
from cfkinv.core.pipeline import compare_with_expected, load_expected, run_table, write_results
from cfkinv.core.schema import KnotResult, KnotResults
from cfkinv.errors import CfkError
import cfkinv.patches.typer as typer

logger = logging.getLogger(__name__)


def table(
    expected: Annotated[
        Optional[Path],
        typer.Option("--expected", "-e", dir_okay=False, help="Expected values (default: the shipped Table 1)."),
    ] = None,
    out: Annotated[Optional[Path], typer.Option("--out", "-o", dir_okay=False, help="Write results JSON.")] = None,
    knots: Annotated[
        Optional[str], typer.Option("--knots", help="Comma separated knot names (default: every expected row).")
    ] = None,
    allow_skipped: Annotated[
        bool, typer.Option("--allow-skipped", help="Do not fail on knots that have no diagram or complex.")
    ] = False,
    max_workers: Annotated[
        Optional[int], typer.Option("--max-workers", "-j", min=1, help="Knots computed concurrently.")
    ] = None,
    json_output: Annotated[bool, typer.Option("--json", help="Print results and comparison as JSON.")] = False,
):
    """Compute every knot of the expected table and compare, allowing K and its mirror to be swapped."""
    loading_animation = None
    try:
        overrides: Dict[str, Any] = {"max_workers": max_workers} if max_workers else {}
        settings = CfkSettings(**overrides)
        expected_rows = load_expected(expected or settings.expected_table_path)
        names = [row.name for row in expected_rows]
        if knots:
            names = [name.strip() for name in knots.split(",") if name.strip()]
            expected_rows = [row for row in expected_rows if row.name in names]
        logger.debug("table run over %s with %s", names, settings)

        loading_animation = LoadingAnimation(
            f"Computing {len(names)} knots", total_width=5, silent=is_silent() or json_output
        )

        def progress(result: KnotResult):
            loading_animation.title = f"Computing {len(names)} knots - {result.name} {result.status}"

        with loading_animation:
            results = run_table(names, settings, on_result=progress)
        comparison = compare_with_expected(results, expected_rows)

        if out:
            write_results(results, out)
            logger.info("results written to %s", out)

        if json_output:
            echo_json(
                {
                    "results": KnotResults.dump_python(results, mode="json"),
                    "comparison": comparison.to_frame().to_dict(orient="records"),
                    "ok": comparison.ok(allow_skipped),
                }
            )
        else:
            print(results_table(results, comparison))

        failures = comparison.failures(allow_skipped)
        checked = len(comparison.checked())
        if failures:
            if not json_output:
                print(
                    f"[red bold]{len(failures)} of {len(comparison.rows)} rows fail "
                    f"({checked} compared, {len(comparison.rows) - checked} without values)."
                )
            sys.exit(1)
        if not json_output:
            skipped = len(comparison.rows) - checked
            suffix = f", {skipped} skipped" if skipped else ""
            print(f"[green bold]{checked} of {len(comparison.rows)} rows compared, no mismatch{suffix}.")

    except CfkError as e:
        if loading_animation:
            loading_animation.stop()
        print(error_markup(e))
        if logger.isEnabledFor(logging.DEBUG):
            logger.exception(e)
        sys.exit(1)
    except KeyboardInterrupt:
        if loading_animation:
            loading_animation.stop()
        print("[red bold]Interrupted. Exiting.")
        sys.exit(1)
