import logging
import sys
from typing import Annotated

from rich import print
from rich.table import Table

from cfkinv.cli.global_options import is_silent
from cfkinv.cli.utils import echo_json, error_markup
from cfkinv.cli.utils.loading_animation import LoadingAnimation
from cfkinv.config.settings import CfkSettings
from cfkinv.core.cfk_algebra import format_laurent, laurent_from_coefficients
from cfkinv.core.floer_from_diagram import search_parameterizations
from cfkinv.errors import CfkError
import cfkinv.patches.typer as typer

logger = logging.getLogger(__name__)


def _coefficients(text: str):
    try:
        return laurent_from_coefficients([int(part) for part in text.split(",") if part.strip()])
    except ValueError as e:
        raise typer.BadParameter(f"{text!r}: {e}", param_hint="--alexander") from e


def search(
    alexander: Annotated[
        str,
        typer.Option("--alexander", "-a", help="Symmetric Alexander coefficients, lowest degree first, e.g. 1,-1,1."),
    ],
    max_k: Annotated[int, typer.Option("--max-k", min=0, help="Largest k tried.")] = 2,
    json_output: Annotated[bool, typer.Option("--json", help="Print the matches as JSON.")] = False,
):
    """Find (1,1) parameterizations whose complex has the given Alexander polynomial."""
    target = _coefficients(alexander)
    loading_animation = None
    try:
        settings = CfkSettings()
        loading_animation = LoadingAnimation(
            f"Searching k <= {max_k}", total_width=5, silent=is_silent() or json_output
        )
        with loading_animation:
            matches = search_parameterizations(target, max_k, max_window=settings.max_bigon_window)

        if json_output:
            echo_json([[p.k, p.r, p.c, p.s] for p in matches])
            return
        table = Table(title=f"Δ = {format_laurent(target)}")
        for column in ("k", "r", "c", "s"):
            table.add_column(column, justify="right")
        for p in matches:
            table.add_row(str(p.k), str(p.r), str(p.c), str(p.s))
        print(table)
        print(f"{len(matches)} parameterizations with k <= {max_k}")

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
