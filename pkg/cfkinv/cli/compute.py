import logging
from pathlib import Path
import sys
from typing import Annotated, Optional

from rich import print

from cfkinv.cli.utils import echo_json, error_markup
from cfkinv.cli.utils.render import knot_table
from cfkinv.config.settings import CfkSettings
from cfkinv.core.diagram import Parameterization
from cfkinv.core.pipeline import Selector, compute_knot
from cfkinv.errors import CfkError
import cfkinv.patches.typer as typer

logger = logging.getLogger(__name__)


def compute(
    knot: Annotated[Optional[str], typer.Option("--knot", "-k", help="Knot name from the knot table.")] = None,
    params: Annotated[Optional[str], typer.Option("--params", "-p", help="Parameterization K,R,C,S.")] = None,
    complex_file: Annotated[
        Optional[Path], typer.Option("--complex", "-c", help="Complex interchange file (JSON).", dir_okay=False)
    ] = None,
    json_output: Annotated[bool, typer.Option("--json", help="Print the result as JSON.")] = False,
    oracle_truncation: Annotated[
        Optional[int],
        typer.Option("--oracle-truncation", min=1, help="Check homology against the U^N truncation for N and N+2."),
    ] = None,
):
    """Compute V0, V0 under and V0 over of a knot and of its mirror."""
    given = [value for value in (knot, params, complex_file) if value is not None]
    if len(given) != 1:
        raise typer.BadParameter("pass exactly one of --knot, --params or --complex")
    try:
        overrides = {"oracle_truncation": oracle_truncation} if oracle_truncation else {}
        settings = CfkSettings(**overrides)
        selector: Selector
        if params is not None:
            selector = Parameterization.parse(params)
        elif complex_file is not None:
            selector = complex_file
        else:
            selector = str(knot)
        logger.debug("compute %s with %s", selector, settings)

        result = compute_knot(selector, settings)

        if json_output:
            echo_json(result.model_dump(mode="json"))
        else:
            print(knot_table(result))

    except CfkError as e:
        print(error_markup(e))
        if logger.isEnabledFor(logging.DEBUG):
            logger.exception(e)
        sys.exit(1)
    except KeyboardInterrupt:
        print("[red bold]Interrupted. Exiting.")
        sys.exit(1)
