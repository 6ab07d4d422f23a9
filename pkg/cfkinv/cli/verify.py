import logging
from pathlib import Path
import sys
from typing import Annotated

from rich import print
from rich.markup import escape

from cfkinv.cli.utils import echo_json, error_markup
from cfkinv.core.cfk_algebra import (
    alexander_polynomial,
    format_laurent,
    format_poincare,
    hfk_hat,
    read_complex,
    verify_complex,
)
from cfkinv.core.homology import compute_v0
from cfkinv.errors import CfkError
import cfkinv.patches.typer as typer

logger = logging.getLogger(__name__)


def verify(
    path: Annotated[Path, typer.Argument(help="Complex interchange file (JSON).", dir_okay=False)],
    json_output: Annotated[bool, typer.Option("--json", help="Print the report as JSON.")] = False,
):
    """Check a complex file and print its Alexander polynomial, HFK-hat and V0."""
    try:
        c = read_complex(path)
        report = verify_complex(c)
        payload = {
            "name": path.stem,
            "generators": len(c),
            "arrows": len(c.arrows),
            "ok": report.ok,
            "violations": list(report.violations),
            "alexander": format_laurent(alexander_polynomial(c)),
            "hfk_hat": format_poincare(hfk_hat(c)),
            "V0": compute_v0(c) if report.ok else None,
        }

        if json_output:
            echo_json(payload)
        else:
            print(f"[bold]{escape(path.stem)}[/bold]: {len(c)} generators, {len(c.arrows)} arrows")
            for violation in report.violations:
                print(f"[red]  {escape(violation)}")
            print(f"Alexander polynomial: {payload['alexander']}")
            print(f"HFK-hat: {payload['hfk_hat']}")
            if report.ok:
                print(f"V0: {payload['V0']}")
                print("[green bold]verified")

        if not report.ok:
            if not json_output:
                print(f"[red bold]{len(report.violations)} violations")
            sys.exit(1)

    except CfkError as e:
        print(error_markup(e))
        if logger.isEnabledFor(logging.DEBUG):
            logger.exception(e)
        sys.exit(1)
