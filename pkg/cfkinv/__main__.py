"""Main Entrypoint for the module."""
import logging
import sys

from rich import print

from cfkinv.cli.compute import compute
from cfkinv.cli.global_options import CommonOptions
from cfkinv.cli.search import search
from cfkinv.cli.table import table
from cfkinv.cli.utils import is_help
from cfkinv.cli.verify import verify
import cfkinv.patches.typer as typer

logger = logging.getLogger(__name__)


def callback(ctx: typer.Context):
    """Involutive knot Floer invariants of (1,1)-knots."""
    if ctx.invoked_subcommand is None or (is_help() and ctx.command_path == "cfkinv"):
        # print logo on help (every)
        print("""[blue]\n\t     CFKINV\n\t  ι ⟲ CFK∞""")
    if ctx.invoked_subcommand is None:
        # print help on group calling without command
        ctx.get_help()
        ctx.exit()


app_settings = {
    "context_settings": {"help_option_names": ["-h", "--help"]},
    "invoke_without_command": True,
    "callback": callback,
}

app = typer.Typer(CommonOptions, **app_settings, add_completion=False)  # type: ignore

for command in (compute, table, verify, search):
    app.command()(command)


def main():
    """Main Entrypoint for the module."""
    try:
        app()  # type: ignore
        if len(sys.argv) > 1:
            logger.info("Execution completed successfully.")
            logger.info("Status: 0")
        sys.exit(0)
    except Exception as e:
        logger.error(f"An error occurred: {e}", exc_info=logging.root.level == logging.DEBUG)
        logger.error("Status: 1")
        sys.exit(1)


if __name__ == "__main__":
    main()

_app_click_obj = typer.main.get_group(app)  # used for docs -> CLI commands

__all__ = ["app", "main", "_app_click_obj"]
