"""CLI Utils methods."""

import sys
from typing import Any

import orjson
from rich.markup import escape
import typer


def is_help():
    return len(sys.argv) == 1 or any(arg in ["-h", "--help"] for arg in sys.argv)


def echo_json(payload: Any) -> None:
    """Machine readable output: indented JSON with sorted keys."""
    typer.echo(orjson.dumps(payload, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS).decode())


def error_markup(error: BaseException) -> str:
    return f"[red bold]{escape(str(error))}"


__all__ = ["echo_json", "error_markup", "is_help"]
