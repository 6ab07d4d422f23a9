"""typer patch"""
from typer import *  # noqa: F403, F401

# patched objects
from cfkinv.patches.typer_cli_wrapper import Typer  # noqa: F401
