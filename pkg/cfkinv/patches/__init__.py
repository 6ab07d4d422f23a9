"""This modul includes some enrichment for the pydantic-settings / Typer library.

- Typer global / common options support (passed by a dataclass)
- BaseSettings with ini profile defaults between the environment and the field defaults
"""

import pydantic
import pydantic_settings
import typer

__all__ = ["pydantic", "typer", "pydantic_settings"]
