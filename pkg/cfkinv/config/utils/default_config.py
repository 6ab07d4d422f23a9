"""Module to get the default configuration for the ini module."""

from pathlib import Path
from typing import List, Optional, Union

import cfkinv


def default_config(configs: Optional[Union[str, List[str]]] = None) -> str:
    """Get the ini file of the settings profiles: the first existing candidate or the packaged one.

    >>> default_config().endswith("default_config.ini")
    True
    >>> default_config(["/nonexistent/cfkinv.ini"]) == default_config()
    True
    """
    if isinstance(configs, list) and (
        config := next((config for config in configs if Path(config).expanduser().exists()), None)
    ):
        return str(Path(config).expanduser().resolve())
    if isinstance(configs, str) and Path(configs).expanduser().exists():
        return str(Path(configs).expanduser().resolve())
    return str(Path(cfkinv.__file__).parent.resolve() / "config" / "default_config.ini")


def default_data_dir() -> Path:
    """Data shipped with the package (knot table, complexes, expected tables)."""
    return Path(cfkinv.__file__).parent.resolve() / "data"
