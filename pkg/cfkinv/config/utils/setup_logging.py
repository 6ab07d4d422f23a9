import logging
import logging.config
import os
from typing import Any, Dict, List, Optional

from rich.console import Console
from rich.logging import RichHandler
from rich.pretty import pretty_repr
import yaml

import cfkinv

DEFAULT_FORMAT = "[%(asctime)s] [%(name)s] [%(levelname)s] - %(funcName)s() - %(message)s"


class PrettyFormatter(logging.Formatter):
    """Formatter rendering non-string arguments (complexes, maps, reports) with ``pretty_repr``."""

    def format(self, record):
        if record.args:
            if isinstance(record.args, dict):
                record.args = (pretty_repr(record.args, expand_all=True),)
            else:
                record.args = tuple(
                    arg if isinstance(arg, (str, int, float)) else pretty_repr(arg, expand_all=True)
                    for arg in record.args
                )

        format_specifiers_count = 0
        if not isinstance(record.msg, str):
            record.msg = pretty_repr(record.msg, expand_all=True)
        else:
            format_specifiers_count = record.msg.count("%") - 2 * record.msg.count("%%")

        # extra arguments are appended to the message
        if len(record.args) > format_specifiers_count:
            record.msg += " " + " ".join(map(str, record.args[format_specifiers_count:]))
            record.args = record.args[:format_specifiers_count]

        return super().format(record)


def stderr_rich_handler(**kwargs: Any) -> RichHandler:
    """RichHandler writing to stderr; stdout carries the command output."""
    return RichHandler(console=Console(stderr=True), rich_tracebacks=True, **kwargs)


def _default_config(level: int, force: bool) -> Dict[str, Any]:
    handler: Dict[str, Any] = {"level": level, "formatter": "default"}
    if "PYTEST_CURRENT_TEST" in os.environ:
        handler["class"] = "logging.StreamHandler"
    else:
        handler["()"] = stderr_rich_handler
    return {
        "version": 1,
        "formatters": {
            "default": {
                "()": PrettyFormatter,
                "format": DEFAULT_FORMAT,
                "datefmt": "[%Y-%m-%d %H:%M:%S]",
            },
        },
        "handlers": {"default": handler},
        "root": {"level": level, "handlers": ["default"]},
        "disable_existing_loggers": not force,
    }


def setup_logging(
    default_path: str = "",
    default_level: Optional[int] = None,
    env_key: str = f"{cfkinv.__name__.upper()}_LOG_CONFIG",
    force: bool = False,
    loggers: Optional[List[str]] = None,
):
    """Setup logging configuration.

    :param default_path: Path to a YAML logging config (``env_key`` takes precedence).
    :param default_level: Log-level of the root logger and of ``loggers``.
    :param env_key: Environment key naming a YAML logging config.
    :param force: Also apply ``default_level`` to the handlers and keep existing loggers enabled.
    :param loggers: Loggers set to ``default_level`` (e.g. the package loggers for ``--verbose``).
    """
    if value := os.getenv(env_key, None):
        default_path = value
    level = default_level or logging.root.level or logging.WARNING

    if default_path and os.path.exists(default_path):
        with open(default_path) as f:
            config = yaml.safe_load(f.read())
        if default_level:
            for name in loggers or []:
                if name in config.get("loggers", {}):
                    config["loggers"][name]["level"] = default_level
            if force:
                config.setdefault("root", {})["level"] = default_level
        logging.config.dictConfig(config)
    else:
        logging.config.dictConfig(_default_config(level, force))
        if force:
            for handler in logging.root.handlers:
                handler.setLevel(level)

    for logger_name, logger in logging.root.manager.loggerDict.items():
        if isinstance(logger, logging.Logger) and loggers and logger_name in loggers:
            logger.disabled = False
            logger.setLevel(level)
