"""This Module extends the pydantic-settings BaseSettings with ini profile defaults.

Settings classes name an ini file and read one section (the profile) of it. Values of the profile
sit below the environment and above the field defaults.
"""

import configparser
import logging
import os
from os import path
from typing import Any, ClassVar, Dict, Optional, Tuple, Type

from pydantic.fields import FieldInfo
from pydantic_settings import BaseSettings as PydanticBaseSettings
from pydantic_settings import PydanticBaseSettingsSource

logger = logging.getLogger(__name__)

DEFAULT_PROFILE = "default"


def remove_edge_quotes(value):
    if isinstance(value, str):
        return value.lstrip("'\"").rstrip("'\"")
    return value


def read_profile(ini_file: Optional[str], profile: str, env_prefix: str = "") -> Dict[str, str]:
    """Read one section of an ini file; unknown profiles fall back to the ``default`` section.

    Keys may carry the settings' env prefix, which is removed.
    """
    if not ini_file or not path.exists(path.expanduser(ini_file)):
        return {}
    config = configparser.ConfigParser(default_section=DEFAULT_PROFILE)
    config.read(path.expanduser(ini_file), encoding="utf-8")
    if profile != DEFAULT_PROFILE and not config.has_section(profile):
        logger.warning("profile %s not found in %s, using %s", profile, ini_file, DEFAULT_PROFILE)
        profile = DEFAULT_PROFILE
    section_data = dict(config.items(profile, raw=True))
    prefix = env_prefix.lower()
    if prefix:
        section_data = {k[len(prefix) :] if k.startswith(prefix) else k: v for k, v in section_data.items()}
    return {key: remove_edge_quotes(value) for key, value in section_data.items()}


class IniProfileSettingsSource(PydanticBaseSettingsSource):
    """Settings source reading the active profile section of ``settings_cls.ini_file``."""

    def __init__(self, settings_cls: Type[PydanticBaseSettings]):
        super().__init__(settings_cls)
        env_prefix = self.config.get("env_prefix", "") or ""
        self.profile = os.environ.get(f"{env_prefix}PROFILE", DEFAULT_PROFILE) or DEFAULT_PROFILE
        self.values = read_profile(getattr(settings_cls, "ini_file", None), self.profile, env_prefix)

    def get_field_value(self, field: FieldInfo, field_name: str) -> Tuple[Any, str, bool]:
        return self.values.get(field_name), field_name, False

    def __call__(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {}
        for field_name, field in self.settings_cls.model_fields.items():
            value, key, _ = self.get_field_value(field, field_name)
            if value is not None:
                data[key] = value
        return data


class BaseSettings(PydanticBaseSettings):
    """BaseSettings with an ini profile source between the environment and the field defaults.

    Subclasses set ``ini_file``; the profile is chosen by the ``<env_prefix>PROFILE`` variable.
    """

    ini_file: ClassVar[Optional[str]] = None

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[PydanticBaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return init_settings, env_settings, dotenv_settings, IniProfileSettingsSource(settings_cls), file_secret_settings
