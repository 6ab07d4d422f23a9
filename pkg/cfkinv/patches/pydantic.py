"""pydantic patch"""
from pydantic import *  # noqa: F403, F401

# patched objects
from cfkinv.patches.pydantic_validator import BaseSettings, IniProfileSettingsSource, read_profile  # noqa: F401
