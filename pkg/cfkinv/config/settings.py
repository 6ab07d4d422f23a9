"""Runtime configuration of the pipeline."""

from pathlib import Path
from typing import ClassVar, Optional

from pydantic import Field
from pydantic_settings import SettingsConfigDict

from cfkinv.config.utils.default_config import default_config, default_data_dir
from cfkinv.patches.pydantic import BaseSettings


class CfkSettings(BaseSettings):
    """Settings of every command.

    Precedence: constructor arguments, ``CFK_*`` environment variables, the profile section of
    ``default_config.ini`` chosen by ``CFK_PROFILE``, field defaults.
    """

    model_config = SettingsConfigDict(env_prefix="CFK_", extra="ignore")
    ini_file: ClassVar[Optional[str]] = default_config()

    data_dir: Path = Field(default_factory=default_data_dir)
    knot_table: str = "knot_table.tsv"
    expected_table: str = "expected_table1.json"
    bigon_window: Optional[int] = Field(default=None, ge=1)
    max_bigon_window: int = Field(default=64, ge=1)
    iota_enumeration_cap: int = Field(default=2**20, ge=1)
    iota_class_limit: int = Field(default=64, ge=1)
    oracle_truncation: Optional[int] = Field(default=None, ge=1)
    max_workers: int = Field(default=4, ge=1)
    drop_equivariant_summands: bool = True

    @property
    def knot_table_path(self) -> Path:
        return self.data_dir / self.knot_table

    @property
    def expected_table_path(self) -> Path:
        return self.data_dir / self.expected_table


__all__ = ["CfkSettings"]
