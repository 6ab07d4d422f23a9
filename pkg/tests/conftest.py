from pathlib import Path

import pytest

from cfkinv.config.utils.default_config import default_data_dir
from cfkinv.core.cfk_algebra import CfkComplex, load_complex

DATA = default_data_dir()
COMPLEXES = DATA / "complexes"
SHIPPED = ("unknot", "trefoil", "figure_eight", "11n57", "10_161")

# staircase plus two boxes
TEN_161_BASIS = {
    "x1'": {"x1": 0, "x-4": 1},
    "x2'": {"x2": 0, "x-3": 1},
    "x5'": {"x5": 0, "x0": 0},
    "x-1'": {"x-1": 0, "x4": 0},
    "x-2'": {"x-2": 0, "x3": 0},
    "x-5'": {"x-5": 0, "x0": 0},
}


def shipped(name: str) -> CfkComplex:
    return load_complex(COMPLEXES / f"{name}.json")


@pytest.fixture()
def trefoil() -> CfkComplex:
    return shipped("trefoil")


@pytest.fixture()
def figure_eight() -> CfkComplex:
    return shipped("figure_eight")


@pytest.fixture()
def unknot() -> CfkComplex:
    return shipped("unknot")


@pytest.fixture()
def knot_11n57() -> CfkComplex:
    return shipped("11n57")


@pytest.fixture()
def knot_10_161() -> CfkComplex:
    return shipped("10_161")


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch):
    """Serial runs with the default profile, whatever the caller's environment holds."""
    for variable in ("CFK_PROFILE", "CFK_DATA_DIR", "CFK_MAX_WORKERS", "CFK_ORACLE_TRUNCATION", "CFKINV_LOG_CONFIG"):
        monkeypatch.delenv(variable, raising=False)
    monkeypatch.setenv("CFK_MAX_WORKERS", "1")


@pytest.fixture()
def complex_path(tmp_path) -> Path:
    return tmp_path / "complex.json"
