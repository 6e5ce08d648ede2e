import math
from pathlib import Path

import pytest

from leotdd import experiment
from leotdd.config import load_config
from leotdd.geometry import ConstellationGeometry

CONFIG_PATH = Path(__file__).resolve().parent.parent / "configs" / "default.ini"


@pytest.fixture(scope="session")
def config_path() -> Path:
    return CONFIG_PATH


@pytest.fixture(scope="session")
def default_config():
    return load_config(str(CONFIG_PATH))


@pytest.fixture(scope="session")
def default_run(default_config):
    """One full default-scenario drop, shared by every test that reads it."""
    return experiment.run(default_config)


@pytest.fixture()
def geom600():
    return ConstellationGeometry(altitude_km=600.0, min_elevation_rad=math.radians(10.0))
