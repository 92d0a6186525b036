"""测试公共夹具"""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from src.config import config
from src.devices import reference_fleet as _reference_fleet
from src.models import CertLimits, FrequencyGrid
from src.network import NetworkSpec

SCENARIOS = ROOT / "scenarios"


@pytest.fixture
def limits() -> CertLimits:
    return CertLimits.from_config()


@pytest.fixture
def grid() -> FrequencyGrid:
    return FrequencyGrid(points_per_decade=20)


@pytest.fixture
def fleet():
    return _reference_fleet()


@pytest.fixture
def two_node() -> NetworkSpec:
    net = config.reference_network
    return NetworkSpec.from_dict({k: net[k] for k in ('n', 'rho', 'v0', 'lines')})


@pytest.fixture
def scenarios_dir() -> Path:
    return SCENARIOS
