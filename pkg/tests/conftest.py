from pathlib import Path

import pytest

from quickrel.instances import fig1_network
from quickrel.reliability import ArcStateDistribution

FIG1_FILE = Path(__file__).resolve().parents[1] / "networks" / "fig1.json"


@pytest.fixture
def fig1():
    return fig1_network()


@pytest.fixture
def fig1_uniform(fig1):
    return [ArcStateDistribution.uniform(a.max_capacity) for a in fig1.arcs]


@pytest.fixture
def fig1_file():
    return str(FIG1_FILE)
