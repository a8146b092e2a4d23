import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from risnoma.geometry import default_geometry, default_pathloss  # noqa: E402
from risnoma.transceiver import ImpairmentProfile, PowerAllocation  # noqa: E402


@pytest.fixture
def geo():
    return default_geometry()


@pytest.fixture
def pathloss():
    return default_pathloss()


@pytest.fixture
def alloc():
    return PowerAllocation(0.2)


@pytest.fixture
def ideal():
    return ImpairmentProfile.from_level(0.0, 0)


@pytest.fixture
def nonideal():
    return ImpairmentProfile.from_level(0.15, 3)
