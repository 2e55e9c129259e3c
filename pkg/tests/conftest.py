import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from isoreduce import load_fixture  # noqa: E402


@pytest.fixture(scope="session")
def G():
    return load_fixture("G")


@pytest.fixture(scope="session")
def H():
    return load_fixture("H")


@pytest.fixture(scope="session")
def A1():
    return load_fixture("A1")


@pytest.fixture(scope="session")
def A2():
    return load_fixture("A2")


@pytest.fixture(scope="session")
def hub11():
    return load_fixture("hub11")
