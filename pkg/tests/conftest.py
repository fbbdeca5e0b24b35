import os
import tempfile

# settings are read when params is first imported, so the environment is fixed before any test module loads
os.environ["PD_DB"] = os.path.join(tempfile.mkdtemp(prefix="precompact-"), "topologies.db")
os.environ["PD_ZEE_PRIMES"] = "2,3"

import pytest

from core_group import parse_group


@pytest.fixture
def z4():
    return parse_group("Z(4)")


@pytest.fixture
def klein():
    return parse_group("Z(2)xZ(2)")


@pytest.fixture
def z2z4():
    return parse_group("Z(2)xZ(4)")
