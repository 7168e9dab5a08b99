import pytest
from hypothesis import settings

import schwarzbundles as sb

settings.register_profile("suite", max_examples=30, deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def disk():
    return sb.build_circle(0, 1)


@pytest.fixture(scope="session")
def disk_grid(disk):
    return sb.sample(disk, 512)


@pytest.fixture(scope="session")
def cardioid():
    # image of the unit circle under zeta + 0.3 zeta^2
    return sb.build_polynomial_curve([0, 1, 0.3], 0.7)


@pytest.fixture(scope="session")
def cardioid_grid(cardioid):
    return sb.sample(cardioid, 1024)


@pytest.fixture(scope="session")
def unit_square():
    return sb.build_polygon([0, 1, 1 + 1j, 1j])
