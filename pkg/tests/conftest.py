import pytest

from cfprime import experiments


@pytest.fixture(scope="session")
def ak_100k():
    return experiments.scan_Ak(10, 100_000)


@pytest.fixture(scope="session")
def l0_100k():
    return experiments.scan_L0(100_000)


@pytest.fixture(scope="session")
def l1_100k():
    return experiments.scan_L1(100_000)
