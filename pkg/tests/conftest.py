import pytest

from hamsurf.charts import build_S, build_Sprime, build_V, load_default_charts
from hamsurf.cover import expand_to_radius
from hamsurf.hamgraph import moebius_ladder


@pytest.fixture(scope="session")
def chartdata():
    return load_default_charts()


@pytest.fixture(scope="session")
def V(chartdata):
    return build_V(chartdata)


@pytest.fixture(scope="session")
def S(chartdata):
    return build_S(chartdata)


@pytest.fixture(scope="session")
def Sprime(chartdata):
    return build_Sprime(chartdata)


@pytest.fixture(scope="session")
def ladder():
    return moebius_ladder()


@pytest.fixture(scope="session")
def ball1(V):
    return expand_to_radius(V, "P", 1)


@pytest.fixture(scope="session")
def ball2(V):
    return expand_to_radius(V, "P", 2)
