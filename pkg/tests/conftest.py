import pytest

from arrtop.fixtures import get_fixture
from arrtop.pipeline import ArrangementAnalysis


@pytest.fixture(scope="session")
def analyses():
    """One shared ArrangementAnalysis per fixture; computations are cached
    on the instance, so expensive pieces (chart search, scans) run once."""
    cache = {}

    def get(name: str) -> ArrangementAnalysis:
        if name not in cache:
            _, obj = get_fixture(name)
            cache[name] = ArrangementAnalysis(obj)
        return cache[name]

    return get


@pytest.fixture(scope="session")
def falk_scan(analyses):
    """Order-3 depth tables for both Falk fibers (the expensive scans)."""
    out = {}
    for name in ("falk_A", "falk_A_prime"):
        a = analyses(name)
        out[name] = a.milnor_fiber.depth_table(3)
    return out
