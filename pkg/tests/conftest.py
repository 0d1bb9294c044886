import sys

import pytest

from nestlab.building import BuildingSet
from nestlab.om import A_CIRC, OrientedMatroid

B_CIRC_BLOCKS = ["1", "2", "3", "4", "5", "6", "12", "14", "25", "123", "124", "125", "456", "1234",
                 "1235", "1245", "1456", "2456", "12345", "12456", "123456"]


def fs(s):
    return frozenset(s)


def sstr(x):
    """Block label as a compact string, e.g. frozenset({'2', '5'}) -> '25'."""
    return "".join(sorted(map(str, x)))


def complex_strings(C):
    return {frozenset(sstr(x) for x in f) for f in C.facets}


@pytest.fixture(scope="session")
def m_circ():
    return OrientedMatroid.from_config(A_CIRC)


@pytest.fixture(scope="session")
def b_circ():
    return BuildingSet.boolean([str(i) for i in range(1, 7)], [fs(b) for b in B_CIRC_BLOCKS])


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
