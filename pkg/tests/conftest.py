import pytest

from quarticstrata import strata
from quarticstrata.groebner import MonomialIdeal
from quarticstrata.poly import PolyRing

J6_GENS = [(2, 0, 0, 0), (1, 1, 0, 0), (0, 2, 0, 0), (1, 0, 1, 0), (0, 1, 2, 0), (0, 0, 3, 0)]


@pytest.fixture(scope="session")
def S():
    return PolyRing(["x0", "x1", "x2", "x3"])


@pytest.fixture(scope="session")
def J6():
    return MonomialIdeal(4, J6_GENS)


@pytest.fixture(scope="session")
def family(J6):
    return strata.groebner_family(J6)


@pytest.fixture(scope="session")
def stratum(family):
    L = strata.groebner_stratum(family)
    L.gb()
    return L


@pytest.fixture(scope="session")
def family_res(family, stratum):
    return strata.family_schreyer(family, stratum)


@pytest.fixture(scope="session")
def maps(family_res):
    return family_res.nonminimal_maps()


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
