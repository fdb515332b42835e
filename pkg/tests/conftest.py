import sys
from pathlib import Path

import numpy as np
import pytest

from ordconcave import GroundSet, SetFunction, corpus, load_fixture

sys.path.insert(0, str(Path(__file__).parent))


def table_function(labels, values) -> SetFunction:
    """Function from values listed in bitmask order."""
    return SetFunction(GroundSet(labels), [float(v) for v in values])


@pytest.fixture(scope="session")
def wonly():
    return load_fixture("wconcave_only")


@pytest.fixture(scope="session")
def lex_pair():
    return load_fixture("lex_u1"), load_fixture("lex_u2")


@pytest.fixture
def abc():
    return GroundSet.of_size(3)


@pytest.fixture(scope="session")
def wconcave_corpus():
    """RejectionWConcave functions, n = 3 and 4."""
    return corpus("rejection-w-concave", 3, 60) + corpus("rejection-w-concave", 4, 60)


@pytest.fixture(scope="session")
def concave_corpus():
    """RejectionConcave functions, n = 3 and 4."""
    return corpus("rejection-concave", 3, 40) + corpus("rejection-concave", 4, 20)


@pytest.fixture(scope="session")
def concave_um_corpus():
    """RejectionConcaveUM functions, n = 3 and 4."""
    return corpus("rejection-concave-um", 3, 75) + corpus("rejection-concave-um", 4, 30)


@pytest.fixture(scope="session")
def random_corpus():
    """RandomTable functions, n = 2..4, some with holes punched into the domain."""
    out = []
    for n, count in ((2, 60), (3, 90), (4, 90)):
        out += corpus("random-table", n, count)
    rng = np.random.default_rng(2024)
    holed = []
    for u in out[::3]:
        vals = u.values.copy()
        mask = rng.random(len(vals)) < 0.25
        mask[rng.integers(len(vals))] = False
        vals[mask] = -np.inf
        holed.append(SetFunction(u.ground, vals))
    return out + holed


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
