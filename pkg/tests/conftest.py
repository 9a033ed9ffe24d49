import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pathpers.network import Digraph, Network, cycle_network, random_network  # noqa: E402

ACCEPTANCE_LINES: list[str] = []

# Network of the four-node figure: path diagram {(4, 5)}, Dowker diagram {(4, 6)}
FIG4_MATRIX = [[0, 9, 11, 5], [8, 0, 6, 1], [2, 4, 0, 10], [3, 7, 6, 0]]


@pytest.fixture
def fig4():
    return Network.from_matrix(FIG4_MATRIX)


@pytest.fixture
def bifan():
    # a=0, b=1, c=2, d=3: a->b, c->b, a->d, c->d
    return Digraph.from_edges(4, [(0, 1), (2, 1), (0, 3), (2, 3)])


@pytest.fixture
def biparallel():
    # w=0, x=1, y=2, z=3: w->x->y, w->z->y
    return Digraph.from_edges(4, [(0, 1), (1, 2), (0, 3), (3, 2)])


def small_fixture_networks():
    """Hand-picked networks with n <= 4 used for oracle comparisons."""
    nets = [
        Network.from_matrix([[0]]),
        Network.from_matrix([[0, 1], [2, 0]]),
        Network.from_matrix([[0, 1], [1, 0]]),
        cycle_network(3),
        cycle_network(4),
        Network.from_matrix(FIG4_MATRIX),
        Network.from_matrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]]),
        Network.from_matrix([[0, 1, 3], [2, 0, 1], [1, 3, 0]]),
        Network.from_matrix([[0, 1, 2, 1], [2, 0, 1, 3], [1, 2, 0, 1], [3, 1, 2, 0]]),
        Network.from_matrix([[0, 1, 5, 5], [5, 0, 1, 5], [5, 5, 0, 1], [1, 5, 5, 0]]),
    ]
    nets += [random_network(n, seed) for n in (2, 3, 4) for seed in (11, 12)]
    return nets


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
