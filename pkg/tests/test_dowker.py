import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_fixture_networks
from oracles import oracle_dowker_beta
from pathpers.dowker import dowker_diagram, dowker_sink_filtration, simplex_boundary
from pathpers.network import cycle_network, random_network, transpose
from pathpers.persistence import PersistenceDiagram, RankFunction, diagram, ppd


def test_fig4_dowker_differs_from_path(fig4):
    assert dowker_diagram(fig4, 1) == PersistenceDiagram(1, ((4, 6),))
    assert ppd(fig4, 1) != dowker_diagram(fig4, 1)


@pytest.mark.parametrize("n", [3, 5, 8])
def test_cycle_networks(n):
    assert dowker_diagram(cycle_network(n), 1) == PersistenceDiagram(1, ((1, math.ceil(n / 2)),))


def test_simplex_boundary_signs():
    assert simplex_boundary((0, 1, 2)) == {(1, 2): 1, (0, 2): -1, (0, 1): 1}
    assert simplex_boundary((3,)) == {}


@given(st.integers(2, 5), st.integers(0, 2**40))
@settings(max_examples=25, deadline=None)
def test_filtration_is_valid(n, seed):
    net = random_network(n, seed)
    filt = dowker_sink_filtration(net, max_dim=2)
    filt.validate()
    values = filt.values()
    assert all(values[(v,)] == 0 for v in range(n))
    top = tuple(range(min(n, 4)))
    assert values[top] <= net.max_weight()
    assert len(filt.skeleton(1, net.max_weight())) == n * (n - 1) // 2


def test_rejects_negative_dim():
    with pytest.raises(ValueError):
        dowker_sink_filtration(cycle_network(3), -1)


@given(st.integers(2, 5), st.integers(0, 2**40))
@settings(max_examples=20, deadline=None)
def test_transpose_gives_same_one_dim_diagram(n, seed):
    net = random_network(n, seed)
    assert dowker_diagram(transpose(net), 1) == dowker_diagram(net, 1)


def test_matches_oracle_on_fixtures():
    for net in small_fixture_networks():
        for p in (0, 1):
            grid, beta = oracle_dowker_beta(net, p)
            expected = diagram(RankFunction(p, tuple(grid), tuple(map(tuple, beta))))
            assert dowker_diagram(net, p) == expected, (net, p)
