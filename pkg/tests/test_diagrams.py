import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_bottleneck
from pathpers.diagrams import bottleneck, bottleneck_matching, bottleneck_matrix, diagrams_equal
from pathpers.persistence import INF, PersistenceDiagram

values = st.integers(0, 12).map(lambda k: Fraction(k, 2))


@st.composite
def diagrams(draw, max_points=5, essential=True):
    pts = []
    for _ in range(draw(st.integers(0, max_points))):
        b = draw(values)
        d = b + draw(st.integers(1, 8).map(lambda k: Fraction(k, 2)))
        pts.append((b, d))
    if essential:
        pts += [(draw(values), INF) for _ in range(draw(st.integers(0, 2)))]
    return PersistenceDiagram(1, tuple(pts))


def test_figure_pair():
    assert bottleneck(PersistenceDiagram(1, ((4, 5),)), PersistenceDiagram(1, ((4, 6),))) == 1


def test_empty_and_identity():
    empty = PersistenceDiagram(1)
    assert bottleneck(empty, empty) == 0
    one = PersistenceDiagram(1, ((1, 4),))
    assert bottleneck(one, empty) == Fraction(3, 2)


def test_essential_counts():
    a = PersistenceDiagram(0, ((0, INF),))
    b = PersistenceDiagram(0, ((0, INF), (1, INF)))
    assert bottleneck(a, b) == math.inf
    assert bottleneck(a, PersistenceDiagram(0, ((2, INF),))) == 2


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        bottleneck(PersistenceDiagram(0), PersistenceDiagram(1))
    with pytest.raises(ValueError):
        diagrams_equal(PersistenceDiagram(0), PersistenceDiagram(1))
    with pytest.raises(ValueError):
        bottleneck_matrix([PersistenceDiagram(0), PersistenceDiagram(1)])


def test_diagrams_equal_respects_multiplicity():
    a = PersistenceDiagram(1, ((1, 3),))
    assert diagrams_equal(a, a)
    assert not diagrams_equal(a, PersistenceDiagram(1, ((1, 3), (1, 3))))


@given(diagrams())
@settings(max_examples=80, deadline=None)
def test_self_distance_zero(d):
    assert bottleneck(d, d) == 0


@given(diagrams(), diagrams())
@settings(max_examples=200, deadline=None)
def test_matches_brute_force(a, b):
    assert bottleneck(a, b) == brute_bottleneck(a.pairs(), b.pairs())
    assert bottleneck(a, b) == bottleneck(b, a)


@given(diagrams(4), diagrams(4), diagrams(4))
@settings(max_examples=80, deadline=None)
def test_triangle_inequality(a, b, c):
    assert bottleneck(a, c) <= bottleneck(a, b) + bottleneck(b, c)


@given(diagrams(essential=False), diagrams(essential=False))
@settings(max_examples=80, deadline=None)
def test_matching_realizes_cost(a, b):
    m = bottleneck_matching(a, b)
    used_a = [p for p, _ in m.pairs if p is not None]
    used_b = [q for _, q in m.pairs if q is not None]
    assert sorted(used_a) == sorted(a.finite())
    assert sorted(used_b) == sorted(b.finite())
    worst = Fraction(0)
    for p, q in m.pairs:
        if p is None:
            worst = max(worst, (q[1] - q[0]) / 2)
        elif q is None:
            worst = max(worst, (p[1] - p[0]) / 2)
        else:
            worst = max(worst, abs(p[0] - q[0]), abs(p[1] - q[1]))
    assert worst == m.cost


def test_matrix_shapes():
    d = PersistenceDiagram(1, ((1, 2),))
    assert bottleneck_matrix([d]) == [[0]]
    assert bottleneck_matrix([d, d]) == [[0, 0], [0, 0]]
    e = PersistenceDiagram(1, ((1, 3),))
    m = bottleneck_matrix([d, e, PersistenceDiagram(1)])
    assert m == [[0, 1, Fraction(1, 2)], [1, 0, 1], [Fraction(1, 2), 1, 0]]
