"""Dowker sink filtrations and their persistence diagrams.

A simplex ``{x_0, ..., x_k}`` enters at ``min_w max_i A(x_i, w)``: the
smallest threshold at which some witness ``w`` receives an arrow from every
vertex.  The source convention gives the same diagrams by Dowker duality.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .filtration import critical_values
from .linalg import combine, nullspace
from .network import Network
from .persistence import (
    DEFAULT_MAX_DIM,
    PersistenceDiagram,
    RankFunction,
    _check_dim,
    compute_rank_table,
    diagram,
)

Simplex = tuple


def simplex_boundary(simplex: Simplex) -> dict:
    if len(simplex) == 1:
        return {}
    return {simplex[:i] + simplex[i + 1 :]: Fraction(-1 if i % 2 else 1) for i in range(len(simplex))}


@dataclass(frozen=True)
class SimplicialFiltration:
    """Simplices (sorted vertex tuples) with entry values, sorted by value then dimension."""

    simplices: tuple[tuple[Simplex, Fraction], ...]

    def values(self) -> dict:
        return dict(self.simplices)

    def validate(self) -> None:
        value = self.values()
        for simplex, v in self.simplices:
            for face in simplex_boundary(simplex):
                if face not in value:
                    raise ValueError(f"face {face} of {simplex} is missing")
                if value[face] > v:
                    raise ValueError(f"face {face} enters after coface {simplex}")

    def skeleton(self, k: int, delta) -> list[Simplex]:
        """k-simplices present at threshold ``delta``, in lexicographic order."""
        return sorted(s for s, v in self.simplices if len(s) == k + 1 and v <= delta)


def dowker_sink_filtration(net: Network, max_dim: int = 1) -> SimplicialFiltration:
    """Sink Dowker filtration with simplices up to dimension ``max_dim + 1``."""
    if max_dim < 0:
        raise ValueError("max_dim must be nonnegative")
    n = net.n
    w = net.weights
    entries = []
    for k in range(1, min(n, max_dim + 2) + 1):
        for simplex in combinations(range(n), k):
            value = min(max(w[x][wit] for x in simplex) for wit in range(n))
            entries.append((simplex, value))
    entries.sort(key=lambda e: (e[1], len(e[0]), e[0]))
    return SimplicialFiltration(tuple(entries))


def dowker_rank_function(net: Network, p: int, max_dim: int = DEFAULT_MAX_DIM) -> RankFunction:
    _check_dim(p, max_dim)
    filt = dowker_sink_filtration(net, max_dim=p)
    grid = critical_values(net)

    def cycles_at(i):
        simplices = filt.skeleton(p, grid[i])
        if p == 0:
            return [{s: Fraction(1)} for s in simplices]
        units = [{s: Fraction(1)} for s in simplices]
        kernel = nullspace([simplex_boundary(s) for s in simplices])
        return [combine(coeffs, units) for coeffs in kernel]

    def boundaries_at(j):
        return [simplex_boundary(s) for s in filt.skeleton(p + 1, grid[j])]

    beta = compute_rank_table(len(grid), cycles_at, boundaries_at)
    return RankFunction(p, tuple(grid), tuple(tuple(row) for row in beta))


def dowker_diagram(net: Network, p: int, max_dim: int = DEFAULT_MAX_DIM) -> PersistenceDiagram:
    """p-dimensional Dowker persistence diagram, on the same grid as the path diagram."""
    return diagram(dowker_rank_function(net, p, max_dim=max_dim))
