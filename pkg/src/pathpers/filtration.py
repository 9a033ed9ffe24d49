"""Digraph filtration of a network over its critical values."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .network import Digraph, Network, to_fraction


def critical_values(net: Network) -> list[Fraction]:
    """Sorted distinct off-diagonal weights, preceded by 0."""
    return [Fraction(0)] + sorted(set(net.off_diagonal()))


def digraph_at(net: Network, delta) -> Digraph:
    """Edges ``(i, j)``, ``i != j``, with weight at most ``delta``."""
    delta = to_fraction(delta)
    if delta < 0:
        raise ValueError("filtration parameter must be nonnegative")
    n = net.n
    w = net.weights
    return Digraph(n, frozenset((i, j) for i in range(n) for j in range(n) if i != j and w[i][j] <= delta))


@dataclass(frozen=True)
class Filtration:
    net: Network
    critical_values: tuple[Fraction, ...]

    @classmethod
    def of(cls, net: Network) -> "Filtration":
        return cls(net, tuple(critical_values(net)))

    def __len__(self) -> int:
        return len(self.critical_values)

    def digraph(self, index: int) -> Digraph:
        return digraph_at(self.net, self.critical_values[index])

    def digraphs(self) -> list[Digraph]:
        return [self.digraph(k) for k in range(len(self))]
