"""Persistent path homology via rank functions.

For a filtered chain complex indexed by a grid ``d_0 < ... < d_m`` the rank
of ``H_p(level i) -> H_p(level j)`` equals ``dim(Z_i + B_j) - dim B_j`` when
cycles of level ``i`` and boundaries of level ``j`` are written in a common
ambient basis.  Allowed paths at level ``i`` are allowed at level ``j``, so
path coordinates serve as that basis and no induced-map matrices are needed.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .filtration import Filtration
from .linalg import Echelon
from .network import Network, format_number, parse_number, to_fraction
from .paths import boundary, cycle_basis, omega_basis

INF = math.inf
DEFAULT_MAX_DIM = 2


class RankFunctionError(RuntimeError):
    """A rank table that cannot come from a persistent vector space."""


@dataclass(frozen=True)
class RankFunction:
    """``beta[i][j]`` is the rank of the map from level ``i`` to level ``j`` (``i <= j``)."""

    p: int
    grid: tuple[Fraction, ...]
    beta: tuple[tuple[int, ...], ...]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if i > j:
            raise IndexError("rank function is only defined for i <= j")
        return self.beta[i][j]

    def betti(self) -> list[int]:
        return [self.beta[i][i] for i in range(len(self.grid))]


def _point_key(point):
    return (point[0], point[1])


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of (birth, death) pairs in one homology dimension.

    ``points`` holds ``(birth, death, multiplicity)`` triples sorted by
    (birth, death) with equal pairs merged; essential classes have
    ``death == math.inf``.
    """

    dim: int
    points: tuple = field(default=())

    def __post_init__(self):
        merged: dict = {}
        for point in self.points:
            if len(point) == 2:
                b, d, mult = point[0], point[1], 1
            else:
                b, d, mult = point
            b = to_fraction(b)
            d = INF if d == INF else to_fraction(d)
            if mult <= 0:
                raise ValueError("multiplicities must be positive")
            if not b < d:
                raise ValueError(f"point ({b}, {d}) is not above the diagonal")
            merged[(b, d)] = merged.get((b, d), 0) + int(mult)
        canon = tuple(sorted(((b, d, m) for (b, d), m in merged.items()), key=_point_key))
        object.__setattr__(self, "points", canon)

    def __len__(self) -> int:
        return sum(m for _, _, m in self.points)

    def __iter__(self):
        for b, d, m in self.points:
            for _ in range(m):
                yield (b, d)

    def pairs(self) -> list[tuple]:
        return list(self)

    def finite(self) -> list[tuple]:
        return [pt for pt in self if pt[1] != INF]

    def essential(self) -> list[Fraction]:
        return [b for b, d in self if d == INF]

    def scaled(self, factor) -> "PersistenceDiagram":
        factor = to_fraction(factor)
        return PersistenceDiagram(
            self.dim, tuple((b * factor, d if d == INF else d * factor, m) for b, d, m in self.points)
        )

    def to_dict(self) -> dict:
        return {
            "dimension": self.dim,
            "points": [[format_number(b), format_number(d), m] for b, d, m in self.points],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PersistenceDiagram":
        pts = []
        for b, d, m in data["points"]:
            pts.append((parse_number(str(b)), parse_number(str(d)), int(m)))
        return cls(int(data["dimension"]), tuple(pts))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> "PersistenceDiagram":
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        body = ", ".join(
            f"({format_number(b)}, {format_number(d)})" + (f"x{m}" if m > 1 else "")
            for b, d, m in self.points
        )
        return f"PersistenceDiagram(dim={self.dim}, [{body}])"


def compute_rank_table(
    n_levels: int,
    cycles_at: Callable[[int], Iterable[dict]],
    boundaries_at: Callable[[int], Iterable[dict]],
    prime: int | None = None,
) -> list[list[int]]:
    """Rank table of a filtered chain complex given per-level spanning sets.

    ``cycles_at(i)`` spans the cycles of level ``i`` and ``boundaries_at(j)``
    spans the boundaries of level ``j``; both must be nested in the level.
    Each callback is invoked once per level.
    """
    cycles = Echelon(prime)
    zvecs: list[dict] = []
    births: list[int] = []
    for i in range(n_levels):
        for vec in cycles_at(i):
            reduced = cycles.reduce(vec)
            if reduced:
                cycles.add(reduced)
                zvecs.append(reduced)
                births.append(i)
    beta = [[0] * n_levels for _ in range(n_levels)]
    bounds = Echelon(prime)
    for j in range(n_levels):
        for vec in boundaries_at(j):
            bounds.add(vec)
        ech = bounds.copy()
        count = 0
        k = 0
        for i in range(j + 1):
            while k < len(zvecs) and births[k] <= i:
                if ech.add(zvecs[k]):
                    count += 1
                k += 1
            beta[i][j] = count
    return beta


def diagram(rf: RankFunction) -> PersistenceDiagram:
    """Inclusion-exclusion of the rank table into births and deaths."""
    beta = rf.beta
    grid = rf.grid
    m = len(grid) - 1

    def b(i, j):
        return 0 if i < 0 else beta[i][j]

    points = []
    for i in range(m + 1):
        born = 0
        for j in range(i + 1, m + 1):
            mu = (b(i, j - 1) - b(i, j)) - (b(i - 1, j - 1) - b(i - 1, j))
            if mu < 0:
                raise RankFunctionError(f"negative multiplicity {mu} at ({i}, {j})")
            if mu:
                points.append((grid[i], grid[j], mu))
            born += mu
        ess = b(i, m) - b(i - 1, m)
        if ess < 0:
            raise RankFunctionError(f"negative essential multiplicity at {i}")
        if ess:
            points.append((grid[i], INF, ess))
        if born + ess != b(i, i) - b(i - 1, i):
            raise RankFunctionError(f"births at index {i} are not conserved")
    return PersistenceDiagram(rf.p, tuple(points))


def _check_dim(p: int, max_dim: int) -> None:
    if p < 0:
        raise ValueError("homology dimension must be nonnegative")
    if p > max_dim:
        raise ValueError(f"dimension {p} exceeds the configured cap {max_dim}")


def rank_function(
    net: Network, p: int, max_dim: int = DEFAULT_MAX_DIM, prime: int | None = None
) -> RankFunction:
    """Rank function of p-dimensional persistent path homology of ``net``."""
    _check_dim(p, max_dim)
    filt = Filtration.of(net)
    digraphs = filt.digraphs()

    def cycles_at(i):
        return cycle_basis(omega_basis(digraphs[i], p))

    def boundaries_at(j):
        return [boundary(vec) for vec in omega_basis(digraphs[j], p + 1).basis]

    beta = compute_rank_table(len(filt), cycles_at, boundaries_at, prime)
    return RankFunction(p, filt.critical_values, tuple(tuple(row) for row in beta))


def ppd(net: Network, p: int, max_dim: int = DEFAULT_MAX_DIM, prime: int | None = None) -> PersistenceDiagram:
    """p-dimensional path persistence diagram of ``net``."""
    return diagram(rank_function(net, p, max_dim=max_dim, prime=prime))


def diagrams_from_pairs(dim: int, pairs: Sequence[tuple]) -> PersistenceDiagram:
    return PersistenceDiagram(dim, tuple(pairs))
