"""Comparing persistence diagrams: equality, bottleneck distance, matrices."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .persistence import INF, PersistenceDiagram

DIAGONAL = None


@dataclass(frozen=True)
class Matching:
    """Pairs ``(a, b)`` where either side may be ``None`` (the diagonal)."""

    pairs: tuple
    cost: Fraction | float


def _check_same_dim(a: PersistenceDiagram, b: PersistenceDiagram) -> None:
    if a.dim != b.dim:
        raise ValueError(f"diagrams have different dimensions ({a.dim} vs {b.dim})")


def diagrams_equal(a: PersistenceDiagram, b: PersistenceDiagram) -> bool:
    _check_same_dim(a, b)
    return a.points == b.points


def sup_dist(a: tuple, b: tuple):
    db = abs(a[0] - b[0])
    if a[1] == INF or b[1] == INF:
        dd = 0 if a[1] == b[1] else INF
    else:
        dd = abs(a[1] - b[1])
    return max(db, dd)


def half_persistence(point: tuple):
    b, d = point
    return INF if d == INF else (d - b) / 2


def _perfect_matching(adj: list[list[int]], n_right: int) -> list[int] | None:
    """Kuhn's augmenting paths; returns match of each left vertex or None."""
    match_right = [-1] * n_right
    match_left = [-1] * len(adj)

    def augment(u, seen):
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] < 0 or augment(match_right[v], seen):
                match_right[v] = u
                match_left[u] = v
                return True
        return False

    for u in range(len(adj)):
        if not augment(u, [False] * n_right):
            return None
    return match_left


def _finite_matching(a: list, b: list, eps) -> list[int] | None:
    # left: a_0..a_{k-1}, then diagonal copies for b; right: b_0..b_{l-1}, then copies for a
    k, l = len(a), len(b)
    adj: list[list[int]] = []
    for i, pa in enumerate(a):
        row = [j for j, pb in enumerate(b) if sup_dist(pa, pb) <= eps]
        if half_persistence(pa) <= eps:
            row.append(l + i)
        adj.append(row)
    for j, pb in enumerate(b):
        row = [j] if half_persistence(pb) <= eps else []
        row.extend(l + i for i in range(k))
        adj.append(row)
    return _perfect_matching(adj, k + l)


def bottleneck_matching(a: PersistenceDiagram, b: PersistenceDiagram) -> Matching:
    """Optimal matching under the sup-norm, with the diagonal as a free partner."""
    _check_same_dim(a, b)
    ess_a, ess_b = sorted(a.essential()), sorted(b.essential())
    fin_a, fin_b = a.finite(), b.finite()
    pairs = []
    if len(ess_a) != len(ess_b):
        return Matching((), INF)
    ess_cost = Fraction(0)
    for x, y in zip(ess_a, ess_b):
        ess_cost = max(ess_cost, abs(x - y))
        pairs.append(((x, INF), (y, INF)))
    candidates = {Fraction(0)}
    candidates.update(sup_dist(p, q) for p in fin_a for q in fin_b)
    candidates.update(half_persistence(p) for p in fin_a)
    candidates.update(half_persistence(q) for q in fin_b)
    cands = sorted(candidates)
    # the largest candidate always admits the all-to-diagonal matching
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _finite_matching(fin_a, fin_b, cands[mid]) is None:
            lo = mid + 1
        else:
            hi = mid
    fin_cost = cands[lo]
    best = _finite_matching(fin_a, fin_b, fin_cost)
    k, l = len(fin_a), len(fin_b)
    for i in range(k):
        j = best[i]
        pairs.append((fin_a[i], fin_b[j] if j < l else DIAGONAL))
    for j in range(l):
        if best[k + j] == j:
            pairs.append((DIAGONAL, fin_b[j]))
    return Matching(tuple(pairs), max(fin_cost, ess_cost))


def bottleneck(a: PersistenceDiagram, b: PersistenceDiagram):
    """Exact bottleneck distance; ``math.inf`` if essential counts differ."""
    return bottleneck_matching(a, b).cost


def bottleneck_matrix(diagrams: Sequence[PersistenceDiagram]) -> list[list]:
    dims = {d.dim for d in diagrams}
    if len(dims) > 1:
        raise ValueError(f"diagrams span several dimensions: {sorted(dims)}")
    n = len(diagrams)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            out[i][j] = out[j][i] = bottleneck(diagrams[i], diagrams[j])
    return out
