"""Network distance by exhaustive search, distortion, and single linkage.

Both network-distance routines are exact: weights are rescaled to integers
over a common denominator before the vectorized enumeration.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .network import Network, format_number, parse_number, to_fraction

DEFAULT_SIZE_CAP = 4
INF = math.inf


@dataclass(frozen=True)
class Correspondence:
    """A relation between ``range(nx)`` and ``range(ny)`` projecting onto both."""

    nx: int
    ny: int
    pairs: frozenset

    def __post_init__(self):
        pairs = frozenset((int(i), int(j)) for i, j in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if {i for i, _ in pairs} != set(range(self.nx)) or {j for _, j in pairs} != set(range(self.ny)):
            raise ValueError("relation does not project onto both vertex sets")
        for i, j in pairs:
            if not (0 <= i < self.nx and 0 <= j < self.ny):
                raise ValueError(f"pair ({i}, {j}) out of range")

    @classmethod
    def identity(cls, n: int) -> "Correspondence":
        return cls(n, n, frozenset((i, i) for i in range(n)))

    @classmethod
    def from_maps(cls, phi: Sequence[int], psi: Sequence[int]) -> "Correspondence":
        """Union of the graph of ``phi: X -> Y`` and the transposed graph of ``psi: Y -> X``."""
        pairs = {(x, y) for x, y in enumerate(phi)} | {(x, y) for y, x in enumerate(psi)}
        return cls(len(phi), len(psi), frozenset(pairs))


def distortion(r: Correspondence, x: Network, y: Network) -> Fraction:
    ax, ay = x.weights, y.weights
    return max(abs(ax[a][a2] - ay[b][b2]) for a, b in r.pairs for a2, b2 in r.pairs)


def map_distortion(phi: Sequence[int], x: Network, y: Network) -> Fraction:
    ax, ay = x.weights, y.weights
    n = len(phi)
    return max(abs(ax[a][b] - ay[phi[a]][phi[b]]) for a in range(n) for b in range(n))


def codistortion(phi: Sequence[int], psi: Sequence[int], x: Network, y: Network) -> Fraction:
    """``max |A_X(x, psi(y)) - A_Y(phi(x), y)|`` over ``(x, y)``."""
    ax, ay = x.weights, y.weights
    return max(abs(ax[a][psi[b]] - ay[phi[a]][b]) for a in range(x.n) for b in range(y.n))


def _check_cap(x: Network, y: Network, cap: int) -> None:
    if max(x.n, y.n) > cap:
        raise ValueError(
            f"exhaustive network distance is capped at {cap} vertices (got {x.n} and {y.n})"
        )


def _integer_weights(x: Network, y: Network):
    denom = 1
    for w in x.off_diagonal() + y.off_diagonal():
        denom = math.lcm(denom, w.denominator)
    big = max(x.max_weight(), y.max_weight()) * denom
    dtype = np.int64 if big < 2**62 else object
    ax = np.array([[int(w * denom) for w in row] for row in x.weights], dtype=dtype)
    ay = np.array([[int(w * denom) for w in row] for row in y.weights], dtype=dtype)
    return ax, ay, denom


def _all_maps(n_from: int, n_to: int) -> np.ndarray:
    return np.array(list(itertools.product(range(n_to), repeat=n_from)), dtype=np.intp).reshape(-1, n_from)


def network_distance_exact(x: Network, y: Network, cap: int = DEFAULT_SIZE_CAP) -> Fraction:
    """Half the least distortion over correspondences.

    Every correspondence contains one of the form graph(phi) U graph(psi)^T
    and distortion is monotone under inclusion, so those relations suffice.
    Distinct relations are deduplicated and scored directly.
    """
    _check_cap(x, y, cap)
    ax, ay, denom = _integer_weights(x, y)
    nx, ny = x.n, y.n
    # pair-of-pairs distortion table indexed by flattened (x, y) cells
    table = np.abs(ax[:, None, :, None] - ay[None, :, None, :]).reshape(nx * ny, nx * ny)
    phis = _all_maps(nx, ny)
    psis = _all_maps(ny, nx)
    graph_phi = np.zeros((len(phis), nx * ny), dtype=bool)
    for a in range(nx):
        graph_phi[np.arange(len(phis)), a * ny + phis[:, a]] = True
    graph_psi = np.zeros((len(psis), nx * ny), dtype=bool)
    for b in range(ny):
        graph_psi[np.arange(len(psis)), psis[:, b] * ny + b] = True
    masks = (graph_phi[:, None, :] | graph_psi[None, :, :]).reshape(-1, nx * ny)
    masks = np.unique(masks, axis=0)
    best = None
    for start in range(0, len(masks), 2048):
        chunk = masks[start : start + 2048]
        both = chunk[:, :, None] & chunk[:, None, :]
        scores = np.where(both, table[None], 0).max(axis=(1, 2))
        low = scores.min()
        best = low if best is None else min(best, low)
    return Fraction(int(best), 2 * denom)


def network_distance_maps(x: Network, y: Network, cap: int = DEFAULT_SIZE_CAP) -> Fraction:
    """Half the least ``max(dis phi, dis psi, C_XY, C_YX)`` over map pairs."""
    _check_cap(x, y, cap)
    ax, ay, denom = _integer_weights(x, y)
    phis = _all_maps(x.n, y.n)
    psis = _all_maps(y.n, x.n)
    dis_phi = np.abs(ax[None] - ay[phis[:, :, None], phis[:, None, :]]).max(axis=(1, 2))
    dis_psi = np.abs(ay[None] - ax[psis[:, :, None], psis[:, None, :]]).max(axis=(1, 2))
    # C_XY[phi, psi] = max |A_X(a, psi(b)) - A_Y(phi(a), b)|
    ax_psi = ax[:, psis].transpose(1, 0, 2)  # (psi, a, b)
    ay_phi = ay[phis, :]  # (phi, a, b)
    c_xy = np.abs(ay_phi[:, None] - ax_psi[None]).max(axis=(2, 3))
    # C_YX[psi, phi] = max |A_Y(b, phi(a)) - A_X(psi(b), a)|
    ay_phi2 = ay[:, phis].transpose(1, 0, 2)  # (phi, b, a)
    ax_psi2 = ax[psis, :]  # (psi, b, a)
    c_yx = np.abs(ay_phi2[:, None] - ax_psi2[None]).max(axis=(2, 3))
    total = np.maximum(np.maximum(dis_phi[:, None], dis_psi[None, :]), np.maximum(c_xy, c_yx))
    return Fraction(int(total.min()), 2 * denom)


# --- single linkage ------------------------------------------------------


@dataclass(frozen=True)
class Dendrogram:
    """Single-linkage merge tree.

    Leaves are clusters ``0..n-1``; merge ``k`` creates cluster ``n + k`` from
    ``(a, b, height)``.
    """

    leaves: tuple[str, ...]
    merges: tuple[tuple[int, int, object], ...]

    def __post_init__(self):
        n = len(self.leaves)
        if n and len(self.merges) != n - 1:
            raise ValueError(f"{n} leaves need {n - 1} merges, got {len(self.merges)}")
        used = set()
        last = None
        for k, (a, b, h) in enumerate(self.merges):
            for c in (a, b):
                if c in used or c >= n + k:
                    raise ValueError(f"merge {k} reuses or forward-references cluster {c}")
                used.add(c)
            if last is not None and h < last:
                raise ValueError("merge heights must be non-decreasing")
            last = h

    def heights(self) -> list:
        return [h for _, _, h in self.merges]

    def members(self) -> list[tuple[int, ...]]:
        """Leaf indices of every cluster id."""
        out = [(i,) for i in range(len(self.leaves))]
        for a, b, _ in self.merges:
            out.append(tuple(sorted(out[a] + out[b])))
        return out

    def _name(self, c: int) -> str:
        return self.leaves[c] if c < len(self.leaves) else f"c{c}"

    def to_tree(self) -> dict:
        n = len(self.leaves)

        def node(c):
            if c < n:
                return {"label": self.leaves[c]}
            a, b, h = self.merges[c - n]
            return {"height": format_number(h), "children": [node(a), node(b)]}

        return node(n + len(self.merges) - 1) if self.merges else node(0)

    def to_dict(self) -> dict:
        return {
            "leaves": list(self.leaves),
            "merges": [[a, b, format_number(h)] for a, b, h in self.merges],
            "tree": self.to_tree(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "Dendrogram":
        return cls(
            tuple(data["leaves"]),
            tuple((int(a), int(b), parse_number(str(h))) for a, b, h in data["merges"]),
        )

    def edge_list(self) -> str:
        n = len(self.leaves)
        lines = [
            f"{self._name(a)} {self._name(b)} {format_number(h)} {self._name(n + k)}"
            for k, (a, b, h) in enumerate(self.merges)
        ]
        return "\n".join(lines) + ("\n" if lines else "")


def _check_distance_matrix(dist) -> list[list]:
    rows = [[v if v == INF else to_fraction(v) for v in row] for row in dist]
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"distance matrix row {i} has {len(row)} entries, expected {n}")
        if row[i] != 0:
            raise ValueError(f"nonzero diagonal at {i}")
        for j, v in enumerate(row):
            if v < 0:
                raise ValueError(f"negative distance at ({i}, {j})")
            if v != rows[j][i]:
                raise ValueError(f"asymmetric distances at ({i}, {j})")
    return rows


def single_linkage(dist, labels: Sequence[str] | None = None) -> Dendrogram:
    """Single-linkage clustering of a symmetric distance matrix.

    Among equally close cluster pairs the one whose (smaller, larger)
    first-leaf indices is lexicographically smallest merges first.
    """
    rows = _check_distance_matrix(dist)
    n = len(rows)
    if labels is None:
        labels = [str(i + 1) for i in range(n)]
    if len(labels) != n:
        raise ValueError("one label per row is required")
    active = {i: [i] for i in range(n)}
    merges = []
    next_id = n
    while len(active) > 1:
        best = None
        ids = sorted(active, key=lambda c: min(active[c]))
        for ia, a in enumerate(ids):
            for b in ids[ia + 1 :]:
                d = min(rows[u][v] for u in active[a] for v in active[b])
                key = (d, min(active[a]), min(active[b]))
                if best is None or key < best[0]:
                    best = (key, a, b)
        (d, _, _), a, b = best
        merges.append((a, b, d))
        active[next_id] = active.pop(a) + active.pop(b)
        next_id += 1
    return Dendrogram(tuple(str(x) for x in labels), tuple(merges))


def cut_dendrogram(dend: Dendrogram, height) -> list[tuple[str, ...]]:
    """Clusters formed by merges at or below ``height``, ordered by first leaf."""
    height = to_fraction(height)
    if height < 0:
        raise ValueError("cut height must be nonnegative")
    n = len(dend.leaves)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    members = dend.members()
    for a, b, h in dend.merges:
        if h <= height:
            ra, rb = find(members[a][0]), find(members[b][0])
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [tuple(dend.leaves[i] for i in g) for _, g in sorted(groups.items())]
