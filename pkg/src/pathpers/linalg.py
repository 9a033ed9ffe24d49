"""Exact sparse linear algebra over the rationals.

Vectors are dicts mapping a sortable coordinate key (path tuples, simplex
tuples, or column indices) to a nonzero :class:`~fractions.Fraction`.  Every
boundary matrix in this package has integer entries, so ranks computed here
coincide with ranks over the reals.

An optional modular mode (``prime=...``) replaces Fractions by residues mod a
large prime.  Ranks computed that way are *probabilistic*: they can only
underestimate the rational rank.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Hashable, Iterable, Mapping

Vector = dict
DEFAULT_PRIME = 2_305_843_009_213_693_951  # 2**61 - 1


def _clean(vec: Mapping) -> dict:
    return {k: Fraction(c) for k, c in vec.items() if c}


def axpy(y: dict, a, x: Mapping) -> None:
    """In place ``y += a * x``, dropping entries that cancel."""
    for k, c in x.items():
        v = y.get(k, 0) + a * c
        if v:
            y[k] = v
        else:
            y.pop(k, None)


def combine(coeffs: Mapping, vectors: Mapping) -> dict:
    """Return ``sum(coeffs[k] * vectors[k])``."""
    out: dict = {}
    for k, a in coeffs.items():
        axpy(out, a, vectors[k])
    return out


def rref(rows: Iterable[Mapping]) -> list[dict]:
    """Reduced row echelon form of the span of ``rows``.

    Rows are returned sorted by pivot (their smallest key), each with pivot
    coefficient 1 and zeros in every other row's pivot column.  The result is
    unique for the subspace and the key ordering.
    """
    work: dict[int, dict] = {}
    heap: list = []
    for idx, row in enumerate(rows):
        v = _clean(row)
        if v:
            work[idx] = v
            heap.append((min(v), idx))
    heapq.heapify(heap)
    echelon: list[tuple[Hashable, dict]] = []
    while heap:
        lead, idx = heapq.heappop(heap)
        piv = work.pop(idx)
        inv = 1 / piv[lead]
        if inv != 1:
            piv = {k: c * inv for k, c in piv.items()}
        # every other row whose leading key equals ``lead`` sits on top of the heap
        while heap and heap[0][0] == lead:
            _, other_idx = heapq.heappop(heap)
            other = work[other_idx]
            axpy(other, -other[lead], piv)
            if other:
                heapq.heappush(heap, (min(other), other_idx))
            else:
                del work[other_idx]
        echelon.append((lead, piv))
    # back substitution, last pivot first
    for r in range(len(echelon) - 1, 0, -1):
        lead, piv = echelon[r]
        for q in range(r):
            row = echelon[q][1]
            c = row.get(lead)
            if c:
                axpy(row, -c, piv)
    return [row for _, row in echelon]


def rank(rows: Iterable[Mapping]) -> int:
    ech = Echelon()
    return sum(1 for row in rows if ech.add(row))


def nullspace(columns: list[Mapping]) -> list[dict]:
    """Basis of ``{x : sum_k x[k] * columns[k] = 0}`` as dicts keyed by column index.

    The basis is returned in reduced row echelon form with respect to the
    column order.
    """
    rows: dict = {}
    for k, col in enumerate(columns):
        for r, c in col.items():
            if c:
                rows.setdefault(r, {})[k] = c
    reduced = rref(rows.values())
    pivots = {min(row): row for row in reduced}
    basis = []
    for f in range(len(columns)):
        if f in pivots:
            continue
        vec = {f: Fraction(1)}
        for p, row in pivots.items():
            c = row.get(f)
            if c:
                vec[p] = -c
        basis.append(vec)
    return rref(basis)


class Echelon:
    """Incrementally maintained echelon basis (pivot = smallest key).

    ``add`` reports whether a vector is independent of those already added.
    With ``prime`` set, arithmetic is done modulo that prime (probabilistic rank).
    """

    __slots__ = ("pivots", "prime")

    def __init__(self, prime: int | None = None):
        self.pivots: dict = {}
        self.prime = prime

    def __len__(self) -> int:
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def copy(self) -> "Echelon":
        out = Echelon(self.prime)
        out.pivots = dict(self.pivots)
        return out

    def reduce(self, vec: Mapping) -> dict:
        p = self.prime
        if p is None:
            v = _clean(vec)
        else:
            v = {}
            for k, c in vec.items():
                c = _to_mod(c, p)
                if c:
                    v[k] = c
        pivots = self.pivots
        while v:
            lead = min(v)
            row = pivots.get(lead)
            if row is None:
                return v
            a = v[lead]
            if p is None:
                axpy(v, -a, row)
            else:
                for k, c in row.items():
                    x = (v.get(k, 0) - a * c) % p
                    if x:
                        v[k] = x
                    else:
                        v.pop(k, None)
        return v

    def add(self, vec: Mapping) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        lead = min(v)
        a = v[lead]
        if self.prime is None:
            if a != 1:
                inv = 1 / a
                v = {k: c * inv for k, c in v.items()}
        else:
            inv = pow(a, -1, self.prime)
            v = {k: c * inv % self.prime for k, c in v.items()}
        self.pivots[lead] = v
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)


def _to_mod(c, p: int) -> int:
    if isinstance(c, Fraction):
        return c.numerator * pow(c.denominator, -1, p) % p
    return int(c) % p
