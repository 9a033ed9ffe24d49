"""Dissimilarity networks: validation, generators, text I/O and transforms.

Weights are held as :class:`fractions.Fraction` so that critical values and
diagram coordinates are exact.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence, Union

Number = Union[int, str, Fraction]


class NetworkValidationError(ValueError):
    """Raised when a matrix violates the dissimilarity-network invariants."""

    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        if row is not None:
            where = f"row {row}" if col is None else f"row {row}, column {col}"
            message = f"{where}: {message}"
        super().__init__(message)
        self.row = row
        self.col = col


def to_fraction(value) -> Fraction:
    """Convert ``value`` to an exact Fraction.

    Strings are parsed as exact decimals (``"0.1"`` is ``1/10``) or ``p/q``.
    Floats are converted through ``repr`` so ``0.1`` also maps to ``1/10``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not weights")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        value = repr(value)
    if hasattr(value, "item") and not isinstance(value, str):
        # numpy scalar
        return to_fraction(value.item())
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational weight")


@dataclass(frozen=True)
class Network:
    """A finite set with a weight function vanishing exactly on the diagonal.

    ``weights[i][j]`` is the dissimilarity from ``labels[i]`` to ``labels[j]``.
    """

    labels: tuple[str, ...]
    weights: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if n == 0:
            raise NetworkValidationError("network must have at least one vertex")
        if len(set(self.labels)) != n:
            raise NetworkValidationError("labels must be pairwise distinct")
        if len(self.weights) != n:
            raise NetworkValidationError(
                f"expected {n} rows to match {n} labels, got {len(self.weights)}"
            )
        for i, row in enumerate(self.weights):
            if len(row) != n:
                raise NetworkValidationError(
                    f"matrix is not square: expected {n} entries, got {len(row)}", row=i
                )
            for j, w in enumerate(row):
                if not isinstance(w, Fraction):
                    raise NetworkValidationError("weights must be Fractions", i, j)
                if w < 0:
                    raise NetworkValidationError(f"negative entry {w}", i, j)
                if i == j and w != 0:
                    raise NetworkValidationError(f"nonzero diagonal entry {w}", i, j)
                if i != j and w == 0:
                    raise NetworkValidationError("zero off-diagonal entry", i, j)

    @classmethod
    def from_matrix(cls, matrix: Iterable[Iterable], labels: Sequence[str] | None = None):
        rows = []
        for i, row in enumerate(matrix):
            out = []
            for j, value in enumerate(row):
                try:
                    out.append(to_fraction(value))
                except (TypeError, ValueError, ZeroDivisionError) as exc:
                    raise NetworkValidationError(f"unparsable entry {value!r}", i, j) from exc
            rows.append(tuple(out))
        if labels is None:
            labels = default_labels(len(rows))
        return cls(tuple(str(label) for label in labels), tuple(rows))

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.weights[i][j]

    def off_diagonal(self) -> list[Fraction]:
        return [w for i, row in enumerate(self.weights) for j, w in enumerate(row) if i != j]

    def max_weight(self) -> Fraction:
        return max(self.off_diagonal(), default=Fraction(0))

    def relabel(self, perm: Sequence[int]) -> "Network":
        """Return the network whose vertex ``k`` is vertex ``perm[k]`` of this one."""
        labels = tuple(self.labels[p] for p in perm)
        weights = tuple(tuple(self.weights[a][b] for b in perm) for a in perm)
        return Network(labels, weights)


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"x{k + 1}" for k in range(n))


def transpose(net: Network) -> Network:
    n = net.n
    return Network(net.labels, tuple(tuple(net.weights[j][i] for j in range(n)) for i in range(n)))


def scale(net: Network, factor: Number) -> Network:
    factor = to_fraction(factor)
    if factor <= 0:
        raise ValueError(f"scale factor must be positive, got {factor}")
    return Network(net.labels, tuple(tuple(w * factor for w in row) for row in net.weights))


def cycle_network(n: int) -> Network:
    """Directed shortest-path distances on the unit-weight directed ``n``-cycle."""
    if n < 3:
        raise ValueError(f"cycle networks need n >= 3, got {n}")
    return Network(
        default_labels(n),
        tuple(tuple(Fraction((j - i) % n) for j in range(n)) for i in range(n)),
    )


_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    """xorshift64* generator (shifts 12/25/27, multiplier 0x2545F4914F6CDD1D).

    The state is seeded with ``splitmix64(seed mod 2**64)``; a zero state is
    replaced by the splitmix increment constant.
    """

    def __init__(self, seed: int):
        state = splitmix64(seed & _MASK64)
        self.state = state or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & _MASK64

    def uniform_dyadic(self) -> Fraction:
        """A draw from (0, 1] with denominator 2**32: ``(top32 + 1) / 2**32``."""
        return Fraction((self.next_u64() >> 32) + 1, 1 << 32)


def random_network(n: int, seed: int = 0) -> Network:
    """Off-diagonal weights drawn row-major from :class:`XorShift64Star`."""
    if n < 2:
        raise ValueError(f"random networks need n >= 2, got {n}")
    rng = XorShift64Star(seed)
    rows = []
    for i in range(n):
        rows.append(tuple(Fraction(0) if i == j else rng.uniform_dyadic() for j in range(n)))
    return Network(default_labels(n), tuple(rows))


def preprocess_use_table(raw, labels: Sequence[str] | None = None) -> Network:
    """Turn an economic use table into a dissimilarity network.

    The diagonal is dropped, each column is normalized to sum to one over its
    off-diagonal entries, and every entry ``x`` becomes ``1 - x``.
    """
    rows = [[to_fraction(v) for v in row] for row in raw]
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise NetworkValidationError("use table is not square", row=i)
        for j, v in enumerate(row):
            if v < 0:
                raise NetworkValidationError(f"negative entry {v}", i, j)
    out = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        total = sum((rows[k][j] for k in range(n) if k != j), Fraction(0))
        if total == 0:
            raise NetworkValidationError(
                f"column {j} has no off-diagonal mass; normalization undefined"
            )
        for i in range(n):
            if i == j:
                continue
            if rows[i][j] == total:
                raise NetworkValidationError(
                    "entry carries the whole column mass and would map to 0", i, j
                )
            out[i][j] = 1 - rows[i][j] / total
    if labels is None:
        labels = default_labels(n)
    return Network(tuple(str(x) for x in labels), tuple(tuple(r) for r in out))


# --- text format ---------------------------------------------------------

_SPLIT = re.compile(r"[,\s]+")


def format_number(value) -> str:
    """Exact text for a rational: integer, terminating decimal, or ``p/q``.

    Infinite values are written as ``inf``.
    """
    if isinstance(value, float):
        if value == float("inf"):
            return "inf"
        value = Fraction(value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{value.numerator}/{value.denominator}"
    digits = max(twos, fives)
    scaled = value * 10**digits
    sign = "-" if scaled < 0 else ""
    mag = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    return f"{sign}{mag[:-digits]}.{mag[-digits:]}"


def parse_number(token: str) -> Fraction | float:
    if token.strip().lower() in ("inf", "+inf"):
        return float("inf")
    return Fraction(token.strip())


def format_matrix(matrix: Sequence[Sequence], labels: Sequence[str] | None = None) -> str:
    lines = []
    if labels is not None:
        lines.append("labels: " + ",".join(labels))
    for row in matrix:
        lines.append(" ".join(format_number(v) for v in row))
    return "\n".join(lines) + "\n"


def format_network(net: Network) -> str:
    return format_matrix(net.weights, net.labels)


def parse_matrix(text: str) -> tuple[list[list[Fraction]], list[str] | None]:
    """Parse the matrix text format; returns (rows, labels or None).

    Raises :class:`NetworkValidationError` with 0-based positions.
    """
    labels = None
    rows: list[list[Fraction]] = []
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if lines and lines[0].lstrip().lower().startswith("labels:"):
        raw = lines.pop(0).split(":", 1)[1]
        labels = [s.strip() for s in raw.split(",") if s.strip()]
    for i, line in enumerate(lines):
        row = []
        for j, token in enumerate(t for t in _SPLIT.split(line.strip()) if t):
            try:
                row.append(Fraction(token))
            except (ValueError, ZeroDivisionError) as exc:
                raise NetworkValidationError(f"unparsable token {token!r}", i, j) from exc
        rows.append(row)
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise NetworkValidationError(
                f"matrix is not square: {n} rows but {len(row)} entries", row=i
            )
    if labels is not None and len(labels) != n:
        raise NetworkValidationError(f"{len(labels)} labels for a {n}x{n} matrix")
    return rows, labels


def load_network(path) -> Network:
    rows, labels = parse_matrix(Path(path).read_text())
    if not rows:
        raise NetworkValidationError(f"{path}: empty matrix")
    return Network.from_matrix(rows, labels)


def save_network(net: Network, path) -> None:
    Path(path).write_text(format_network(net))


@dataclass(frozen=True)
class Digraph:
    """Vertices ``0..n-1`` and a set of directed edges without self-loops."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if not isinstance(self.edges, frozenset):
            object.__setattr__(self, "edges", frozenset(self.edges))
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) out of range for {self.n} vertices")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Digraph":
        return cls(n, frozenset((int(i), int(j)) for i, j in edges))

    def successors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            out[i].append(j)
        for s in out:
            s.sort()
        return out

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Vertex ``v`` of this digraph becomes vertex ``perm[v]``."""
        return Digraph(self.n, frozenset((perm[i], perm[j]) for i, j in self.edges))
