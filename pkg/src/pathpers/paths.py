"""Path complexes of digraphs.

Elementary paths are tuples of vertex indices.  Chains are dicts from paths
to nonzero Fractions.  Irregular summands (a vertex repeated consecutively)
produced by the boundary are dropped, which realizes the regular boundary
without materializing the quotient by irregular paths.

``H_0`` is unreduced: the boundary of a 0-path is zero, so ``dim H_0`` is
the number of weakly connected components.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .linalg import Echelon, combine, nullspace, rref
from .network import Digraph

Path = tuple
ChainVector = dict


def is_regular(path: Path) -> bool:
    return all(a != b for a, b in zip(path, path[1:]))


def allowed_paths(g: Digraph, p: int) -> list[Path]:
    """All paths ``(x_0, ..., x_p)`` following edges of ``g``, in lexicographic order."""
    if p < 0:
        raise ValueError("path dimension must be nonnegative")
    layer = [(v,) for v in range(g.n)]
    succ = g.successors()
    for _ in range(p):
        layer = [path + (w,) for path in layer for w in succ[path[-1]]]
    return layer


def boundary(chain: Mapping[Path, object]) -> ChainVector:
    """Regular boundary of a chain of equal-length regular paths."""
    out: ChainVector = {}
    length = None
    for path, coeff in chain.items():
        if not coeff:
            continue
        if length is None:
            length = len(path)
        elif len(path) != length:
            raise ValueError("chain mixes paths of different lengths")
        if length == 1:
            continue
        for i in range(length):
            if 0 < i < length - 1 and path[i - 1] == path[i + 1]:
                continue
            face = path[:i] + path[i + 1 :]
            v = out.get(face, 0) + (coeff if i % 2 == 0 else -coeff)
            if v:
                out[face] = v
            else:
                out.pop(face, None)
    return {k: Fraction(v) for k, v in out.items()}


def path_boundary(path: Path) -> ChainVector:
    return boundary({path: 1})


@dataclass(frozen=True)
class OmegaBasis:
    """Canonical (RREF, lexicographic path order) basis of the invariant p-paths."""

    p: int
    allowed_paths: tuple[Path, ...]
    basis: tuple[ChainVector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def rows(self) -> list[list[Fraction]]:
        """Dense coordinate rows over ``allowed_paths``."""
        return [[vec.get(path, Fraction(0)) for path in self.allowed_paths] for vec in self.basis]

    def dump(self, labels=None) -> str:
        """Debug text: one line of paths, then one line of coefficients per basis row."""
        def name(path):
            if labels is None:
                return "-".join(str(v) for v in path)
            return "".join(str(labels[v]) for v in path)

        lines = [f"omega p={self.p} dim={self.dim}", "paths: " + " ".join(name(q) for q in self.allowed_paths)]
        for row in self.rows():
            lines.append(" ".join(str(c) for c in row))
        return "\n".join(lines) + "\n"


def omega_basis(g: Digraph, p: int) -> OmegaBasis:
    """Basis of the p-chains on allowed paths whose boundary is allowed."""
    paths = allowed_paths(g, p)
    if p <= 1:
        return OmegaBasis(p, tuple(paths), tuple({q: Fraction(1)} for q in paths))
    lower = set(allowed_paths(g, p - 1))
    # columns of the block of the boundary landing on non-allowed (p-1)-paths
    columns = []
    for q in paths:
        columns.append({face: c for face, c in path_boundary(q).items() if face not in lower})
    kernel = nullspace(columns)
    basis = [{paths[k]: c for k, c in vec.items()} for vec in kernel]
    return OmegaBasis(p, tuple(paths), tuple(basis))


def _boundary_rank(omega: OmegaBasis) -> int:
    if omega.p == 0:
        return 0
    ech = Echelon()
    return sum(1 for vec in omega.basis if ech.add(boundary(vec)))


def cycle_basis(omega: OmegaBasis) -> list[ChainVector]:
    """Basis of the kernel of the boundary restricted to ``omega``."""
    if omega.p == 0:
        return list(omega.basis)
    images = [boundary(vec) for vec in omega.basis]
    kernel = nullspace(images)
    return rref(combine(coeffs, omega.basis) for coeffs in kernel)


def homology_dim(g: Digraph, p: int) -> int:
    if p < 0:
        raise ValueError("homology dimension must be nonnegative")
    om = omega_basis(g, p)
    om_up = omega_basis(g, p + 1)
    return om.dim - _boundary_rank(om) - _boundary_rank(om_up)


def betti_numbers(g: Digraph, max_p: int) -> list[int]:
    omegas = [omega_basis(g, p) for p in range(max_p + 2)]
    ranks = [_boundary_rank(om) for om in omegas]
    return [omegas[p].dim - ranks[p] - ranks[p + 1] for p in range(max_p + 1)]


def induced_inclusion(omega: OmegaBasis, larger: OmegaBasis) -> bool:
    """True when every basis vector of ``omega`` lies in the span of ``larger``.

    For an inclusion of digraphs the induced chain map is coordinate
    inclusion, so this checks that the map lands in the invariant space.
    """
    ech = Echelon()
    for vec in larger.basis:
        ech.add(vec)
    return all(ech.contains(vec) for vec in omega.basis)


def chains_supported_on(chain: Mapping, paths: Iterable[Path]) -> bool:
    allowed = set(paths)
    return all(k in allowed for k in chain)
