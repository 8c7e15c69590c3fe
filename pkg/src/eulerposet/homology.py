"""Order complexes, rational homology and the Gorenstein* predicates."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .poset import (
    Poset,
    PosetError,
    Rank,
    interval_elements,
    is_eulerian,
    is_lower_eulerian,
    semisuspension,
    subposet,
    topological_order,
)


@dataclass(frozen=True)
class SimplicialComplex:
    """Vertices plus faces as sorted index tuples; the empty face is always present."""

    vertices: tuple[str, ...]
    faces: frozenset[tuple[int, ...]]

    @classmethod
    def from_facets(cls, vertices: Sequence[str], facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        faces = {()}
        for f in facets:
            f = tuple(sorted(f))
            for k in range(len(f) + 1):
                faces.update(combinations(f, k))
        return cls(tuple(vertices), frozenset(faces))

    def is_closed(self) -> bool:
        return all(f[:i] + f[i + 1:] in self.faces for f in self.faces for i in range(len(f)))

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def faces_of_dim(self, k: int) -> list[tuple[int, ...]]:
        return sorted(f for f in self.faces if len(f) == k + 1)

    def euler_characteristic(self) -> int:
        """Reduced Euler characteristic, counting the empty face in degree -1."""
        return sum(1 if len(f) % 2 else -1 for f in self.faces)


def _chains(p: Poset) -> list[tuple[int, ...]]:
    order = topological_order(p)
    out: list[tuple[int, ...]] = [()]
    frontier: list[tuple[int, ...]] = [(v,) for v in order]
    while frontier:
        out.extend(frontier)
        nxt = []
        for ch in frontier:
            last = ch[-1]
            for v in np.flatnonzero(p.lt[last]):
                nxt.append(ch + (int(v),))
        frontier = nxt
    return out


def order_complex(p: Poset) -> SimplicialComplex:
    faces = frozenset(tuple(sorted(ch)) for ch in _chains(p))
    return SimplicialComplex(p.labels, faces)


def open_interval_complex(p: Poset, z: int, z2: int) -> SimplicialComplex:
    return order_complex(subposet(p, interval_elements(p, z, z2, "open")))


def _boundary_rows(k_faces: list[tuple[int, ...]], lower: list[tuple[int, ...]]) -> list[list[int]]:
    pos = {f: i for i, f in enumerate(lower)}
    rows = []
    for f in k_faces:
        row = [0] * len(lower)
        for i in range(len(f)):
            row[pos[f[:i] + f[i + 1:]]] = (-1) ** i
        rows.append(row)
    return rows


def reduced_betti(k: SimplicialComplex) -> list[int]:
    """``[b_{-1}, b_0, b_1, ...]`` of reduced homology over Q."""
    top = k.dimension
    by_dim = {d: k.faces_of_dim(d) for d in range(-1, top + 1)}
    ranks = {}
    for d in range(0, top + 1):
        rows = _boundary_rows(by_dim[d], by_dim[d - 1])
        ranks[d] = linalg.rank(rows) if rows and by_dim[d - 1] else 0
    betti = []
    for d in range(-1, max(top, -1) + 1):
        n_faces = len(by_dim[d])
        out_rank = ranks.get(d, 0)
        in_rank = ranks.get(d + 1, 0)
        betti.append(n_faces - out_rank - in_rank)
    return betti


def is_homology_sphere(k: SimplicialComplex, dim: int) -> bool:
    betti = reduced_betti(k)
    want = [0] * (dim + 2)
    want[dim + 1] = 1
    padded = betti + [0] * max(0, len(want) - len(betti))
    return padded[: len(want)] == want and not any(padded[len(want):])


@lru_cache(maxsize=16384)
def _open_interval_is_sphere(n: int, relation: bytes, dim: int) -> bool:
    lt = np.frombuffer(relation, dtype=bool).reshape(n, n)
    return is_homology_sphere(order_complex(Poset._unchecked(tuple(map(str, range(n))), lt)), dim)


def gorenstein_witness(p: Poset, r: Rank) -> tuple[int, int] | None:
    """First interval ``(x, x')`` whose open part is not a rational homology sphere of the right dimension."""
    for x in range(p.n):
        for x2 in np.flatnonzero(p.lt[x]):
            x2 = int(x2)
            length = r[x2] - r[x]
            if length < 2:
                continue
            inner = subposet(p, interval_elements(p, x, x2, "open"))
            if not _open_interval_is_sphere(inner.n, inner.lt.tobytes(), length - 2):
                return x, x2
    return None


def is_gorenstein_star(p: Poset, r: Rank) -> bool:
    """False for posets that are not Eulerian of positive rank, rather than raising."""
    if p.n < 2 or not is_eulerian(p, r):
        return False
    return gorenstein_witness(p, r) is None


def is_near_gorenstein_star(p: Poset, r: Rank) -> bool:
    try:
        s = semisuspension(p, r)
    except PosetError:
        return False
    return is_gorenstein_star(s.poset, s.rank)


def is_lower_gorenstein_star(p: Poset, r: Rank) -> bool:
    """Unique minimum, and every closed interval of positive rank is Gorenstein*."""
    # every interval of p is Eulerian and every open interval of p is a sphere
    if p.bottom is None or not is_lower_eulerian(p, r):
        return False
    return gorenstein_witness(p, r) is None
