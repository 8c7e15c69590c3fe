"""Poset constructions: products, pyramids, diamonds, star products and face-lattice families."""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from .poset import (
    Poset,
    PosetError,
    Rank,
    RankedPoset,
    adjoin_max,
    adjoin_min,
    boundary,
    is_eulerian,
    is_lower_eulerian,
    natural_rank,
    poset_rank,
    subposet,
)


def _set_label(elems: Sequence[int]) -> str:
    return "{" + ",".join(str(e) for e in elems) + "}"


def _from_predicate(labels: Sequence[str], items: Sequence, below) -> Poset:
    n = len(items)
    lt = np.zeros((n, n), dtype=bool)
    for i, j in itertools.permutations(range(n), 2):
        lt[i, j] = below(items[i], items[j])
    return Poset(labels, lt)


def _require_eulerian(p: Poset, r: Rank, what: str) -> None:
    if not is_eulerian(p, r) or p.n < 2:
        raise PosetError(f"{what} requires an Eulerian poset of positive rank")


def boolean_algebra(n: int) -> RankedPoset:
    if n < 0:
        raise PosetError("n must be nonnegative")
    subsets = [s for k in range(n + 1) for s in itertools.combinations(range(1, n + 1), k)]
    sets = [frozenset(s) for s in subsets]
    p = _from_predicate([_set_label(s) for s in subsets], sets, lambda a, b: a < b)
    return RankedPoset(p, tuple(len(s) for s in sets))


def chain(length: int) -> RankedPoset:
    """Totally ordered poset ``0 < 1 < ... < length``."""
    items = list(range(length + 1))
    p = _from_predicate([str(i) for i in items], items, lambda a, b: a < b)
    return RankedPoset(p, tuple(items))


def direct_product(p: Poset, r: Rank, p2: Poset, r2: Rank) -> RankedPoset:
    pairs = [(i, j) for i in range(p.n) for j in range(p2.n)]
    labels = [f"({p.labels[i]},{p2.labels[j]})" for i, j in pairs]
    ii = np.array([i for i, _ in pairs], dtype=int)
    jj = np.array([j for _, j in pairs], dtype=int)
    le = p.le[np.ix_(ii, ii)] & p2.le[np.ix_(jj, jj)]
    lt = le & ~np.eye(len(pairs), dtype=bool)
    return RankedPoset(Poset(labels, lt), tuple(r[i] + r2[j] for i, j in pairs))


def pyramid(p: Poset, r: Rank) -> RankedPoset:
    b1, r1 = boolean_algebra(1)
    return direct_product(p, r, b1, r1)


def dual_diamond_product(p: Poset, r: Rank, p2: Poset, r2: Rank) -> RankedPoset:
    """The Eulerian poset whose boundary is ``boundary(p) x boundary(p2)``."""
    _require_eulerian(p, r, "dual diamond product")
    _require_eulerian(p2, r2, "dual diamond product")
    bp, br = boundary(p, r)
    bq, bqr = boundary(p2, r2)
    prod, pr = direct_product(bp, br, bq, bqr)
    return adjoin_max(prod, pr)


def diamond_product(p: Poset, r: Rank, p2: Poset, r2: Rank) -> RankedPoset:
    """The Eulerian poset whose non-bottom part is ``(p - 0) x (p2 - 0)``.

    The rank function restricts to the product rank, so the new bottom sits at
    ``r(0) + r2(0) + 1``.
    """
    _require_eulerian(p, r, "diamond product")
    _require_eulerian(p2, r2, "diamond product")
    keep = [i for i in range(p.n) if i != p.bottom]
    keep2 = [i for i in range(p2.n) if i != p2.bottom]
    prod, pr = direct_product(
        subposet(p, keep), tuple(r[i] for i in keep), subposet(p2, keep2), tuple(r2[i] for i in keep2)
    )
    return adjoin_min(prod, pr)


def prism(p: Poset, r: Rank) -> RankedPoset:
    b2, r2 = boolean_algebra(2)
    return diamond_product(p, r, b2, r2)


def bipyramid(p: Poset, r: Rank) -> RankedPoset:
    b2, r2 = boolean_algebra(2)
    return dual_diamond_product(p, r, b2, r2)


def star_product(p: Poset, r: Rank, p2: Poset, r2: Rank) -> RankedPoset:
    """Glue ``boundary(p)`` below ``p2`` minus its bottom.

    Elements are tagged ``L:`` (from the boundary of ``p``) and ``R:`` (from ``p2``).
    """
    _require_eulerian(p, r, "star product")
    if not is_lower_eulerian(p2, r2):
        raise PosetError("star product requires a lower Eulerian right factor")
    bp, br = boundary(p, r)
    right = [i for i in range(p2.n) if i != p2.bottom]
    nl, nr = bp.n, len(right)
    lt = np.zeros((nl + nr, nl + nr), dtype=bool)
    lt[:nl, :nl] = bp.lt
    lt[nl:, nl:] = p2.lt[np.ix_(right, right)]
    lt[:nl, nl:] = True
    labels = [f"L:{s}" for s in bp.labels] + [f"R:{p2.labels[i]}" for i in right]
    offset = r[p.bottom] + poset_rank(p) - 1 - r2[p2.bottom]
    rank = tuple(br) + tuple(r2[i] + offset for i in right)
    return RankedPoset(Poset(labels, lt), rank)


def disjoint_union(p: Poset, r: Rank, p2: Poset, r2: Rank) -> RankedPoset:
    n = p.n
    lt = np.zeros((n + p2.n, n + p2.n), dtype=bool)
    lt[:n, :n] = p.lt
    lt[n:, n:] = p2.lt
    labels = [f"1:{s}" for s in p.labels] + [f"2:{s}" for s in p2.labels]
    return RankedPoset(Poset(labels, lt), tuple(r) + tuple(r2))


# -- face-lattice families ------------------------------------------------------------


def face_lattice_polygon(m: int) -> RankedPoset:
    """Face lattice of an ``m``-gon; faces are labelled by their vertex sets."""
    if m < 3:
        raise PosetError("a polygon needs at least 3 vertices")
    faces = [()]
    faces += [(i,) for i in range(1, m + 1)]
    faces += [tuple(sorted((i, i % m + 1))) for i in range(1, m + 1)]
    faces.append(tuple(range(1, m + 1)))
    sets = [frozenset(f) for f in faces]
    p = _from_predicate([_set_label(f) for f in faces], sets, lambda a, b: a < b)
    return RankedPoset(p, tuple(min(len(f), 3) for f in faces))


def face_lattice_cube(d: int) -> RankedPoset:
    """Face lattice of the ``d``-cube as a ``d``-fold diamond power of B2, with its natural rank."""
    if d < 1:
        raise PosetError("dimension must be positive")
    p, r = boolean_algebra(2)
    b2, r2 = p, r
    for _ in range(d - 1):
        p, r = diamond_product(p, r, b2, r2)
    return RankedPoset(p, natural_rank(p))


def face_lattice_crosspolytope(d: int) -> RankedPoset:
    """Face lattice of the ``d``-dimensional cross-polytope as a ``d``-fold dual-diamond power of B2."""
    if d < 1:
        raise PosetError("dimension must be positive")
    p, r = boolean_algebra(2)
    b2, r2 = p, r
    for _ in range(d - 1):
        p, r = dual_diamond_product(p, r, b2, r2)
    return RankedPoset(p, natural_rank(p))


def subdivided_interval(s: int) -> RankedPoset:
    """Face poset of a segment cut at ``s`` interior points (no top element)."""
    if s < 0:
        raise PosetError("s must be nonnegative")
    faces = [()] + [(i,) for i in range(s + 2)] + [(i, i + 1) for i in range(s + 1)]
    sets = [frozenset(f) for f in faces]
    p = _from_predicate([_set_label(f) for f in faces], sets, lambda a, b: a < b)
    return RankedPoset(p, tuple(len(f) for f in faces))


def fan_over_boundary(p: Poset, r: Rank) -> RankedPoset:
    """Face poset of the complete fan over the boundary of a polytope with face lattice ``p``."""
    return boundary(p, r)
