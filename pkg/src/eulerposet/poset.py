"""Finite posets stored as dense strict-order matrices, plus the Eulerian predicates.

Elements are integer indices ``0..n-1``; labels are metadata used for I/O and
for label-preserving equality.  Rank functions are plain tuples of ints, one
value per element, and are always passed explicitly.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, NamedTuple, Sequence

import numpy as np

Rank = tuple[int, ...]


class PosetError(ValueError):
    """Invalid poset input or a violated precondition."""


class NotRankedError(PosetError):
    pass


class RankedPoset(NamedTuple):
    poset: "Poset"
    rank: Rank


def _transitive_closure(rel: np.ndarray) -> np.ndarray:
    closed = rel.copy()
    for k in range(closed.shape[0]):
        col = closed[:, k]
        if col.any():
            closed |= np.outer(col, closed[k, :])
    return closed


def _bool_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # float matmul goes through BLAS; counts stay far below 2**53
    return (a.astype(np.float64) @ b.astype(np.float64)) > 0.5


class Poset:
    """An immutable finite poset.

    ``lt[i, j]`` is true iff element ``i`` is strictly below element ``j``.
    Equality is label-preserving: two posets are equal when they have the same
    label set and the same order relation between labels, regardless of index
    order.  Use :meth:`identical` for index-level equality.
    """

    __slots__ = ("labels", "lt", "le", "_index", "_covers", "_hash")

    def __init__(self, labels: Sequence[str], lt: np.ndarray):
        labels = tuple(str(s) for s in labels)
        lt = np.array(lt, dtype=bool)
        n = len(labels)
        if lt.shape != (n, n):
            raise PosetError(f"relation has shape {lt.shape}, expected {(n, n)}")
        if len(set(labels)) != n:
            dup = sorted({s for s in labels if labels.count(s) > 1})
            raise PosetError(f"duplicate label(s): {dup}")
        if n and lt.diagonal().any():
            raise PosetError("relation is not irreflexive (cycle detected)")
        if n and (lt & lt.T).any():
            raise PosetError("relation is not antisymmetric (cycle detected)")
        if n and (_bool_product(lt, lt) & ~lt).any():
            raise PosetError("relation is not transitive")
        lt.setflags(write=False)
        le = lt | np.eye(n, dtype=bool)
        le.setflags(write=False)
        self.labels = labels
        self.lt = lt
        self.le = le
        self._index = {s: i for i, s in enumerate(labels)}
        self._covers = None
        self._hash = None

    @classmethod
    def _unchecked(cls, labels: tuple[str, ...], lt: np.ndarray) -> "Poset":
        """Skip validation; only for relations induced from an existing poset."""
        self = object.__new__(cls)
        lt = np.ascontiguousarray(lt, dtype=bool)
        lt.setflags(write=False)
        le = lt | np.eye(len(labels), dtype=bool)
        le.setflags(write=False)
        self.labels = labels
        self.lt = lt
        self.le = le
        self._index = {s: i for i, s in enumerate(labels)}
        self._covers = None
        self._hash = None
        return self

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_relation(cls, labels: Sequence[str], pairs: Iterable[tuple[int, int]]) -> "Poset":
        """Transitive closure of index pairs ``(i, j)`` meaning ``i < j``."""
        n = len(labels)
        rel = np.zeros((n, n), dtype=bool)
        for i, j in pairs:
            rel[i, j] = True
        closed = _transitive_closure(rel)
        if n and closed.diagonal().any():
            raise PosetError("declared relation contains a cycle")
        return cls(labels, closed)

    # -- basic queries --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise PosetError(f"unknown element label {label!r}") from None

    def indices(self, labels: Iterable[str]) -> list[int]:
        return [self.index(s) for s in labels]

    @property
    def covers(self) -> tuple[tuple[int, int], ...]:
        if self._covers is None:
            if self.n == 0:
                self._covers = ()
            else:
                cov = self.lt & ~_bool_product(self.lt, self.lt)
                self._covers = tuple((int(i), int(j)) for i, j in zip(*np.nonzero(cov)))
        return self._covers

    def up(self, z: int) -> list[int]:
        """Elements ``>= z``."""
        return [int(i) for i in np.flatnonzero(self.le[z])]

    def down(self, z: int) -> list[int]:
        """Elements ``<= z``."""
        return [int(i) for i in np.flatnonzero(self.le[:, z])]

    def minimal(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(~self.lt.any(axis=0))]

    def maximal(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(~self.lt.any(axis=1))]

    @property
    def bottom(self) -> int | None:
        m = self.minimal()
        return m[0] if len(m) == 1 else None

    @property
    def top(self) -> int | None:
        m = self.maximal()
        return m[0] if len(m) == 1 else None

    def leq(self, a: int, b: int) -> bool:
        return bool(self.le[a, b])

    def relation_pairs(self) -> frozenset[tuple[str, str]]:
        lab = self.labels
        return frozenset((lab[i], lab[j]) for i, j in zip(*np.nonzero(self.lt)))

    # -- equality -------------------------------------------------------------

    def identical(self, other: "Poset") -> bool:
        return self.labels == other.labels and np.array_equal(self.lt, other.lt)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        if self.n != other.n or set(self.labels) != set(other.labels):
            return False
        perm = [other._index[s] for s in self.labels]
        return bool(np.array_equal(self.lt, other.lt[np.ix_(perm, perm)]))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self.labels), self.relation_pairs()))
        return self._hash

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={len(self.covers)})"


# -- construction helpers ------------------------------------------------------


def from_covers(labels: Sequence[str], cover_pairs: Iterable[tuple[str, str]]) -> Poset:
    """Build a poset from its Hasse diagram, given by label pairs ``(lower, upper)``."""
    labels = list(labels)
    if not labels:
        raise PosetError("empty poset")
    if len(set(labels)) != len(labels):
        raise PosetError("duplicate label")
    idx = {s: i for i, s in enumerate(labels)}
    pairs = []
    for a, b in cover_pairs:
        if a not in idx or b not in idx:
            raise PosetError(f"cover ({a!r}, {b!r}) references an unknown label")
        pairs.append((idx[a], idx[b]))
    p = Poset.from_relation(labels, pairs)
    given = set(pairs)
    actual = set(p.covers)
    extra = given - actual
    if extra:
        a, b = sorted(extra)[0]
        raise PosetError(f"({labels[a]!r}, {labels[b]!r}) is not a cover relation")
    return p


def subposet(p: Poset, elements: Iterable[int]) -> Poset:
    """Induced subposet on ``elements``, kept in ascending index order."""
    keep = sorted(set(int(e) for e in elements))
    return Poset._unchecked(tuple(p.labels[i] for i in keep), p.lt[np.ix_(keep, keep)])


def restrict_rank(r: Rank, elements: Iterable[int]) -> Rank:
    return tuple(r[i] for i in sorted(set(elements)))


def fresh_label(existing: Iterable[str], base: str) -> str:
    existing = set(existing)
    label = base
    while label in existing:
        label += "'"
    return label


def relabel(p: Poset, labels: Sequence[str]) -> Poset:
    return Poset(labels, p.lt)


def permute(p: Poset, order: Sequence[int]) -> Poset:
    """Same poset with elements reindexed so that new index ``k`` is old ``order[k]``."""
    order = list(order)
    return Poset([p.labels[i] for i in order], p.lt[np.ix_(order, order)])


# -- rank functions ------------------------------------------------------------


def is_rank_function(p: Poset, r: Sequence[int]) -> bool:
    if len(r) != p.n:
        return False
    return all(r[j] == r[i] + 1 for i, j in p.covers)


def natural_rank(p: Poset) -> Rank:
    """The rank function taking the value 0 on the unique minimal element."""
    if p.n == 0:
        raise PosetError("empty poset")
    z = p.bottom
    if z is None:
        raise PosetError("poset has no unique minimal element")
    return rank_from(p, z, 0)


def rank_from(p: Poset, anchor: int, value: int) -> Rank:
    """Propagate a rank function along covers from ``anchor``; the poset must be connected."""
    vals: list[int | None] = [None] * p.n
    vals[anchor] = value
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(p.n)]
    for i, j in p.covers:
        nbrs[i].append((j, 1))
        nbrs[j].append((i, -1))
    queue = deque([anchor])
    while queue:
        u = queue.popleft()
        for v, step in nbrs[u]:
            want = vals[u] + step
            if vals[v] is None:
                vals[v] = want
                queue.append(v)
            elif vals[v] != want:
                raise NotRankedError(
                    f"not ranked: {p.labels[v]!r} would need ranks {vals[v]} and {want}"
                )
    if any(v is None for v in vals):
        raise NotRankedError("Hasse diagram is disconnected; rank not determined")
    return tuple(vals)  # type: ignore[arg-type]


def shift_rank(r: Sequence[int], s: int) -> Rank:
    return tuple(v + s for v in r)


def poset_rank(p: Poset) -> int:
    """Length of the longest chain."""
    if p.n == 0:
        return -1
    longest = [0] * p.n
    for j in topological_order(p):
        below = np.flatnonzero(p.lt[:, j])
        if below.size:
            longest[j] = max(longest[i] for i in below) + 1
    return max(longest)


def topological_order(p: Poset) -> list[int]:
    # number of strict predecessors is a linear extension
    counts = p.lt.sum(axis=0)
    return sorted(range(p.n), key=lambda i: (int(counts[i]), i))


# -- intervals and ideals -------------------------------------------------------


def interval_elements(p: Poset, z: int, z2: int, kind: str = "closed") -> list[int]:
    if kind == "open":
        if not p.lt[z, z2]:
            raise PosetError(f"{p.labels[z]!r} is not strictly below {p.labels[z2]!r}")
        mask = p.lt[z] & p.lt[:, z2]
    else:
        if not p.le[z, z2]:
            raise PosetError(f"{p.labels[z]!r} is not below {p.labels[z2]!r}")
        if kind == "closed":
            mask = p.le[z] & p.le[:, z2]
        elif kind == "half_open":
            mask = p.le[z] & p.lt[:, z2]
        else:
            raise PosetError(f"unknown interval kind {kind!r}")
    return [int(i) for i in np.flatnonzero(mask)]


def interval(p: Poset, z: int, z2: int, kind: str = "closed") -> Poset:
    return subposet(p, interval_elements(p, z, z2, kind))


def ideal(p: Poset, generators: Iterable[int], direction: str = "lower") -> list[int]:
    gens = list(generators)
    if not gens:
        return []
    if direction == "lower":
        mask = p.le[:, gens].any(axis=1)
    elif direction == "upper":
        mask = p.le[gens, :].any(axis=0)
    else:
        raise PosetError(f"unknown direction {direction!r}")
    return [int(i) for i in np.flatnonzero(mask)]


def is_upper_ideal(p: Poset, elements: Iterable[int]) -> bool:
    s = sorted(set(elements))
    return ideal(p, s, "upper") == s


def is_lower_ideal(p: Poset, elements: Iterable[int]) -> bool:
    s = sorted(set(elements))
    return ideal(p, s, "lower") == s


# -- joins and meets -------------------------------------------------------------


def _least_in(p: Poset, mask: np.ndarray) -> int | None:
    cand = np.flatnonzero(mask)
    if cand.size == 0:
        return None
    sub = p.lt[np.ix_(cand, cand)]
    mins = cand[~sub.any(axis=0)]
    return int(mins[0]) if mins.size == 1 else None


def join(p: Poset, z: int, z2: int) -> int | None:
    """Least upper bound, or ``None`` when the common upper set has no unique minimal element."""
    return _least_in(p, p.le[z] & p.le[z2])


def meet(p: Poset, z: int, z2: int) -> int | None:
    cand = p.le[:, z] & p.le[:, z2]
    return join(dual(p), z, z2) if cand.any() else None


def join_with_ideal(p: Poset, z: int, upper_ideal: Iterable[int]) -> int | None:
    mask = np.zeros(p.n, dtype=bool)
    mask[list(upper_ideal)] = True
    return _least_in(p, p.le[z] & mask)


def join_table(p: Poset, q: int) -> list[int | None]:
    """``z v q`` for every element ``z``."""
    return joins_with_mask(p, p.le[q])


def joins_with_mask(p: Poset, mask: np.ndarray) -> list[int | None]:
    common = p.le & mask[None, :]
    # w is non-minimal in row z if some v < w also lies in the row
    blocked = _bool_product(common, p.lt)
    mins = common & ~blocked
    out: list[int | None] = []
    for row in mins:
        hits = np.flatnonzero(row)
        out.append(int(hits[0]) if hits.size == 1 else None)
    return out


def is_join_admissible(p: Poset, q: int) -> bool:
    return all(j is not None for j in join_table(p, q))


def join_admissible_elements(p: Poset) -> list[int]:
    return [q for q in range(p.n) if is_join_admissible(p, q)]


def is_join_admissible_ideal(p: Poset, upper_ideal: Iterable[int]) -> bool:
    elems = sorted(set(upper_ideal))
    if not elems:
        raise PosetError("ideal is empty")
    if not is_upper_ideal(p, elems):
        raise PosetError("not an upper order ideal")
    mask = np.zeros(p.n, dtype=bool)
    mask[elems] = True
    return all(j is not None for j in joins_with_mask(p, mask))


def is_lattice(p: Poset) -> bool:
    if p.n == 0:
        return False
    return all(
        join(p, a, b) is not None and meet(p, a, b) is not None
        for a, b in itertools.combinations(range(p.n), 2)
    )


# -- Eulerian predicates -----------------------------------------------------------


def _signs(r: Sequence[int]) -> np.ndarray:
    return np.array([1 - 2 * (v % 2) for v in r], dtype=np.int64)


def interval_sums(p: Poset, r: Sequence[int]) -> np.ndarray:
    """``S[z, z2] = sum over z <= w <= z2 of (-1)**r[w]`` (zero off the order)."""
    le = p.le.astype(np.float64)
    s = le @ np.diag(_signs(r).astype(np.float64)) @ le
    return np.rint(s).astype(np.int64)


def eulerian_witness(p: Poset, r: Sequence[int]) -> tuple[int, int, int] | None:
    """First interval ``[z, z2]`` with nonzero alternating sum, as ``(z, z2, sum)``."""
    sums = interval_sums(p, r)
    bad = p.lt & (sums != 0)
    if not bad.any():
        return None
    z, z2 = (int(v) for v in np.argwhere(bad)[0])
    return z, z2, int(sums[z, z2])


def is_locally_eulerian(p: Poset, r: Sequence[int]) -> bool:
    if p.n == 0 or not is_rank_function(p, r):
        return False
    return eulerian_witness(p, r) is None


def is_lower_eulerian(p: Poset, r: Sequence[int]) -> bool:
    return p.n > 0 and p.bottom is not None and is_locally_eulerian(p, r)


def is_eulerian(p: Poset, r: Sequence[int]) -> bool:
    return is_lower_eulerian(p, r) and p.top is not None


def is_graded(p: Poset) -> bool:
    """Every maximal chain has the same length."""
    if p.n == 0:
        return True
    cov_below: list[list[int]] = [[] for _ in range(p.n)]
    for i, j in p.covers:
        cov_below[j].append(i)
    lo = [0] * p.n
    hi = [0] * p.n
    for j in topological_order(p):
        if cov_below[j]:
            lo[j] = min(lo[i] for i in cov_below[j]) + 1
            hi[j] = max(hi[i] for i in cov_below[j]) + 1
    lengths = {lo[m] for m in p.maximal()} | {hi[m] for m in p.maximal()}
    return len(lengths) == 1


def even_odd_balance(p: Poset, r: Sequence[int]) -> int:
    return int(_signs(r).sum())


# -- duals, boundaries, semisuspension -------------------------------------------------


def dual(p: Poset) -> Poset:
    return Poset(p.labels, p.lt.T)


def adjoin_max(p: Poset, r: Sequence[int] | None = None, label: str = "1hat") -> RankedPoset:
    """``p`` with a new top element; the top gets rank ``max(r) + 1``.

    The returned rank tuple is only a rank function when all maximal elements of
    ``p`` share a rank.
    """
    lab = fresh_label(p.labels, label)
    n = p.n
    lt = np.zeros((n + 1, n + 1), dtype=bool)
    lt[:n, :n] = p.lt
    lt[:n, n] = True
    if r is None:
        r = natural_rank(p) if p.bottom is not None else (0,) * n
    top_rank = (max(r) + 1) if n else 0
    return RankedPoset(Poset(list(p.labels) + [lab], lt), tuple(r) + (top_rank,))


def adjoin_min(p: Poset, r: Sequence[int], label: str = "0hat") -> RankedPoset:
    lab = fresh_label(p.labels, label)
    n = p.n
    lt = np.zeros((n + 1, n + 1), dtype=bool)
    lt[1:, 1:] = p.lt
    lt[0, 1:] = True
    low = (min(r) - 1) if n else 0
    return RankedPoset(Poset([lab] + list(p.labels), lt), (low,) + tuple(r))


def boundary(p: Poset, r: Sequence[int]) -> RankedPoset:
    """``p`` minus its top, for Eulerian ``p`` of positive rank."""
    if not is_eulerian(p, r) or p.n < 2:
        raise PosetError("boundary requires an Eulerian poset of positive rank")
    keep = [i for i in range(p.n) if i != p.top]
    return RankedPoset(subposet(p, keep), restrict_rank(r, keep))


def near_eulerian_boundary(p: Poset) -> list[int]:
    """Lower ideal generated by the elements with exactly one element strictly above them."""
    above = p.lt.sum(axis=1)
    gens = [int(i) for i in np.flatnonzero(above == 1)]
    return ideal(p, gens, "lower")


class Semisuspension(NamedTuple):
    poset: Poset
    rank: Rank
    zhat: int


def semisuspension(p: Poset, r: Sequence[int]) -> Semisuspension:
    """Adjoin ``zhat`` above the boundary and then a top; raise unless the result is Eulerian of positive rank."""
    s = _semisuspension_candidate(p, r)
    if s is None or not is_eulerian(s.poset, s.rank) or poset_rank(s.poset) < 1:
        raise PosetError("poset is not near-Eulerian")
    return s


def _semisuspension_candidate(p: Poset, r: Sequence[int]) -> Semisuspension | None:
    if p.n == 0 or not is_rank_function(p, r) or p.bottom is None:
        return None
    bd = near_eulerian_boundary(p)
    if not bd:
        return None
    n = p.n
    zl = fresh_label(p.labels, "zhat")
    tl = fresh_label(list(p.labels) + [zl], "1hat")
    lt = np.zeros((n + 2, n + 2), dtype=bool)
    lt[:n, :n] = p.lt
    lt[bd, n] = True
    lt[:, n + 1] = True
    lt[n + 1, n + 1] = False
    zrank = r[p.bottom] + poset_rank(p)
    return Semisuspension(Poset(list(p.labels) + [zl, tl], lt), tuple(r) + (zrank, zrank + 1), n)


def is_near_eulerian(p: Poset, r: Sequence[int]) -> bool:
    s = _semisuspension_candidate(p, r)
    return s is not None and is_eulerian(s.poset, s.rank) and poset_rank(s.poset) >= 1


# -- isomorphism (small posets only) ------------------------------------------------


def find_isomorphism(p: Poset, q: Poset, limit: int = 40) -> list[int] | None:
    """Order isomorphism ``p -> q`` as an index list, by backtracking; ``None`` if none exists."""
    if p.n != q.n:
        return None
    if p.n > limit:
        raise PosetError(f"isomorphism search limited to {limit} elements")
    if len(p.covers) != len(q.covers):
        return None

    def invariants(x: Poset) -> list[tuple[int, int, int, int]]:
        depth = [0] * x.n
        for j in topological_order(x):
            below = np.flatnonzero(x.lt[:, j])
            if below.size:
                depth[j] = max(depth[i] for i in below) + 1
        ups = x.lt.sum(axis=1)
        downs = x.lt.sum(axis=0)
        return [(depth[i], int(ups[i]), int(downs[i]), 0) for i in range(x.n)]

    ip, iq = invariants(p), invariants(q)
    if sorted(ip) != sorted(iq):
        return None
    order = topological_order(p)
    image = [-1] * p.n
    used = [False] * q.n

    def ok(a: int, b: int) -> bool:
        for c in order:
            d = image[c]
            if d < 0:
                continue
            if p.lt[a, c] != q.lt[b, d] or p.lt[c, a] != q.lt[d, b]:
                return False
        return True

    def search(k: int) -> bool:
        if k == len(order):
            return True
        a = order[k]
        for b in range(q.n):
            if not used[b] and ip[a] == iq[b] and ok(a, b):
                image[a] = b
                used[b] = True
                if search(k + 1):
                    return True
                image[a] = -1
                used[b] = False
        return False

    return list(image) if search(0) else None


def is_isomorphic(p: Poset, q: Poset) -> bool:
    return find_isomorphism(p, q) is not None
