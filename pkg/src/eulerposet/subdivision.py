"""Maps between ranked posets and the strong formal subdivision axioms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .constructions import boolean_algebra, direct_product, dual_diamond_product, pyramid, star_product
from .poset import (
    Poset,
    PosetError,
    Rank,
    adjoin_max,
    boundary,
    is_eulerian,
    is_lower_eulerian,
    is_locally_eulerian,
    is_lower_ideal,
    near_eulerian_boundary,
    poset_rank,
    restrict_rank,
    semisuspension,
    subposet,
    _semisuspension_candidate,
    _signs,
)

METHODS = ("eq31", "eq32", "near")
_ALIASES = {"near_eulerian_char": "near"}


class SfsPreconditionError(PosetError):
    """A standing hypothesis of the subdivision axioms does not hold."""

    def __init__(self, hypothesis: str, message: str):
        super().__init__(message)
        self.hypothesis = hypothesis


@dataclass(frozen=True, eq=False)
class PosetMap:
    source: Poset
    source_rank: Rank
    target: Poset
    target_rank: Rank
    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "source_rank", tuple(int(v) for v in self.source_rank))
        object.__setattr__(self, "target_rank", tuple(int(v) for v in self.target_rank))
        object.__setattr__(self, "image", tuple(int(v) for v in self.image))
        if len(self.source_rank) != self.source.n or len(self.target_rank) != self.target.n:
            raise PosetError("rank function length does not match poset size")
        if len(self.image) != self.source.n:
            raise PosetError("image must assign a target element to every source element")
        if any(not 0 <= v < self.target.n for v in self.image):
            raise PosetError("image index out of range")

    @classmethod
    def from_labels(
        cls, source: Poset, source_rank: Rank, target: Poset, target_rank: Rank, mapping: Mapping[str, str]
    ) -> "PosetMap":
        missing = [s for s in source.labels if s not in mapping]
        if missing:
            raise PosetError(f"no image given for {missing[0]!r}")
        return cls(source, source_rank, target, target_rank, tuple(target.index(mapping[s]) for s in source.labels))

    def __call__(self, x: int) -> int:
        return self.image[x]

    def label_image(self) -> dict[str, str]:
        return {self.source.labels[i]: self.target.labels[j] for i, j in enumerate(self.image)}

    def identical(self, other: "PosetMap") -> bool:
        return (
            self.source.identical(other.source)
            and self.target.identical(other.target)
            and self.source_rank == other.source_rank
            and self.target_rank == other.target_rank
            and self.image == other.image
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PosetMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and _rank_by_label(self.source, self.source_rank) == _rank_by_label(other.source, other.source_rank)
            and _rank_by_label(self.target, self.target_rank) == _rank_by_label(other.target, other.target_rank)
            and self.label_image() == other.label_image()
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, frozenset(self.label_image().items())))

    def __repr__(self) -> str:
        return f"PosetMap({self.source.n} -> {self.target.n})"


def _rank_by_label(p: Poset, r: Rank) -> dict[str, int]:
    return dict(zip(p.labels, r))


@dataclass(frozen=True)
class SfsWitness:
    """Why a candidate map is not a strong formal subdivision."""

    kind: str
    x: int | None = None
    y: int | None = None
    value: int | None = None
    detail: str = ""

    def describe(self, m: PosetMap) -> str:
        parts = [self.kind]
        if self.x is not None:
            parts.append(f"x={m.source.labels[self.x]}")
        if self.y is not None:
            parts.append(f"y={m.target.labels[self.y]}")
        if self.value is not None:
            parts.append(f"sum={self.value}")
        if self.detail:
            parts.append(self.detail)
        return " ".join(parts)


# -- basic predicates -------------------------------------------------------------------


def is_order_preserving(m: PosetMap) -> bool:
    img = list(m.image)
    return bool(np.all(~m.source.le | m.target.le[np.ix_(img, img)]))


def is_rank_increasing(m: PosetMap) -> bool:
    return all(m.target_rank[y] >= m.source_rank[x] for x, y in enumerate(m.image))


def is_surjective(m: PosetMap) -> bool:
    return len(set(m.image)) == m.target.n


def _relevant_pairs(m: PosetMap) -> np.ndarray:
    """``R[x, y]`` is true when ``sigma(x) <= y``."""
    return m.target.le[list(m.image), :]


def _fibre_matrix(m: PosetMap) -> np.ndarray:
    """``F[x, y] = 1`` when ``sigma(x) = y``."""
    f = np.zeros((m.source.n, m.target.n), dtype=np.float64)
    f[np.arange(m.source.n), list(m.image)] = 1.0
    return f


def _pair_sign(m: PosetMap) -> np.ndarray:
    """``(-1)**(rho_Y(y) - rho_X(x))`` as a matrix."""
    return np.outer(_signs(m.source_rank), _signs(m.target_rank)).astype(np.float64)


def _first_bad(m: PosetMap, bad: np.ndarray) -> tuple[int, int] | None:
    """Pick a witness from the top of the target downwards; ties break on labels, not indices."""
    if not bad.any():
        return None
    xs, ys = np.nonzero(bad)
    sl, tl = m.source.labels, m.target.labels
    return min(
        zip(xs.tolist(), ys.tolist()),
        key=lambda xy: (-m.target_rank[xy[1]], -m.source_rank[xy[0]], sl[xy[0]], tl[xy[1]]),
    )


def _missing_target(m: PosetMap) -> int:
    return min(set(range(m.target.n)) - set(m.image), key=lambda y: m.target.labels[y])


def strong_surjectivity_witness(m: PosetMap) -> SfsWitness | None:
    if not is_surjective(m):
        return SfsWitness("not_surjective", y=_missing_target(m))
    rx = np.array(m.source_rank)
    ry = np.array(m.target_rank)
    lift = _fibre_matrix(m) * (rx[:, None] == ry[None, :])
    reachable = (m.source.le.astype(np.float64) @ lift) > 0.5
    bad = _relevant_pairs(m) & ~reachable
    hit = _first_bad(m, bad)
    if hit is None:
        return None
    return SfsWitness("not_strongly_surjective", x=hit[0], y=hit[1], detail="no lift of matching rank")


def is_strongly_surjective(m: PosetMap) -> bool:
    _check_candidate(m, require_lower_eulerian=False)
    return strong_surjectivity_witness(m) is None


def sfs_rank(m: PosetMap) -> int:
    return poset_rank(m.source) - poset_rank(m.target)


# -- the three characterizations --------------------------------------------------------


def _check_candidate(m: PosetMap, require_lower_eulerian: bool = True, local: bool = False) -> None:
    if local:
        if not is_locally_eulerian(m.source, m.source_rank):
            raise SfsPreconditionError("source_locally_eulerian", "source is not locally Eulerian")
        if not is_locally_eulerian(m.target, m.target_rank):
            raise SfsPreconditionError("target_locally_eulerian", "target is not locally Eulerian")
    elif require_lower_eulerian:
        if not is_lower_eulerian(m.source, m.source_rank):
            raise SfsPreconditionError("source_lower_eulerian", "source is not lower Eulerian")
        if not is_lower_eulerian(m.target, m.target_rank):
            raise SfsPreconditionError("target_lower_eulerian", "target is not lower Eulerian")
    if not is_order_preserving(m):
        raise SfsPreconditionError("order_preserving", "map is not order-preserving")
    if not is_rank_increasing(m):
        raise SfsPreconditionError("rank_increasing", "map is not rank-increasing")


def eq31_sums(m: PosetMap) -> np.ndarray:
    """``S[x, y]`` = signed count of ``x' >= x`` with ``sigma(x') = y``."""
    a = _fibre_matrix(m) * _pair_sign(m)
    return np.rint(m.source.le.astype(np.float64) @ a).astype(np.int64)


def eq32_sums(m: PosetMap) -> np.ndarray:
    """``S[x, y]`` = signed count of ``x' >= x`` with ``sigma(x') <= y``."""
    a = _relevant_pairs(m).astype(np.float64) * _pair_sign(m)
    return np.rint(m.source.le.astype(np.float64) @ a).astype(np.int64)


def _equation_witness(m: PosetMap, method: str) -> SfsWitness | None:
    rel = _relevant_pairs(m)
    if method == "eq31":
        sums = eq31_sums(m)
        bad = rel & (sums != 1)
    else:
        sums = eq32_sums(m)
        expected = np.zeros_like(sums)
        expected[np.arange(m.source.n), list(m.image)] = 1
        bad = rel & (sums != expected)
    hit = _first_bad(m, bad)
    if hit is None:
        return None
    return SfsWitness(method, x=hit[0], y=hit[1], value=int(sums[hit]))


def preimage_below(m: PosetMap, y: int, strict: bool = False) -> list[int]:
    """``X_{<=y}`` (or ``X_{<y}``) as source indices."""
    row = m.target.lt[:, y] if strict else m.target.le[:, y]
    return [x for x, img in enumerate(m.image) if row[img]]


def _near_witness(m: PosetMap) -> SfsWitness | None:
    if not is_surjective(m):
        return SfsWitness("not_surjective", y=_missing_target(m))
    x0 = m.source.bottom
    y0 = m.target.bottom
    for y in sorted(range(m.target.n), key=lambda y: (m.target_rank[y], m.target.labels[y])):
        elems = preimage_below(m, y)
        sub = subposet(m.source, elems)
        r = restrict_rank(m.source_rank, elems)
        if not is_lower_eulerian(sub, r):
            return SfsWitness("near", y=y, detail="X<=y is not lower Eulerian")
        want = m.target_rank[y] - m.source_rank[x0]
        if poset_rank(sub) != want:
            return SfsWitness("near", y=y, detail=f"X<=y has rank {poset_rank(sub)}, expected {want}")
        if y == y0:
            closed, cr = adjoin_max(sub, r)
            if not is_eulerian(closed, cr):
                return SfsWitness("near", y=y, detail="X<=0 is not the boundary of an Eulerian poset")
        else:
            s = _semisuspension_candidate(sub, r)
            if s is None or not is_eulerian(s.poset, s.rank):
                return SfsWitness("near", y=y, detail="X<=y is not near-Eulerian")
            strict = preimage_below(m, y, strict=True)
            bd = [elems[i] for i in near_eulerian_boundary(sub)]
            if sorted(bd) != strict:
                return SfsWitness("near", y=y, detail="boundary of X<=y differs from X<y")
    return None


def sfs_witness(m: PosetMap, method: str = "eq31", local: bool = False) -> SfsWitness | None:
    """First failure of the chosen characterization, or ``None`` for a strong formal subdivision.

    Raises :class:`SfsPreconditionError` when the map is not even a candidate
    (endpoints not lower Eulerian, not order-preserving, or not rank-increasing).
    The equation methods also require strong surjectivity; the near-Eulerian
    characterization only needs surjectivity.  With ``local=True`` the endpoints
    need only be locally Eulerian; the near-Eulerian test is then unavailable.
    """
    method = _ALIASES.get(method, method)
    if method not in METHODS:
        raise PosetError(f"unknown method {method!r}; expected one of {METHODS}")
    if local and method == "near":
        raise PosetError("the near-Eulerian characterization needs lower Eulerian posets")
    _check_candidate(m, local=local)
    if method == "near":
        return _near_witness(m)
    w = _equation_witness(m, method)
    if w is not None:
        return w
    return strong_surjectivity_witness(m)


def is_sfs(m: PosetMap, method: str = "eq31", local: bool = False) -> bool:
    return sfs_witness(m, method, local) is None


def require_sfs(m: PosetMap, method: str = "eq31", local: bool = False) -> None:
    w = sfs_witness(m, method, local)
    if w is not None:
        raise SfsPreconditionError("sfs", f"not a strong formal subdivision: {w.describe(m)}")


def parity_check(m: PosetMap) -> tuple[int, int]:
    return int(_signs(m.source_rank).sum()), int(_signs(m.target_rank).sum())


# -- composition and restriction ----------------------------------------------------------


def compose(m1: PosetMap, m2: PosetMap) -> PosetMap:
    """``m2 after m1``."""
    if m1.target != m2.source:
        raise PosetError("cannot compose: target of the first map is not the source of the second")
    if _rank_by_label(m1.target, m1.target_rank) != _rank_by_label(m2.source, m2.source_rank):
        raise PosetError("cannot compose: rank functions differ on the middle poset")
    to_m2 = [m2.source.index(s) for s in m1.target.labels]
    return PosetMap(m1.source, m1.source_rank, m2.target, m2.target_rank, tuple(m2.image[to_m2[y]] for y in m1.image))


def restrict_to_ideal(m: PosetMap, ideal: Iterable[int]) -> PosetMap:
    ideal = sorted(set(ideal))
    if not ideal or not is_lower_ideal(m.target, ideal):
        raise PosetError("restriction needs a nonempty lower order ideal of the target")
    pos = {y: k for k, y in enumerate(ideal)}
    src = [x for x, y in enumerate(m.image) if y in pos]
    return PosetMap(
        subposet(m.source, src),
        restrict_rank(m.source_rank, src),
        subposet(m.target, ideal),
        restrict_rank(m.target_rank, ideal),
        tuple(pos[m.image[x]] for x in src),
    )


def restrict_above(m: PosetMap, x: int) -> PosetMap:
    src = m.source.up(x)
    tgt = m.target.up(m.image[x])
    pos = {y: k for k, y in enumerate(tgt)}
    return PosetMap(
        subposet(m.source, src),
        restrict_rank(m.source_rank, src),
        subposet(m.target, tgt),
        restrict_rank(m.target_rank, tgt),
        tuple(pos[m.image[v]] for v in src),
    )


# -- canonical subdivisions ------------------------------------------------------------------


def identity_sfs(p: Poset, r: Rank) -> PosetMap:
    return PosetMap(p, r, p, r, tuple(range(p.n)))


def to_B0(p: Poset, r: Rank) -> PosetMap:
    """The unique map from the boundary of an Eulerian poset to the one-point poset."""
    if not is_eulerian(p, r) or p.n < 2:
        raise SfsPreconditionError("eulerian", "to_B0 requires an Eulerian poset of positive rank")
    bp, br = boundary(p, r)
    b0, _ = boolean_algebra(0)
    return PosetMap(bp, br, b0, (r[p.top] - 1,), (0,) * bp.n)


def to_B1(p: Poset, r: Rank) -> PosetMap:
    """Send the boundary of a near-Eulerian poset to the bottom of B1 and everything else to the top."""
    try:
        semisuspension(p, r)
    except PosetError:
        raise SfsPreconditionError("near_eulerian", "to_B1 requires a near-Eulerian poset") from None
    b1, _ = boolean_algebra(1)
    low = r[p.bottom] + poset_rank(p) - 1
    bd = set(near_eulerian_boundary(p))
    return PosetMap(p, r, b1, (low, low + 1), tuple(0 if x in bd else 1 for x in range(p.n)))


def bipyramid_sfs(p: Poset, r: Rank) -> PosetMap:
    """``Pyr(boundary B) -> B``: bottom layer maps identically, top layer collapses to the top of ``B``."""
    if not is_eulerian(p, r) or p.n < 2:
        raise SfsPreconditionError("eulerian", "bipyramid_sfs requires an Eulerian poset of positive rank")
    bp, br = boundary(p, r)
    src, sr = pyramid(bp, br)
    keep = [i for i in range(p.n) if i != p.top]
    # pyramid lists (z, 0) before (z, 1) for each z
    image = []
    for k in range(bp.n):
        image.append(keep[k])
        image.append(p.top)
    return PosetMap(src, sr, p, r, tuple(image))


def product_sfs(m: PosetMap, m2: PosetMap) -> PosetMap:
    src, sr = direct_product(m.source, m.source_rank, m2.source, m2.source_rank)
    tgt, tr = direct_product(m.target, m.target_rank, m2.target, m2.target_rank)
    n2 = m2.target.n
    image = tuple(m.image[i] * n2 + m2.image[j] for i in range(m.source.n) for j in range(m2.source.n))
    return PosetMap(src, sr, tgt, tr, image)


def star_lift(p: Poset, r: Rank, m: PosetMap) -> PosetMap:
    """``B * X -> Y``: the boundary of ``B`` goes to the bottom of ``Y``, the rest follows ``m``."""
    src, sr = star_product(p, r, m.source, m.source_rank)
    x0 = m.source.bottom
    y0 = m.target.bottom
    shift = r[p.bottom] + poset_rank(p) - 1 - m.source_rank[x0]
    nl = p.n - 1
    rest = [x for x in range(m.source.n) if x != x0]
    image = (y0,) * nl + tuple(m.image[x] for x in rest)
    return PosetMap(src, sr, m.target, tuple(v + shift for v in m.target_rank), image)


def dual_diamond_lift(p: Poset, r: Rank, m: PosetMap) -> PosetMap:
    """``boundary(B) x X -> B dual-diamond Y``; elements whose image is the top of ``Y`` go to the new top."""
    if not is_eulerian(p, r) or p.n < 2:
        raise SfsPreconditionError("eulerian", "dual_diamond_lift requires an Eulerian poset of positive rank")
    if not is_eulerian(m.target, m.target_rank) or m.target.n < 2:
        raise SfsPreconditionError("eulerian", "dual_diamond_lift requires an Eulerian target of positive rank")
    bp, br = boundary(p, r)
    src, sr = direct_product(bp, br, m.source, m.source_rank)
    tgt, tr = dual_diamond_product(p, r, m.target, m.target_rank)
    ytop = m.target.top
    ykeep = [y for y in range(m.target.n) if y != ytop]
    ypos = {y: k for k, y in enumerate(ykeep)}
    ny = len(ykeep)
    top = tgt.n - 1
    image = []
    for z in range(bp.n):
        for x in range(m.source.n):
            y = m.image[x]
            image.append(top if y == ytop else z * ny + ypos[y])
    return PosetMap(src, sr, tgt, tr, tuple(image))


def preimage(m: PosetMap, ys: Sequence[int]) -> list[int]:
    ys = set(ys)
    return [x for x, y in enumerate(m.image) if y in ys]
