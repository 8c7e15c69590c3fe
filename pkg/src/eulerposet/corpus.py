"""Named example posets, triples, subdivisions and squares used by the verification suite."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np

from .constructions import (
    bipyramid,
    boolean_algebra,
    face_lattice_crosspolytope,
    face_lattice_cube,
    face_lattice_polygon,
    prism,
    pyramid,
    star_product,
    subdivided_interval,
)
from .cylinder import JoinTriple, SfsSquare, map_triple, validate_square
from .poset import (
    Poset,
    PosetError,
    Rank,
    adjoin_max,
    boundary,
    from_covers,
    is_eulerian,
    is_lower_eulerian,
    join_admissible_elements,
    poset_rank,
    semisuspension,
)
from .subdivision import (
    PosetMap,
    bipyramid_sfs,
    dual_diamond_lift,
    identity_sfs,
    is_order_preserving,
    is_rank_increasing,
    product_sfs,
    star_lift,
    to_B0,
    to_B1,
)


class Entry(NamedTuple):
    name: str
    poset: Poset
    rank: Rank


def base_polytopes() -> list[Entry]:
    """Boolean algebras, polygons, cubes and cross-polytopes of positive rank."""
    out = [Entry(f"B{n}", *boolean_algebra(n)) for n in range(1, 6)]
    out += [Entry(f"polygon{m}", *face_lattice_polygon(m)) for m in range(3, 9)]
    out += [Entry(f"cube{d}", *face_lattice_cube(d)) for d in range(1, 4)]
    out += [Entry(f"cross{d}", *face_lattice_crosspolytope(d)) for d in range(1, 4)]
    return out


def near_eulerian_corpus() -> list[Entry]:
    """Pyramids over boundaries, subdivided intervals, and a few Eulerian posets."""
    out = []
    for e in base_polytopes():
        if poset_rank(e.poset) <= 4:
            out.append(Entry(f"Pyr(bd {e.name})", *pyramid(*boundary(e.poset, e.rank))))
    out += [Entry(f"subdiv{s}", *subdivided_interval(s)) for s in range(4)]
    out += [Entry(n, *boolean_algebra(k)) for n, k in (("B1", 1), ("B2", 2), ("B3", 3))]
    return out


@lru_cache(maxsize=None)
def eulerian_corpus() -> tuple[Entry, ...]:
    base = base_polytopes()
    out = list(base)
    for e in base:
        out.append(Entry(f"Pyr({e.name})", *pyramid(e.poset, e.rank)))
        out.append(Entry(f"Prism({e.name})", *prism(e.poset, e.rank)))
        out.append(Entry(f"Bipyr({e.name})", *bipyramid(e.poset, e.rank)))
    small = [e for e in base if e.poset.n <= 10]
    for a, b in itertools.product(small, repeat=2):
        if poset_rank(a.poset) + poset_rank(b.poset) <= 5:
            out.append(Entry(f"{a.name}*{b.name}", *star_product(a.poset, a.rank, b.poset, b.rank)))
    for e in near_eulerian_corpus():
        s = semisuspension(e.poset, e.rank)
        out.append(Entry(f"Susp({e.name})", s.poset, s.rank))
    return tuple(out)


def small_eulerian_corpus(max_rank: int = 5) -> list[Entry]:
    return [e for e in eulerian_corpus() if poset_rank(e.poset) <= max_rank]


def triples(entries=None, max_size: int | None = None) -> Iterator[tuple[str, JoinTriple]]:
    """Every non-minimal join-admissible ``q`` of each corpus poset."""
    for e in entries if entries is not None else eulerian_corpus():
        if max_size is not None and e.poset.n > max_size:
            continue
        for q in join_admissible_elements(e.poset):
            if q != e.poset.bottom:
                yield f"{e.name} q={e.poset.labels[q]}", JoinTriple(e.poset, e.rank, q)


# -- subdivisions -----------------------------------------------------------------------------------


def builder_sfs() -> list[tuple[str, PosetMap]]:
    out: list[tuple[str, PosetMap]] = []
    small = [e for e in base_polytopes() if poset_rank(e.poset) <= 3]
    for e in small:
        out.append((f"id {e.name}", identity_sfs(e.poset, e.rank)))
        out.append((f"to_B0 {e.name}", to_B0(e.poset, e.rank)))
        out.append((f"to_B1 {e.name}", to_B1(e.poset, e.rank)))
        out.append((f"bipyr {e.name}", bipyramid_sfs(e.poset, e.rank)))
        out.append((f"id bd {e.name}", identity_sfs(*boundary(e.poset, e.rank))))
    for e in near_eulerian_corpus():
        if e.poset.n <= 16:
            out.append((f"to_B1 {e.name}", to_B1(e.poset, e.rank)))
    b2 = boolean_algebra(2)
    b1 = boolean_algebra(1)
    seeds = [m for name, m in out if name.startswith(("to_B0 B2", "bipyr B2", "to_B1 subdiv1", "to_B1 B2"))]
    for m in seeds:
        out.append(("product with id B1", product_sfs(m, identity_sfs(*b1))))
        out.append(("star B2 lift", star_lift(b2.poset, b2.rank, m)))
        if is_eulerian(m.target, m.target_rank) and m.target.n > 1:
            out.append(("dual diamond B2 lift", dual_diamond_lift(b2.poset, b2.rank, m)))
    return out


def non_example() -> PosetMap:
    """Boundary of B3 onto the boundary of the semisuspension of B2, collapsing ``{1,3}`` and ``{2,3}``."""
    b3, r3 = boolean_algebra(3)
    x, rx = boundary(b3, r3)
    b2, r2 = boolean_algebra(2)
    s = semisuspension(b2, r2)
    y, ry = boundary(s.poset, s.rank)
    z = s.poset.labels[s.zhat]
    img = {"{}": "{}", "{1}": "{1}", "{2}": "{2}", "{1,2}": "{1,2}", "{3}": "{2}", "{1,3}": z, "{2,3}": z}
    return PosetMap.from_labels(x, rx, y, ry, img)


def candidate_maps(source: Poset, sr: Rank, target: Poset, tr: Rank) -> Iterator[PosetMap]:
    """All order-preserving, rank-increasing maps, by backtracking in a linear extension."""
    order = sorted(range(source.n), key=lambda x: sr[x])
    allowed = [[y for y in range(target.n) if tr[y] >= sr[x]] for x in range(source.n)]
    image = [-1] * source.n

    def extend(k: int):
        if k == len(order):
            yield PosetMap(source, sr, target, tr, tuple(image))
            return
        x = order[k]
        below = [v for v in order[:k] if source.lt[v, x]]
        for y in allowed[x]:
            if all(target.le[image[v], y] for v in below):
                image[x] = y
                yield from extend(k + 1)
        image[x] = -1

    yield from extend(0)


def corrupted(m: PosetMap) -> Iterator[PosetMap]:
    """Single-value changes of ``m`` that stay order-preserving and rank-increasing."""
    for x in range(m.source.n):
        for y in range(m.target.n):
            if y == m.image[x]:
                continue
            img = list(m.image)
            img[x] = y
            c = PosetMap(m.source, m.source_rank, m.target, m.target_rank, tuple(img))
            if is_order_preserving(c) and is_rank_increasing(c):
                yield c


def enumerated_candidates() -> list[tuple[str, PosetMap]]:
    """Brute-force candidates between small lower Eulerian posets with compatible ranks."""
    b3, r3 = boolean_algebra(3)
    bd3 = boundary(b3, r3)
    b2, r2 = boolean_algebra(2)
    bd2 = boundary(b2, r2)
    sq = face_lattice_polygon(4)
    bdsq = boundary(sq.poset, sq.rank)
    sources = [("bd B3", bd3), ("bd square", bdsq), ("B2", (b2, r2)), ("subdiv1", subdivided_interval(1)),
               ("subdiv2", subdivided_interval(2))]
    targets = [("B0@2", boolean_algebra(0).poset, (2,)), ("B0@1", boolean_algebra(0).poset, (1,)),
               ("B1@1", boolean_algebra(1).poset, (1, 2)), ("B1@0", boolean_algebra(1).poset, (0, 1)),
               ("B2", b2, r2), ("bd B2", *bd2)]
    out = []
    for (sn, (sp, srk)), (tn, tp, trk) in itertools.product(sources, targets):
        if not is_lower_eulerian(sp, srk):
            continue
        for m in candidate_maps(sp, srk, tp, trk):
            out.append((f"{sn} -> {tn}", m))
    return out


# -- squares ------------------------------------------------------------------------------------------


def identity_square(m: PosetMap) -> SfsSquare:
    return SfsSquare(identity_sfs(m.source, m.source_rank), m, m, identity_sfs(m.target, m.target_rank))


def b0_square(m: PosetMap) -> SfsSquare:
    """``sigma`` between boundaries, both collapsed to a point."""
    xb, xr = adjoin_max(m.source, m.source_rank)
    yb, yr = adjoin_max(m.target, m.target_rank)
    f1, f2 = to_B0(xb, xr), to_B0(yb, yr)
    f1 = PosetMap(m.source, m.source_rank, f1.target, f1.target_rank, f1.image)
    f2 = PosetMap(m.target, m.target_rank, f2.target, f2.target_rank, f2.image)
    return SfsSquare(f1, m, identity_sfs(f1.target, f1.target_rank), f2)


def b1_square(m: PosetMap) -> SfsSquare:
    """``sigma`` between near-Eulerian posets, both sent to B1."""
    f1, f2 = to_B1(m.source, m.source_rank), to_B1(m.target, m.target_rank)
    return SfsSquare(f1, m, identity_sfs(f1.target, f1.target_rank), f2)


def product_square(m: PosetMap, m2: PosetMap) -> SfsSquare:
    """``sigma x id`` against ``id x sigma'`` on ``X x X'``."""
    idx, idy = identity_sfs(m.source, m.source_rank), identity_sfs(m.target, m.target_rank)
    idx2, idy2 = identity_sfs(m2.source, m2.source_rank), identity_sfs(m2.target, m2.target_rank)
    return SfsSquare(
        phi1=product_sfs(idx, m2),
        sigma=product_sfs(m, idx2),
        sigma_prime=product_sfs(m, idy2),
        phi2=product_sfs(idy, m2),
    )


def square_corpus() -> list[tuple[str, SfsSquare]]:
    """Identity, B0-, B1- and product squares; builders that do not apply are skipped."""
    maps = [(n, m) for n, m in builder_sfs() if m.source.n <= 20]
    maps += [(n, map_triple(t)) for n, t in triples(base_polytopes(), max_size=16)]
    small = [(n, m) for n, m in maps if m.source.n <= 8]
    makers = [(f"{kind}[{name}]", fn, (m,)) for name, m in maps
              for kind, fn in (("identity", identity_square), ("B0", b0_square), ("B1", b1_square))]
    makers += [(f"product[{n1} x {n2}]", product_square, (m1, m2))
               for (n1, m1), (n2, m2) in itertools.combinations(small[:8], 2)]
    out = []
    for name, fn, args in makers:
        try:
            sq = fn(*args)
            validate_square(sq)
        except PosetError:
            continue
        out.append((name, sq))
    return out


def cover_pairs(p: Poset) -> list[tuple[str, str]]:
    return [(p.labels[i], p.labels[j]) for i, j in p.covers]


def square_minus_edge_minus_top() -> Poset:
    """Face lattice of a square with one edge and the top removed."""
    sq = face_lattice_polygon(4).poset
    edge = next(i for i in range(sq.n) if sq.labels[i].count(",") == 1)
    keep = [i for i in range(sq.n) if i not in (edge, sq.top)]
    labels = [sq.labels[i] for i in keep]
    pairs = [(a, b) for a, b in cover_pairs(sq) if a in labels and b in labels]
    return from_covers(labels, pairs)


def mask_of(p: Poset, elements) -> np.ndarray:
    mask = np.zeros(p.n, dtype=bool)
    mask[list(elements)] = True
    return mask
