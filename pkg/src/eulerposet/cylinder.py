"""Non-Hausdorff mapping cylinders and the CYL/MAP correspondence."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .poset import (
    Poset,
    PosetError,
    Rank,
    is_join_admissible,
    is_join_admissible_ideal,
    is_locally_eulerian,
    is_lower_eulerian,
    join_table,
    joins_with_mask,
    restrict_rank,
    subposet,
)
from .subdivision import PosetMap, SfsPreconditionError, is_order_preserving, require_sfs, sfs_witness

X_TAG = "X:"
Y_TAG = "Y:"


class TripleError(PosetError):
    pass


@dataclass(frozen=True, eq=False)
class JoinTriple:
    gamma: Poset
    gamma_rank: Rank
    q: int

    @property
    def q_label(self) -> str:
        return self.gamma.labels[self.q]

    def identical(self, other: "JoinTriple") -> bool:
        return self.gamma.identical(other.gamma) and self.gamma_rank == other.gamma_rank and self.q == other.q

    def __eq__(self, other) -> bool:
        if not isinstance(other, JoinTriple):
            return NotImplemented
        return (
            self.gamma == other.gamma
            and dict(zip(self.gamma.labels, self.gamma_rank)) == dict(zip(other.gamma.labels, other.gamma_rank))
            and self.q_label == other.q_label
        )

    def __hash__(self) -> int:
        return hash((self.gamma, self.q_label))


def validate_triple(t: JoinTriple, allow_bottom: bool = False) -> None:
    if not is_lower_eulerian(t.gamma, t.gamma_rank):
        raise TripleError("gamma is not lower Eulerian")
    if not 0 <= t.q < t.gamma.n:
        raise TripleError("q is not an element of gamma")
    if not allow_bottom and t.q == t.gamma.bottom:
        raise TripleError("q is the minimum of gamma")
    if not is_join_admissible(t.gamma, t.q):
        raise TripleError(f"q={t.q_label!r} is not join-admissible")


# -- cylinders ----------------------------------------------------------------------------------


def mapping_cylinder(m: PosetMap) -> tuple[Poset, Rank]:
    """``X`` followed by ``Y``, with ``x < y`` whenever ``sigma(x) <= y``."""
    if not is_order_preserving(m):
        raise SfsPreconditionError("order_preserving", "map is not order-preserving")
    nx, ny = m.source.n, m.target.n
    lt = np.zeros((nx + ny, nx + ny), dtype=bool)
    lt[:nx, :nx] = m.source.lt
    lt[nx:, nx:] = m.target.lt
    lt[:nx, nx:] = m.target.le[list(m.image), :]
    labels = [X_TAG + s for s in m.source.labels] + [Y_TAG + s for s in m.target.labels]
    rank = tuple(m.source_rank) + tuple(v + 1 for v in m.target_rank)
    return Poset(labels, lt), rank


def cyl(m: PosetMap) -> JoinTriple:
    require_sfs(m)
    gamma, rank = mapping_cylinder(m)
    t = JoinTriple(gamma, rank, m.source.n + m.target.bottom)
    validate_triple(t)
    return t


def _strip(labels: Iterable[str], tag: str) -> list[str] | None:
    labels = list(labels)
    if all(s.startswith(tag) for s in labels):
        return [s[len(tag):] for s in labels]
    return None


def _split_labels(gamma: Poset, src: list[int], tgt: list[int]) -> tuple[list[str], list[str]]:
    """Drop the ``X:``/``Y:`` tags when they mark exactly the two halves."""
    xs = _strip((gamma.labels[i] for i in src), X_TAG)
    ys = _strip((gamma.labels[i] for i in tgt), Y_TAG)
    if xs is not None and ys is not None:
        return xs, ys
    return [gamma.labels[i] for i in src], [gamma.labels[i] for i in tgt]


def _map_from_mask(gamma: Poset, rank: Rank, mask: np.ndarray) -> PosetMap:
    tgt = [int(i) for i in np.flatnonzero(mask)]
    src = [int(i) for i in np.flatnonzero(~mask)]
    joins = joins_with_mask(gamma, mask)
    pos = {y: k for k, y in enumerate(tgt)}
    xl, yl = _split_labels(gamma, src, tgt)
    source = Poset(xl, subposet(gamma, src).lt)
    target = Poset(yl, subposet(gamma, tgt).lt)
    return PosetMap(
        source,
        restrict_rank(rank, src),
        target,
        tuple(v - 1 for v in restrict_rank(rank, tgt)),
        tuple(pos[joins[x]] for x in src),
    )


def map_triple(t: JoinTriple) -> PosetMap:
    """``Gamma - Gamma_{>=q} -> Gamma_{>=q}``, ``x -> x v q``."""
    validate_triple(t)
    m = _map_from_mask(t.gamma, t.gamma_rank, t.gamma.le[t.q].copy())
    require_sfs(m)
    return m


def tagged(t: JoinTriple) -> JoinTriple:
    """Relabel ``Gamma`` by membership in the source or target of ``map_triple(t)``."""
    return JoinTriple(tagged_ideal(t.gamma, t.gamma.le[t.q]), t.gamma_rank, t.q)


def roundtrip_cyl_map(m: PosetMap) -> bool:
    return map_triple(cyl(m)).identical(m)


def roundtrip_map_cyl(t: JoinTriple) -> bool:
    back = cyl(map_triple(t))
    return back == tagged(t)


# -- squares ------------------------------------------------------------------------------------


@dataclass(frozen=True)
class SfsSquare:
    """A commutative square ``phi2 . sigma = sigma_prime . phi1``."""

    phi1: PosetMap
    sigma: PosetMap
    sigma_prime: PosetMap
    phi2: PosetMap


def _same_end(a: Poset, ar: Rank, b: Poset, br: Rank) -> bool:
    return a == b and dict(zip(a.labels, ar)) == dict(zip(b.labels, br))


def _composite_labels(first: PosetMap, second: PosetMap) -> dict[str, str]:
    f, g = first.label_image(), second.label_image()
    return {x: g[y] for x, y in f.items()}


def validate_square(sq: SfsSquare) -> None:
    ends = [
        (sq.phi1.source, sq.phi1.source_rank, sq.sigma.source, sq.sigma.source_rank, "X"),
        (sq.sigma.target, sq.sigma.target_rank, sq.phi2.source, sq.phi2.source_rank, "Y"),
        (sq.phi1.target, sq.phi1.target_rank, sq.sigma_prime.source, sq.sigma_prime.source_rank, "X'"),
        (sq.sigma_prime.target, sq.sigma_prime.target_rank, sq.phi2.target, sq.phi2.target_rank, "Y'"),
    ]
    for a, ar, b, br, name in ends:
        if not _same_end(a, ar, b, br):
            raise PosetError(f"square corners disagree at {name}")
    if _composite_labels(sq.sigma, sq.phi2) != _composite_labels(sq.phi1, sq.sigma_prime):
        raise PosetError("square does not commute")
    for name in ("phi1", "sigma", "sigma_prime", "phi2"):
        m = getattr(sq, name)
        w = sfs_witness(m)
        if w is not None:
            raise SfsPreconditionError("sfs", f"{name} is not a strong formal subdivision: {w.describe(m)}")


def is_triple_morphism(phi: PosetMap, t: JoinTriple, t2: JoinTriple) -> bool:
    if phi.image[t.q] != t2.q:
        return False
    j = join_table(t.gamma, t.q)
    j2 = join_table(t2.gamma, t2.q)
    return all(phi.image[j[z]] == j2[phi.image[z]] for z in range(t.gamma.n))


def cyl_square(sq: SfsSquare) -> PosetMap:
    """``Cyl(sigma) -> Cyl(sigma')``, acting by ``phi1`` on ``X`` and ``phi2`` on ``Y``."""
    validate_square(sq)
    t, t2 = cyl(sq.sigma), cyl(sq.sigma_prime)
    f1, f2 = sq.phi1.label_image(), sq.phi2.label_image()
    nx2 = sq.sigma_prime.source.n
    image = tuple(sq.sigma_prime.source.index(f1[s]) for s in sq.sigma.source.labels) + tuple(
        nx2 + sq.sigma_prime.target.index(f2[s]) for s in sq.sigma.target.labels
    )
    phi = PosetMap(t.gamma, t.gamma_rank, t2.gamma, t2.gamma_rank, image)
    require_sfs(phi)
    if not is_triple_morphism(phi, t, t2):
        raise PosetError("cylinder map violates the morphism conditions")
    return phi


def map_square(phi: PosetMap, t: JoinTriple, t2: JoinTriple) -> SfsSquare:
    if not (_same_end(phi.source, phi.source_rank, t.gamma, t.gamma_rank)
            and _same_end(phi.target, phi.target_rank, t2.gamma, t2.gamma_rank)):
        raise PosetError("morphism endpoints do not match the triples")
    # work in the triples' own indexing
    spos = [phi.source.index(s) for s in t.gamma.labels]
    tpos = [t2.gamma.index(s) for s in phi.target.labels]
    img = [tpos[phi.image[spos[z]]] for z in range(t.gamma.n)]
    phi = PosetMap(t.gamma, t.gamma_rank, t2.gamma, t2.gamma_rank, tuple(img))
    require_sfs(phi)
    if not is_triple_morphism(phi, t, t2):
        raise PosetError("phi(q) != q' or phi does not commute with joins")
    up = t.gamma.le[t.q]
    up2 = t2.gamma.le[t2.q]
    if not np.array_equal(up2[list(phi.image)], up):
        raise PosetError("preimage of Gamma'_{>=q'} is not Gamma_{>=q}")
    sigma, sigma2 = map_triple(t), map_triple(t2)
    src = [int(i) for i in np.flatnonzero(~up)]
    tgt = [int(i) for i in np.flatnonzero(up)]
    src2 = {int(g): k for k, g in enumerate(np.flatnonzero(~up2))}
    tgt2 = {int(g): k for k, g in enumerate(np.flatnonzero(up2))}
    phi1 = PosetMap(sigma.source, sigma.source_rank, sigma2.source, sigma2.source_rank,
                    tuple(src2[phi.image[g]] for g in src))
    phi2 = PosetMap(sigma.target, sigma.target_rank, sigma2.target, sigma2.target_rank,
                    tuple(tgt2[phi.image[g]] for g in tgt))
    sq = SfsSquare(phi1, sigma, sigma2, phi2)
    validate_square(sq)
    return sq


def involution(sq: SfsSquare) -> SfsSquare:
    """Reflect the square through its diagonal."""
    return SfsSquare(phi1=sq.sigma, sigma=sq.phi1, sigma_prime=sq.phi2, phi2=sq.sigma_prime)


def square_cylinder(sq: SfsSquare) -> tuple[Poset, Rank]:
    """``Cyl`` of ``cyl_square(sq)``; elements are tagged ``X:X:``, ``X:Y:``, ``Y:X:``, ``Y:Y:``."""
    return mapping_cylinder(cyl_square(sq))


def swap_middle_tags(p: Poset) -> Poset:
    """Exchange the ``X:Y:`` and ``Y:X:`` tags, matching the cylinder of the reflected square."""
    out = []
    for s in p.labels:
        if s.startswith("X:Y:"):
            s = "Y:X:" + s[4:]
        elif s.startswith("Y:X:"):
            s = "X:Y:" + s[4:]
        out.append(s)
    return Poset(out, p.lt)


# -- upper-ideal version ------------------------------------------------------------------------


def cyl_ideal(m: PosetMap) -> tuple[Poset, Rank, list[int]]:
    """``(Cyl(sigma), rank, Y)`` for a subdivision of locally Eulerian posets."""
    require_sfs(m, local=True)
    gamma, rank = mapping_cylinder(m)
    ideal = list(range(m.source.n, gamma.n))
    _validate_ideal(gamma, rank, ideal)
    return gamma, rank, ideal


def _validate_ideal(gamma: Poset, rank: Rank, ideal: list[int]) -> None:
    if not is_locally_eulerian(gamma, rank):
        raise TripleError("gamma is not locally Eulerian")
    if not is_join_admissible_ideal(gamma, ideal):
        raise TripleError("ideal is not join-admissible")
    if set(ideal) & set(gamma.minimal()):
        raise TripleError("ideal contains a minimal element of gamma")


def map_ideal(gamma: Poset, rank: Rank, ideal: Iterable[int]) -> PosetMap:
    """``Gamma - I -> I``, ``x -> x v I``."""
    ideal = sorted(set(int(i) for i in ideal))
    _validate_ideal(gamma, rank, ideal)
    mask = np.zeros(gamma.n, dtype=bool)
    mask[ideal] = True
    m = _map_from_mask(gamma, rank, mask)
    require_sfs(m, local=True)
    return m


def roundtrip_cyl_map_ideal(m: PosetMap) -> bool:
    gamma, rank, ideal = cyl_ideal(m)
    return map_ideal(gamma, rank, ideal).identical(m)


def roundtrip_map_cyl_ideal(gamma: Poset, rank: Rank, ideal: Iterable[int]) -> bool:
    ideal = sorted(set(ideal))
    m = map_ideal(gamma, rank, ideal)
    g2, r2, i2 = cyl_ideal(m)
    mask = np.zeros(gamma.n, dtype=bool)
    mask[ideal] = True
    t = tagged_ideal(gamma, mask)
    ranks = dict(zip(t.labels, rank))
    return (
        g2 == t
        and dict(zip(g2.labels, r2)) == ranks
        and {g2.labels[i] for i in i2} == {t.labels[i] for i in ideal}
    )


def tagged_ideal(gamma: Poset, mask: np.ndarray) -> Poset:
    src = [int(i) for i in np.flatnonzero(~mask)]
    tgt = [int(i) for i in np.flatnonzero(mask)]
    xl, yl = _split_labels(gamma, src, tgt)
    labels = list(gamma.labels)
    for i, s in zip(src, xl):
        labels[i] = X_TAG + s
    for i, s in zip(tgt, yl):
        labels[i] = Y_TAG + s
    return Poset(labels, gamma.lt)
