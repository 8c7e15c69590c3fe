"""Flag vectors, ab-polynomials, cd-indices and the mapping-cylinder decomposition of the cd-index."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg
from .cylinder import JoinTriple, map_triple
from .ncpoly import NCPoly, cd_monomials, expand_cd
from .poset import (
    Poset,
    PosetError,
    Rank,
    adjoin_max,
    interval,
    is_eulerian,
    natural_rank,
    near_eulerian_boundary,
    poset_rank,
    semisuspension,
    subposet,
)
from .subdivision import preimage_below


class NotEulerianError(PosetError):
    pass


def _bounded_graded(p: Poset) -> tuple[int, int, Rank]:
    if p.bottom is None or p.top is None:
        raise NotEulerianError("flag statistics need a poset with bottom and top")
    r = natural_rank(p)
    return p.bottom, p.top, r


def _chain_counts(p: Poset, r: Rank, levels: Sequence[int], skip: int | None = None) -> int:
    """Maximal chains ``0 < z_1 < ... < z_k < 1`` with ``r(z_i) = levels[i]``, avoiding ``skip``."""
    bottom, top = p.bottom, p.top
    lt = p.lt.astype(np.float64)
    current = np.zeros(p.n)
    current[bottom] = 1.0
    for lev in list(levels) + [r[top]]:
        mask = np.array([r[z] == lev for z in range(p.n)], dtype=np.float64)
        if skip is not None:
            mask[skip] = 0.0
        current = (current @ lt) * mask
    return int(round(current[top]))


def flag_count(p: Poset, r: Rank | None, S: Sequence[int]) -> int:
    """``f_S``: maximal chains of the rank-selected subposet ``p_S`` (ranks measured from the bottom)."""
    _bounded_graded(p)
    nat = natural_rank(p)
    n = nat[p.top] - 1
    S = sorted(set(S))
    if any(not 1 <= s <= n for s in S):
        raise PosetError(f"rank selection must lie in 1..{n}")
    return _chain_counts(p, nat, S)


def flag_vector(p: Poset, r: Rank | None = None) -> dict[tuple[int, ...], int]:
    _bounded_graded(p)
    nat = natural_rank(p)
    n = nat[p.top] - 1
    return {
        S: _chain_counts(p, nat, S)
        for k in range(n + 1)
        for S in itertools.combinations(range(1, n + 1), k)
    }


def _psi_from_counts(n: int, counts: dict[tuple[int, ...], int]) -> NCPoly:
    out: dict[str, int] = {}
    for S, f in counts.items():
        if not f:
            continue
        # expand w_S = prod (a - b or b) directly into words
        choices = [("b",) if i in S else ("a", "b") for i in range(1, n + 1)]
        signs = [(1,) if i in S else (1, -1) for i in range(1, n + 1)]
        for letters, sg in zip(itertools.product(*choices), itertools.product(*signs)):
            w = "".join(letters)
            out[w] = out.get(w, 0) + f * int(np.prod(sg))
    return NCPoly("ab", out)


class _Shape:
    """Hash a poset by its order matrix alone; flag statistics ignore labels."""

    __slots__ = ("poset", "key")

    def __init__(self, p: Poset):
        self.poset = p
        self.key = (p.n, p.lt.tobytes())

    def __hash__(self) -> int:
        return hash(self.key)

    def __eq__(self, other) -> bool:
        return isinstance(other, _Shape) and self.key == other.key


def ab_polynomial(p: Poset, r: Rank | None = None) -> NCPoly:
    """``Psi``: the ab-generating polynomial of the flag f-vector."""
    return _ab_cached(_Shape(p))


@lru_cache(maxsize=8192)
def _ab_cached(shape: _Shape) -> NCPoly:
    p = shape.poset
    _bounded_graded(p)
    nat = natural_rank(p)
    n = nat[p.top] - 1
    if n < 0:
        raise NotEulerianError("the one-element poset has no ab-polynomial")
    return _psi_from_counts(n, flag_vector(p))


@lru_cache(maxsize=None)
def _cd_basis(n: int):
    """cd-monomials of degree ``n`` and a left inverse of their ab-expansion matrix."""
    monos = cd_monomials(n)
    words = ["".join(w) for w in itertools.product("ab", repeat=n)]
    cols = [expand_cd(NCPoly("cd", {m: 1})) for m in monos]
    mat = [[int(c.coeff(w)) for c in cols] for w in words]
    # choose independent rows greedily so the square system is invertible
    chosen: list[int] = []
    for i in range(len(words)):
        if linalg.rank([mat[j] for j in chosen + [i]]) > len(chosen):
            chosen.append(i)
        if len(chosen) == len(monos):
            break
    square = [mat[i] for i in chosen]
    inverse_cols = [linalg.solve(square, [int(k == j) for k in range(len(monos))]) for j in range(len(monos))]
    inverse = [[inverse_cols[j][i] for j in range(len(monos))] for i in range(len(monos))]
    return monos, [words[i] for i in chosen], inverse


def cd_from_ab(psi: NCPoly) -> NCPoly:
    """The unique cd-polynomial expanding to ``psi``; raises if none exists."""
    if psi.alphabet != "ab":
        raise PosetError("expected an ab-polynomial")
    if not psi:
        return NCPoly.zero("cd")
    degs = psi.degrees()
    if len(degs) != 1:
        raise NotEulerianError("ab-polynomial is not homogeneous")
    n = degs.pop()
    monos, rows, inverse = _cd_basis(n)
    rhs = [psi.coeff(w) for w in rows]
    coeffs = [sum((inverse[i][j] * rhs[j] for j in range(len(rows))), Fraction(0)) for i in range(len(monos))]
    phi = NCPoly("cd", dict(zip(monos, coeffs)))
    if expand_cd(phi) != psi:
        raise NotEulerianError("no cd-polynomial expands to this ab-polynomial")
    return phi


def cd_index(p: Poset, r: Rank | None = None) -> NCPoly:
    """``Phi``; the rank argument is accepted for symmetry but only the order matters."""
    return _cd_cached(_Shape(p))


@lru_cache(maxsize=8192)
def _cd_cached(shape: _Shape) -> NCPoly:
    p = shape.poset
    if p.n < 2:
        raise NotEulerianError("cd-index needs an Eulerian poset of positive rank")
    if not is_eulerian(p, natural_rank(p)):
        raise NotEulerianError("cd-index needs an Eulerian poset")
    return cd_from_ab(ab_polynomial(p))


def d_chain_sum(p: Poset, r: Rank | None = None) -> NCPoly:
    """Sum over ``0 < z < 1`` of ``Phi([0, z]) d Phi([z, 1])``."""
    bottom, top, _ = _bounded_graded(p)
    d = NCPoly("cd", {"d": 1})
    out = NCPoly.zero("cd")
    for z in range(p.n):
        if z in (bottom, top):
            continue
        out = out + cd_index(interval(p, bottom, z)) * d * cd_index(interval(p, z, top))
    return out


# -- near-Eulerian posets -------------------------------------------------------------------------


def closed_boundary(p: Poset, r: Rank) -> Poset:
    """The boundary of a near-Eulerian poset with a top adjoined."""
    bd = near_eulerian_boundary(p)
    return adjoin_max(subposet(p, bd), tuple(r[i] for i in bd)).poset


def local_cd_index(p: Poset, r: Rank) -> NCPoly:
    """``Phi(semisuspension) - Phi(closed boundary) c``."""
    try:
        s = semisuspension(p, r)
    except PosetError:
        raise NotEulerianError("local cd-index needs a near-Eulerian poset") from None
    return cd_index(s.poset) - cd_index(closed_boundary(p, r)) * NCPoly("cd", {"c": 1})


def local_ab_polynomial(p: Poset, r: Rank) -> NCPoly:
    return expand_cd(local_cd_index(p, r))


def ab_polynomial_relative(p: Poset, r: Rank) -> NCPoly:
    """Flag polynomial of a near-Eulerian poset counting only chains of the semisuspension that avoid ``zhat``."""
    s = semisuspension(p, r)
    g = s.poset
    nat = natural_rank(g)
    n = nat[g.top] - 1
    counts = {
        S: _chain_counts(g, nat, S, skip=s.zhat)
        for k in range(n + 1)
        for S in itertools.combinations(range(1, n + 1), k)
    }
    return _psi_from_counts(n, counts)


# -- the decomposition formula --------------------------------------------------------------------


@dataclass
class CdFormulaTerms:
    """Pieces of the cd-index decomposition of ``Gamma`` along ``q``."""

    local_x: NCPoly
    boundary_term: NCPoly
    bottom_term: NCPoly
    local_terms: dict[str, NCPoly] = field(default_factory=dict)
    d_terms: dict[str, NCPoly] = field(default_factory=dict)

    def bracket(self) -> NCPoly:
        out = self.boundary_term + self.bottom_term
        for poly in list(self.local_terms.values()) + list(self.d_terms.values()):
            out = out + poly
        return out

    def half_bracket(self) -> NCPoly:
        half = self.bracket() / 2
        if not half.is_integral():
            raise ArithmeticError("half of the bracketed sum is not integral")
        return half

    def total(self) -> NCPoly:
        return self.local_x + self.half_bracket()

    def summands(self) -> list[NCPoly]:
        return [self.local_x, self.boundary_term, self.bottom_term, *self.local_terms.values(), *self.d_terms.values()]


def cd_formula_terms(t: JoinTriple) -> CdFormulaTerms:
    g = t.gamma
    if not is_eulerian(g, t.gamma_rank) or g.n < 2:
        raise PosetError("the formula needs an Eulerian poset of positive rank")
    if t.q in (g.bottom, g.top):
        raise PosetError("q must differ from the bottom and top of gamma")
    m = map_triple(t)
    X, rx, Y = m.source, m.source_rank, m.target
    c = NCPoly("cd", {"c": 1})
    d = NCPoly("cd", {"d": 1})
    y0, y1 = Y.bottom, Y.top
    phi_y = cd_index(Y)

    below0 = preimage_below(m, y0)
    closed0 = adjoin_max(subposet(X, below0), tuple(rx[i] for i in below0)).poset
    terms = CdFormulaTerms(
        local_x=local_cd_index(X, rx),
        boundary_term=cd_index(closed_boundary(X, rx)) * c,
        bottom_term=cd_index(closed0) * c * phi_y,
    )
    for y in range(Y.n):
        if y in (y0, y1):
            continue
        le = preimage_below(m, y)
        lt = preimage_below(m, y, strict=True)
        sub = subposet(X, le)
        sub_r = tuple(rx[i] for i in le)
        bd = sorted(le[i] for i in near_eulerian_boundary(sub))
        if bd != lt:
            raise PosetError(f"boundary of X<=y differs from X<y at y={Y.labels[y]!r}")
        upper = cd_index(interval(Y, y, y1))
        closed_lt = adjoin_max(subposet(X, lt), tuple(rx[i] for i in lt)).poset
        terms.local_terms[Y.labels[y]] = local_cd_index(sub, sub_r) * c * upper
        terms.d_terms[Y.labels[y]] = cd_index(closed_lt) * d * upper
    return terms


def cd_formula_rhs(t: JoinTriple) -> NCPoly:
    return cd_formula_terms(t).total()
