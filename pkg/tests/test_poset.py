import numpy as np
import pytest

from eulerposet.constructions import boolean_algebra, chain, disjoint_union, face_lattice_polygon, subdivided_interval
from eulerposet.poset import (
    NotRankedError,
    Poset,
    PosetError,
    adjoin_max,
    boundary,
    dual,
    even_odd_balance,
    from_covers,
    ideal,
    interval,
    is_eulerian,
    is_graded,
    is_isomorphic,
    is_join_admissible,
    is_join_admissible_ideal,
    is_locally_eulerian,
    is_lower_eulerian,
    is_near_eulerian,
    join,
    join_with_ideal,
    meet,
    natural_rank,
    near_eulerian_boundary,
    semisuspension,
    shift_rank,
)

from . import oracles


def b2():
    return from_covers(["0", "1", "2", "12"], [("0", "1"), ("0", "2"), ("1", "12"), ("2", "12")])


def test_from_covers_boolean_square():
    p = b2()
    assert p.n == 4
    assert p.bottom == 0 and p.top == 3
    assert natural_rank(p) == (0, 1, 1, 2)


def test_from_covers_single_point():
    p = from_covers(["x"], [])
    assert p.n == 1 and natural_rank(p) == (0,)


@pytest.mark.parametrize(
    "labels, pairs, message",
    [
        (["a", "b"], [("a", "b"), ("b", "a")], "cycle"),
        (["a", "a"], [], "duplicate"),
        (["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")], "not a cover"),
        ([], [], "empty"),
    ],
)
def test_from_covers_rejects(labels, pairs, message):
    with pytest.raises(PosetError, match=message):
        from_covers(labels, pairs)


def test_closure_matches_warshall_oracle():
    for m in (3, 4, 6):
        p = face_lattice_polygon(m).poset
        assert oracles.leq_pairs(p) == {(p.labels[i], p.labels[j]) for i in range(p.n) for j in range(p.n) if p.le[i, j]}


def test_not_ranked():
    q = from_covers(["0", "a", "b", "c", "t"], [("0", "a"), ("a", "t"), ("0", "b"), ("b", "c"), ("c", "t")])
    with pytest.raises(NotRankedError):
        natural_rank(q)
    assert not is_graded(q)


def test_shift_rank():
    assert shift_rank((0, 1, 1, 2), 3) == (3, 4, 4, 5)
    assert shift_rank((0, 1), 0) == (0, 1)
    assert shift_rank((0,), -1) == (-1,)


def test_intervals():
    p, r = boolean_algebra(3)
    z = p.index("{}")
    assert interval(p, z, p.index("{1,2}")) == boolean_algebra(2).poset
    q, _ = boolean_algebra(2)
    opened = interval(q, q.bottom, q.top, "open")
    assert opened.n == 2 and not opened.lt.any()
    with pytest.raises(PosetError):
        interval(q, q.index("{1}"), q.index("{2}"))


def test_ideals():
    p, _ = boolean_algebra(2)
    one = p.index("{1}")
    assert [p.labels[i] for i in ideal(p, [one], "lower")] == ["{}", "{1}"]
    assert [p.labels[i] for i in ideal(p, [one], "upper")] == ["{1}", "{1,2}"]
    assert ideal(p, [], "lower") == []


def test_joins_and_meets():
    p, _ = boolean_algebra(2)
    a, b = p.index("{1}"), p.index("{2}")
    assert join(p, a, b) == p.top
    assert meet(p, a, b) == p.bottom
    assert join(p, a, a) == a
    s = semisuspension(p, natural_rank(p))
    g = s.poset
    tops = [g.index("{1}"), g.index("{2}")]
    # both the old top and zhat sit above the two atoms
    assert join(g, *tops) is None
    assert meet(dual(g), *tops) is None


def test_join_admissible():
    p, _ = face_lattice_polygon(5)
    assert all(is_join_admissible(p, v) for v in range(p.n))
    assert is_join_admissible(p, p.bottom)


def test_join_admissible_ideal():
    p, _ = face_lattice_polygon(4)
    v = p.index("{1}")
    up = ideal(p, [v], "upper")
    assert is_join_admissible_ideal(p, up)
    assert all(join_with_ideal(p, z, up) == join(p, z, v) for z in range(p.n))
    assert is_join_admissible_ideal(p, range(p.n))
    assert all(join_with_ideal(p, z, range(p.n)) == z for z in range(p.n))
    s = semisuspension(*boolean_algebra(2))
    g = s.poset
    maxima = [g.index("{1,2}"), s.zhat]
    assert not is_join_admissible_ideal(g, maxima + [g.top])
    with pytest.raises(PosetError):
        is_join_admissible_ideal(p, [p.bottom])


def test_two_maximal_elements_of_boundary_have_no_join_ideal():
    s = semisuspension(*boolean_algebra(2))
    bd, _ = boundary(s.poset, s.rank)
    maxima = bd.maximal()
    assert len(maxima) == 2
    assert not is_join_admissible_ideal(bd, maxima)


@pytest.mark.parametrize("n", range(6))
def test_boolean_algebras_eulerian(n):
    p, r = boolean_algebra(n)
    assert is_eulerian(p, r)
    assert is_locally_eulerian(p, r) == oracles.is_locally_eulerian(p, r)


def test_three_chain_not_eulerian():
    p, r = chain(2)
    assert not is_locally_eulerian(p, r)
    assert not oracles.is_locally_eulerian(p, r)


def test_two_b1_glued_and_unglued():
    """Two disjoint B1's are locally but not lower Eulerian; adjoining a common top breaks local Eulerianness."""
    p, r = disjoint_union(*boolean_algebra(1), *boolean_algebra(1))
    assert is_locally_eulerian(p, r) and oracles.is_locally_eulerian(p, r)
    assert not is_lower_eulerian(p, r)
    topped, tr = adjoin_max(p, r)
    assert not is_locally_eulerian(topped, tr)
    assert not oracles.is_locally_eulerian(topped, tr)


def test_rank_shift_invariance():
    p, r = face_lattice_polygon(6)
    for s in (-3, 0, 5):
        assert is_locally_eulerian(p, shift_rank(r, s)) == is_locally_eulerian(p, r)


def test_dual():
    p, r = boolean_algebra(3)
    assert is_isomorphic(dual(p), p)
    assert dual(dual(p)).identical(p)
    c, _ = chain(2)
    d = dual(c)
    assert d.bottom == c.top and d.top == c.bottom


def test_boundary_and_semisuspension():
    p, r = boolean_algebra(3)
    bd, br = boundary(p, r)
    assert bd.n == 7 and even_odd_balance(bd, br) == 1
    assert is_near_eulerian(p, r)
    assert not is_near_eulerian(*boolean_algebra(0))
    with pytest.raises(PosetError, match="near-Eulerian"):
        semisuspension(*boolean_algebra(0))
    s = subdivided_interval(2)
    assert is_near_eulerian(*s)
    labels = sorted(s.poset.labels[i] for i in near_eulerian_boundary(s.poset))
    assert len(labels) == 3


def test_adjoin_max_rank():
    p, r = boolean_algebra(2)
    bd, br = boundary(p, r)
    closed, cr = adjoin_max(bd, br)
    assert closed.n == 4 and max(cr) == 2 and is_eulerian(closed, cr)


def test_even_odd_balance():
    assert even_odd_balance(*boolean_algebra(3)) == 0
    assert even_odd_balance(*boolean_algebra(0)) == 1


def test_poset_validation():
    lt = np.zeros((2, 2), dtype=bool)
    lt[0, 0] = True
    with pytest.raises(PosetError):
        Poset(["a", "b"], lt)
    bad = np.array([[False, True, False], [False, False, True], [False, False, False]])
    with pytest.raises(PosetError, match="transitive"):
        Poset(["a", "b", "c"], bad)


def test_label_equality_ignores_index_order():
    p, _ = boolean_algebra(2)
    order = [3, 1, 0, 2]
    q = Poset([p.labels[i] for i in order], p.lt[np.ix_(order, order)])
    assert p == q and hash(p) == hash(q)
    assert not p.identical(q)
