import pytest

from eulerposet.constructions import boolean_algebra, disjoint_union, face_lattice_polygon, subdivided_interval
from eulerposet.corpus import (
    base_polytopes,
    builder_sfs,
    identity_square,
    non_example,
    product_square,
    square_corpus,
    triples,
)
from eulerposet.cylinder import (
    JoinTriple,
    TripleError,
    cyl,
    cyl_ideal,
    cyl_square,
    involution,
    is_triple_morphism,
    map_ideal,
    map_square,
    map_triple,
    mapping_cylinder,
    roundtrip_cyl_map,
    roundtrip_cyl_map_ideal,
    roundtrip_map_cyl,
    roundtrip_map_cyl_ideal,
    square_cylinder,
    swap_middle_tags,
    tagged,
    validate_square,
)
from eulerposet.poset import PosetError, ideal, is_lower_eulerian, natural_rank
from eulerposet.subdivision import PosetMap, SfsPreconditionError, identity_sfs, is_sfs, to_B1

from . import oracles


@pytest.fixture(scope="module")
def squares():
    return [(n, sq) for n, sq in square_corpus() if sq.sigma.source.n + sq.sigma.target.n <= 14]


def test_mapping_cylinder_matches_definition():
    for name, m in builder_sfs()[:30]:
        gamma, rank = mapping_cylinder(m)
        sle = oracles.leq_pairs(m.source)
        tle = oracles.leq_pairs(m.target)
        img = m.label_image()
        want = {("X:" + a, "X:" + b) for a, b in sle} | {("Y:" + a, "Y:" + b) for a, b in tle}
        want |= {("X:" + x, "Y:" + y) for x in m.source.labels for y in m.target.labels if (img[x], y) in tle}
        assert oracles.leq_pairs(gamma) == want, name
        assert rank[: m.source.n] == m.source_rank
        assert rank[m.source.n:] == tuple(v + 1 for v in m.target_rank)


def test_cylinder_is_lower_eulerian():
    for name, m in builder_sfs():
        t = cyl(m)
        assert is_lower_eulerian(t.gamma, t.gamma_rank), name
        assert t.q_label == "Y:" + m.target.labels[m.target.bottom]


def test_roundtrip_cyl_map():
    for name, m in builder_sfs():
        assert roundtrip_cyl_map(m), name


def test_roundtrip_map_cyl():
    small = [e for e in base_polytopes() if e.poset.n <= 12]
    count = 0
    for name, t in triples(small):
        assert roundtrip_map_cyl(t), name
        count += 1
    assert count > 30


def test_map_of_boolean_algebra():
    p, r = boolean_algebra(2)
    m = map_triple(JoinTriple(p, r, p.index("{1}")))
    assert m.source.labels == ("{}", "{2}")
    assert m.target.labels == ("{1}", "{1,2}")
    assert m.label_image() == {"{}": "{1}", "{2}": "{1,2}"}
    assert m.target_rank == (0, 1)


def test_tagged_labels():
    p, r = boolean_algebra(2)
    t = tagged(JoinTriple(p, r, p.index("{2}")))
    assert sorted(t.gamma.labels) == ["X:{1}", "X:{}", "Y:{1,2}", "Y:{2}"]


def test_cyl_rejects_non_sfs():
    with pytest.raises(SfsPreconditionError):
        cyl(non_example())


def test_triple_validation():
    p, r = face_lattice_polygon(4)
    with pytest.raises(TripleError, match="minimum"):
        map_triple(JoinTriple(p, r, p.bottom))
    g, gr = disjoint_union(*boolean_algebra(1), *boolean_algebra(1))
    with pytest.raises(TripleError, match="lower Eulerian"):
        map_triple(JoinTriple(g, gr, 1))


def test_top_is_a_valid_q():
    p, r = face_lattice_polygon(5)
    m = map_triple(JoinTriple(p, r, p.top))
    assert m.target.n == 1 and m.source.n == p.n - 1


# -- squares ---------------------------------------------------------------------------------------


def test_square_corpus_is_valid(squares):
    assert len(squares) > 50
    for name, sq in squares:
        validate_square(sq)


def test_square_validation():
    m = to_B1(*subdivided_interval(1))
    sq = identity_square(m)
    shifted = identity_sfs(*boolean_algebra(1))
    with pytest.raises(PosetError, match="corners disagree"):
        validate_square(type(sq)(sq.phi1, sq.sigma, sq.sigma_prime, shifted))
    b2, r2 = boolean_algebra(2)
    swap = PosetMap(b2, r2, b2, r2, (0, 2, 1, 3))
    ident = identity_sfs(b2, r2)
    with pytest.raises(PosetError, match="commute"):
        validate_square(type(sq)(swap, ident, ident, ident))
    validate_square(type(sq)(swap, ident, ident, swap))


def test_cyl_square_is_morphism(squares):
    for name, sq in squares:
        phi = cyl_square(sq)
        assert is_sfs(phi), name
        assert is_triple_morphism(phi, cyl(sq.sigma), cyl(sq.sigma_prime)), name


def test_map_square_inverts_cyl_square(squares):
    for name, sq in squares:
        phi = cyl_square(sq)
        back = map_square(phi, cyl(sq.sigma), cyl(sq.sigma_prime))
        for part in ("phi1", "sigma", "sigma_prime", "phi2"):
            assert getattr(back, part).identical(getattr(sq, part)), (name, part)


def test_four_way_cylinder_matches_clauses(squares):
    for name, sq in squares:
        p, rank = square_cylinder(sq)
        pairs, ranks = oracles.four_way_cylinder(sq)
        assert oracles.leq_pairs(p) == pairs, name
        assert dict(zip(p.labels, rank)) == ranks, name


def test_involution_symmetry(squares):
    for name, sq in squares:
        flipped = involution(sq)
        assert involution(flipped) == sq
        p, rank = square_cylinder(sq)
        q, rank2 = square_cylinder(flipped)
        swapped = swap_middle_tags(p)
        assert q == swapped, name
        assert dict(zip(q.labels, rank2)) == dict(zip(swapped.labels, rank)), name


def test_product_square_involution():
    a = to_B1(*subdivided_interval(1))
    b = identity_sfs(*boolean_algebra(1))
    sq = product_square(a, b)
    validate_square(sq)
    validate_square(involution(sq))


def test_map_square_rejects_wrong_q():
    m = to_B1(*subdivided_interval(1))
    t = cyl(m)
    phi = identity_sfs(t.gamma, t.gamma_rank)
    other = JoinTriple(t.gamma, t.gamma_rank, t.gamma.top)
    with pytest.raises(PosetError):
        map_square(phi, t, other)


# -- the upper-ideal version ---------------------------------------------------------------------


def two_b1():
    return disjoint_union(*boolean_algebra(1), *boolean_algebra(1))


def test_ideal_variant_on_locally_eulerian_posets():
    p, r = two_b1()
    m = identity_sfs(p, r)
    assert is_sfs(m, local=True)
    assert roundtrip_cyl_map_ideal(m)
    gamma, rank, ideal_ = cyl_ideal(m)
    assert len(ideal_) == 4
    assert roundtrip_map_cyl_ideal(gamma, rank, ideal_)


def test_ideal_variant_agrees_with_triples():
    for name, t in triples([e for e in base_polytopes() if e.poset.n <= 10]):
        up = ideal(t.gamma, [t.q], "upper")
        a = map_ideal(t.gamma, t.gamma_rank, up)
        assert a.identical(map_triple(t)), name
        assert roundtrip_map_cyl_ideal(t.gamma, t.gamma_rank, up), name


def test_ideal_validation():
    p, r = face_lattice_polygon(4)
    with pytest.raises(TripleError, match="minimal"):
        map_ideal(p, r, range(p.n))
    bd = [i for i in range(p.n) if i != p.top and r[i] == 2]
    with pytest.raises(TripleError, match="join-admissible"):
        map_ideal(p, r, bd + [p.top])


def test_natural_rank_of_cylinder():
    m = to_B1(*subdivided_interval(2))
    t = cyl(m)
    assert natural_rank(t.gamma) == t.gamma_rank
