import json

import pytest

from eulerposet.constructions import boolean_algebra, face_lattice_polygon
from eulerposet.corpus import builder_sfs, identity_square, non_example
from eulerposet.cylinder import JoinTriple
from eulerposet.poset import permute
from eulerposet.serialize import (
    FormatError,
    dumps,
    loads,
    map_from_obj,
    map_to_obj,
    poset_from_obj,
    poset_to_obj,
    square_from_obj,
    square_to_obj,
    to_dot,
    triple_from_obj,
    triple_to_obj,
)
from eulerposet.subdivision import to_B1


def test_poset_round_trip():
    p, r = face_lattice_polygon(5)
    obj = poset_to_obj(p, r)
    assert obj["labels"] == sorted(obj["labels"])
    q, r2 = poset_from_obj(loads(dumps(obj)))
    assert q == p
    assert dict(zip(q.labels, r2)) == dict(zip(p.labels, r))


def test_canonical_form_ignores_index_order():
    p, r = boolean_algebra(3)
    order = list(reversed(range(p.n)))
    q = permute(p, order)
    rq = tuple(r[i] for i in order)
    assert dumps(poset_to_obj(p, r)) == dumps(poset_to_obj(q, rq))


def test_rank_is_optional():
    p, _ = boolean_algebra(2)
    q, r = poset_from_obj(poset_to_obj(p))
    assert q == p and r is None


def test_dumps_format():
    text = dumps({"b": 1, "a": [1, 2]})
    assert text == '{"a": [1, 2], "b": 1}\n'


@pytest.mark.parametrize(
    "obj, message",
    [
        ({"covers": []}, "labels"),
        ({"labels": [], "covers": []}, "at least one"),
        ({"labels": [1], "covers": []}, "strings"),
        ({"labels": ["a", "b"], "covers": [["a"]]}, "pair"),
        ({"labels": ["a", "b"], "covers": [["a", "b"]], "rank": [0]}, "2 integers"),
        ({"labels": ["a", "b"], "covers": [["a", "b"]], "rank": [0, 2]}, "increase"),
        ({"labels": ["a", "b"], "covers": [["a", "b"]], "rank": [0, True]}, "integers"),
    ],
)
def test_poset_errors(obj, message):
    with pytest.raises(FormatError, match=message):
        poset_from_obj(obj)


def test_loads_errors():
    with pytest.raises(FormatError, match="empty"):
        loads("  \n")
    with pytest.raises(FormatError, match="invalid JSON"):
        loads("{")


def test_map_round_trip():
    for _, m in builder_sfs()[:20]:
        back = map_from_obj(json.loads(dumps(map_to_obj(m))))
        assert back.label_image() == m.label_image()
        assert back.source == m.source and back.target == m.target
    m = non_example()
    assert map_from_obj(map_to_obj(m)).label_image() == m.label_image()


def test_map_errors():
    obj = map_to_obj(to_B1(*boolean_algebra(2)))
    twice = dict(obj, image=obj["image"] + [obj["image"][0]])
    with pytest.raises(FormatError, match="twice"):
        map_from_obj(twice)
    stray = dict(obj, image=[["{1}", "nowhere"]])
    with pytest.raises(FormatError, match="not a target label"):
        map_from_obj(stray)
    with pytest.raises(FormatError):
        map_from_obj(dict(obj, source_rank=None))


def test_triple_round_trip():
    p, r = face_lattice_polygon(4)
    t = JoinTriple(p, r, p.index("{1}"))
    obj = triple_to_obj(t)
    assert set(obj) == {"poset", "rank", "q"}
    assert triple_from_obj(loads(dumps(obj))) == t
    with pytest.raises(FormatError, match="not an element"):
        triple_from_obj(dict(obj, q="zzz"))


def test_square_round_trip():
    sq = identity_square(to_B1(*boolean_algebra(2)))
    back = square_from_obj(loads(dumps(square_to_obj(sq))))
    for part in ("phi1", "sigma", "sigma_prime", "phi2"):
        assert getattr(back, part).label_image() == getattr(sq, part).label_image()
    with pytest.raises(FormatError, match="phi2"):
        square_from_obj({k: v for k, v in square_to_obj(sq).items() if k != "phi2"})


def test_dot_output():
    p, r = boolean_algebra(2)
    dot = to_dot(p, r)
    lines = dot.splitlines()
    assert lines[0] == "digraph hasse {" and lines[-1] == "}"
    assert "  rankdir=BT;" in lines
    assert '  { rank=same; "{1}"; "{2}"; }' in lines
    assert sum(1 for s in lines if "->" in s) == 4
    assert to_dot(p).count("rank=same") == 0
    odd, _ = poset_from_obj({"labels": ['a"b', "c"], "covers": [['a"b', "c"]]})
    quoted = to_dot(odd, name="g")
    assert quoted.startswith("digraph g {")
    assert '  "a\\"b" -> "c";' in quoted.splitlines()
