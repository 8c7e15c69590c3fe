"""JSON and DOT forms of posets, maps, triples and squares."""

from __future__ import annotations

import json
from typing import Any

from .cylinder import JoinTriple, SfsSquare
from .poset import Poset, PosetError, Rank, from_covers, is_rank_function
from .subdivision import PosetMap


class FormatError(PosetError):
    pass


def _require(obj: Any, key: str, kind: type) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"missing field {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise FormatError(f"field {key!r} has the wrong type")
    return val


def _rank_list(val: Any, n: int, what: str) -> Rank:
    if not isinstance(val, list) or len(val) != n or not all(isinstance(v, int) and not isinstance(v, bool) for v in val):
        raise FormatError(f"{what} must be a list of {n} integers")
    return tuple(val)


# -- posets ---------------------------------------------------------------------------------------


def poset_to_obj(p: Poset, r: Rank | None = None) -> dict:
    """Canonical form: labels sorted, covers sorted by label pair, ranks aligned with labels."""
    order = sorted(range(p.n), key=lambda i: p.labels[i])
    obj: dict[str, Any] = {
        "labels": [p.labels[i] for i in order],
        "covers": sorted([p.labels[i], p.labels[j]] for i, j in p.covers),
    }
    if r is not None:
        obj["rank"] = [int(r[i]) for i in order]
    return obj


def poset_from_obj(obj: Any) -> tuple[Poset, Rank | None]:
    labels = _require(obj, "labels", list)
    covers = _require(obj, "covers", list)
    if not labels:
        raise FormatError("a poset needs at least one element")
    if not all(isinstance(s, str) for s in labels):
        raise FormatError("labels must be strings")
    pairs = []
    for c in covers:
        if not (isinstance(c, list) and len(c) == 2 and all(isinstance(s, str) for s in c)):
            raise FormatError("each cover must be a pair of labels")
        pairs.append((c[0], c[1]))
    p = from_covers(labels, pairs)
    r = None
    if "rank" in obj:
        r = _rank_list(obj["rank"], p.n, "rank")
        if not is_rank_function(p, r):
            raise FormatError("rank does not increase by one along covers")
    return p, r


# -- maps, triples, squares -----------------------------------------------------------------------


def map_to_obj(m: PosetMap) -> dict:
    src = poset_to_obj(m.source, m.source_rank)
    tgt = poset_to_obj(m.target, m.target_rank)
    return {
        "source": {"labels": src["labels"], "covers": src["covers"]},
        "source_rank": src["rank"],
        "target": {"labels": tgt["labels"], "covers": tgt["covers"]},
        "target_rank": tgt["rank"],
        "image": sorted([a, b] for a, b in m.label_image().items()),
    }


def map_from_obj(obj: Any) -> PosetMap:
    source, _ = poset_from_obj(_require(obj, "source", dict))
    target, _ = poset_from_obj(_require(obj, "target", dict))
    sr = _rank_list(obj.get("source_rank"), source.n, "source_rank")
    tr = _rank_list(obj.get("target_rank"), target.n, "target_rank")
    if not is_rank_function(source, sr) or not is_rank_function(target, tr):
        raise FormatError("rank does not increase by one along covers")
    mapping: dict[str, str] = {}
    for pair in _require(obj, "image", list):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(s, str) for s in pair)):
            raise FormatError("each image entry must be a pair of labels")
        if pair[0] in mapping:
            raise FormatError(f"{pair[0]!r} is mapped twice")
        if pair[1] not in target.labels:
            raise FormatError(f"{pair[1]!r} is not a target label")
        mapping[pair[0]] = pair[1]
    if set(mapping) - set(source.labels):
        raise FormatError("image mentions labels outside the source")
    return PosetMap.from_labels(source, sr, target, tr, mapping)


def triple_to_obj(t: JoinTriple) -> dict:
    g = poset_to_obj(t.gamma, t.gamma_rank)
    rank = g.pop("rank")
    return {"poset": g, "rank": rank, "q": t.q_label}


def triple_from_obj(obj: Any) -> JoinTriple:
    gamma, _ = poset_from_obj(_require(obj, "poset", dict))
    rank = _rank_list(obj.get("rank"), gamma.n, "rank")
    if not is_rank_function(gamma, rank):
        raise FormatError("rank does not increase by one along covers")
    q = _require(obj, "q", str)
    if q not in gamma.labels:
        raise FormatError(f"q={q!r} is not an element")
    return JoinTriple(gamma, rank, gamma.index(q))


SQUARE_KEYS = ("phi1", "sigma", "sigma_prime", "phi2")


def square_to_obj(sq: SfsSquare) -> dict:
    return {k: map_to_obj(getattr(sq, k)) for k in SQUARE_KEYS}


def square_from_obj(obj: Any) -> SfsSquare:
    return SfsSquare(**{k: map_from_obj(_require(obj, k, dict)) for k in SQUARE_KEYS})


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": ")) + "\n"


def loads(text: str) -> Any:
    if not text.strip():
        raise FormatError("empty input")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}") from None


# -- DOT ------------------------------------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(p: Poset, r: Rank | None = None, name: str = "hasse") -> str:
    """Hasse diagram, bottom to top, with one ``rank=same`` subgraph per rank value."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    order = sorted(range(p.n), key=lambda i: p.labels[i])
    for i in order:
        lines.append(f"  {_quote(p.labels[i])};")
    if r is not None:
        for value in sorted(set(r)):
            members = " ".join(_quote(p.labels[i]) + ";" for i in order if r[i] == value)
            lines.append(f"  {{ rank=same; {members} }}")
    for a, b in sorted((p.labels[i], p.labels[j]) for i, j in p.covers):
        lines.append(f"  {_quote(a)} -> {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
