"""Command-line interface: posets, maps and triples travel as JSON on stdin/stdout."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import constructions as C
from .cdindex import cd_formula_terms, cd_index, local_cd_index
from .cylinder import JoinTriple, cyl, cyl_square, map_square, map_triple
from .homology import gorenstein_witness
from .ncpoly import NCPolyError
from .poset import (
    Poset,
    PosetError,
    Rank,
    dual,
    eulerian_witness,
    is_graded,
    is_near_eulerian,
    is_rank_function,
    join,
    natural_rank,
    semisuspension,
)
from .serialize import (
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
from .subdivision import METHODS, SfsPreconditionError, sfs_witness

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class UsageError(Exception):
    """Bad input; reported on stderr with exit code 2."""


class Io:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self._text: str | None = None

    def read_text(self) -> str:
        if self._text is None:
            if self.args.input:
                with open(self.args.input, encoding="utf-8") as fh:
                    self._text = fh.read()
            else:
                self._text = sys.stdin.read()
        return self._text

    def read_json(self):
        return loads(self.read_text())

    def write(self, text: str) -> None:
        if self.args.output:
            with open(self.args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _ranked(obj) -> tuple[Poset, Rank]:
    p, r = poset_from_obj(obj)
    if r is None:
        try:
            r = natural_rank(p)
        except PosetError as exc:
            raise UsageError(f"no rank given and none can be inferred: {exc}") from None
    return p, r


def _read_poset(io: Io) -> tuple[Poset, Rank]:
    obj = io.read_json()
    if isinstance(obj, dict) and "poset" in obj:
        t = triple_from_obj(obj)
        return t.gamma, t.gamma_rank
    return _ranked(obj)


def _q_value(extra: Sequence[str]) -> str | None:
    for tok in extra:
        if tok.startswith("q="):
            return tok[2:]
    return None


def _read_triple(io: Io, extra: Sequence[str]) -> JoinTriple:
    obj = io.read_json()
    q = _q_value(extra)
    if isinstance(obj, dict) and "poset" in obj:
        t = triple_from_obj(obj)
        if q is not None and q != t.q_label:
            if q not in t.gamma.labels:
                raise UsageError(f"q={q!r} is not an element")
            t = JoinTriple(t.gamma, t.gamma_rank, t.gamma.index(q))
        return t
    p, r = _ranked(obj)
    if q is None:
        raise UsageError("a triple needs q=<label>")
    if q not in p.labels:
        raise UsageError(f"q={q!r} is not an element")
    return JoinTriple(p, r, p.index(q))


def _emit_poset(io: Io, p: Poset, r: Rank) -> None:
    fmt = io.args.format or "json"
    if fmt == "dot":
        io.write(to_dot(p, r))
    elif fmt == "text":
        lines = [f"{p.labels[i]} {r[i]}" for i in sorted(range(p.n), key=lambda i: (r[i], p.labels[i]))]
        io.write("\n".join(lines) + "\n")
    else:
        io.write(dumps(poset_to_obj(p, r)))


# -- build ----------------------------------------------------------------------------------------

_NUMERIC = {
    "boolean": (C.boolean_algebra, 0),
    "polygon": (C.face_lattice_polygon, 3),
    "cube": (C.face_lattice_cube, 1),
    "crosspolytope": (C.face_lattice_crosspolytope, 1),
    "subdivided_interval": (C.subdivided_interval, 0),
}
_UNARY: dict[str, Callable] = {
    "pyramid": C.pyramid,
    "prism": C.prism,
    "bipyramid": C.bipyramid,
}
_BINARY: dict[str, Callable] = {
    "star": C.star_product,
    "product": C.direct_product,
    "diamond": C.diamond_product,
    "dual_diamond": C.dual_diamond_product,
}
FAMILIES = sorted(list(_NUMERIC) + list(_UNARY) + list(_BINARY) + ["dual", "semisuspension"])


def _load_file(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def cmd_build(io: Io, params: Sequence[str]) -> int:
    family = io.args.family
    if family in _NUMERIC:
        fn, least = _NUMERIC[family]
        if len(params) != 1 or not params[0].lstrip("-").isdigit():
            raise UsageError(f"build {family} takes one integer parameter")
        k = int(params[0])
        if k < least:
            raise UsageError(f"build {family} needs a parameter >= {least}")
        p, r = fn(k)
    elif family in _UNARY:
        p, r = _UNARY[family](*_read_poset(io))
    elif family == "dual":
        p, r = _read_poset(io)
        p = dual(p)
        r = tuple(-v for v in r)
    elif family == "semisuspension":
        s = semisuspension(*_read_poset(io))
        p, r = s.poset, s.rank
    elif family in _BINARY:
        if len(params) == 2:
            objs = [_load_file(params[0]), _load_file(params[1])]
        elif len(params) == 1:
            objs = [io.read_json(), _load_file(params[0])]
        else:
            objs = io.read_json()
            if not isinstance(objs, list) or len(objs) != 2:
                raise UsageError(f"build {family} needs two posets: files or a JSON list on stdin")
        (p1, r1), (p2, r2) = (_ranked(o) for o in objs)
        p, r = _BINARY[family](p1, r1, p2, r2)
    else:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    _emit_poset(io, p, r)
    return EXIT_OK


# -- check ----------------------------------------------------------------------------------------

CHECKS = ("eulerian", "lower-eulerian", "near-eulerian", "graded", "gorenstein-star", "sfs", "join-admissible")


def _report(io: Io, ok: bool, witness: str = "") -> int:
    if ok:
        io.write("PASS\n")
        return EXIT_OK
    io.write(f"FAIL {witness}".rstrip() + "\n")
    return EXIT_FAIL


def _interval_text(p: Poset, z: int, z2: int) -> str:
    return f"interval=[{p.labels[z]},{p.labels[z2]}]"


def _eulerian_report(io: Io, p: Poset, r: Rank, need_bottom: bool, need_top: bool) -> int:
    if not is_rank_function(p, r):
        return _report(io, False, "rank function does not increase by one along covers")
    w = eulerian_witness(p, r)
    if w is not None:
        z, z2, s = w
        return _report(io, False, f"{_interval_text(p, z, z2)} sum={s}")
    if need_bottom and p.bottom is None:
        return _report(io, False, "no unique minimum")
    if need_top and p.top is None:
        return _report(io, False, "no unique maximum")
    return _report(io, True)


def cmd_check(io: Io, extra: Sequence[str]) -> int:
    what = io.args.what
    if what == "sfs":
        m = map_from_obj(io.read_json())
        try:
            w = sfs_witness(m, io.args.method or "eq31")
        except SfsPreconditionError as exc:
            raise UsageError(f"precondition {exc.hypothesis} failed: {exc}") from None
        return _report(io, w is None, "" if w is None else w.describe(m))
    if what == "join-admissible":
        t = _read_triple(io, extra)
        bad = next((z for z in range(t.gamma.n) if join(t.gamma, z, t.q) is None), None)
        return _report(io, bad is None, "" if bad is None else f"z={t.gamma.labels[bad]} has no join with q")
    p, r = _read_poset(io)
    if what == "eulerian":
        return _eulerian_report(io, p, r, True, True)
    if what == "lower-eulerian":
        return _eulerian_report(io, p, r, True, False)
    if what == "near-eulerian":
        return _report(io, is_near_eulerian(p, r), "semisuspension is not Eulerian of positive rank")
    if what == "graded":
        return _report(io, is_graded(p), "maximal chains of different lengths")
    if what == "gorenstein-star":
        if p.n < 2 or eulerian_witness(p, r) is not None or p.bottom is None or p.top is None:
            return _report(io, False, "not Eulerian of positive rank")
        w = gorenstein_witness(p, r)
        return _report(io, w is None, "" if w is None else _interval_text(p, *w))
    raise UsageError(f"unknown check {what!r}")


# -- cylinder commands ----------------------------------------------------------------------------


def cmd_cyl(io: Io, extra: Sequence[str]) -> int:
    m = map_from_obj(io.read_json())
    io.write(dumps(triple_to_obj(cyl(m))))
    return EXIT_OK


def cmd_map(io: Io, extra: Sequence[str]) -> int:
    io.write(dumps(map_to_obj(map_triple(_read_triple(io, extra)))))
    return EXIT_OK


def cmd_square(io: Io, extra: Sequence[str]) -> int:
    """A square gives its cylinder map; ``{"phi", "source", "target"}`` gives back the square."""
    obj = io.read_json()
    if isinstance(obj, dict) and "phi" in obj:
        for key in ("source", "target"):
            if key not in obj:
                raise UsageError(f"missing field {key!r}")
        sq = map_square(map_from_obj(obj["phi"]), triple_from_obj(obj["source"]), triple_from_obj(obj["target"]))
        io.write(dumps(square_to_obj(sq)))
    else:
        io.write(dumps(map_to_obj(cyl_square(square_from_obj(obj)))))
    return EXIT_OK


# -- cd-index commands ----------------------------------------------------------------------------


def cmd_cdindex(io: Io, extra: Sequence[str]) -> int:
    p, _ = _read_poset(io)
    io.write(f"{cd_index(p)}\n")
    return EXIT_OK


def cmd_localcd(io: Io, extra: Sequence[str]) -> int:
    io.write(f"{local_cd_index(*_read_poset(io))}\n")
    return EXIT_OK


def cmd_verify_formula(io: Io, extra: Sequence[str]) -> int:
    t = _read_triple(io, extra)
    lhs = cd_index(t.gamma)
    terms = cd_formula_terms(t)
    try:
        rhs = terms.total()
    except ArithmeticError as exc:
        io.write(f"lhs: {lhs}\nrhs: {terms.local_x} + 1/2*({terms.bracket()})\nFAIL {exc}\n")
        return EXIT_FAIL
    io.write(f"lhs: {lhs}\nrhs: {rhs}\n")
    return _report(io, lhs == rhs, "sides differ")


def cmd_export_dot(io: Io, extra: Sequence[str]) -> int:
    p, r = _read_poset(io)
    io.write(to_dot(p, r))
    return EXIT_OK


# -- entry point ----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", help="read from FILE instead of stdin")
    common.add_argument("-o", "--output", help="write to FILE instead of stdout")
    common.add_argument("--format", choices=("json", "dot", "text"))

    parser = argparse.ArgumentParser(prog="eulerposet", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="generate a corpus poset")
    b.add_argument("family")
    b.add_argument("params", nargs="*")
    b.set_defaults(func=lambda io, a: cmd_build(io, a.params))

    c = sub.add_parser("check", parents=[common], help="test a property and print PASS or FAIL")
    c.add_argument("what", choices=CHECKS)
    c.add_argument("extra", nargs="*", help="q=<label> for join-admissible")
    c.add_argument("--method", choices=METHODS)
    c.set_defaults(func=lambda io, a: cmd_check(io, a.extra))

    for name, fn, text in (
        ("cyl", cmd_cyl, "subdivision to triple"),
        ("map", cmd_map, "triple to subdivision"),
        ("square", cmd_square, "square to cylinder map, or morphism to square"),
        ("cdindex", cmd_cdindex, "cd-index of an Eulerian poset"),
        ("localcd", cmd_localcd, "local cd-index of a near-Eulerian poset"),
        ("verify-formula", cmd_verify_formula, "compare both sides of the cylinder cd-index formula"),
        ("export-dot", cmd_export_dot, "Hasse diagram in DOT"),
    ):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("extra", nargs="*", help="q=<label> where a triple is expected")
        s.set_defaults(func=lambda io, a, fn=fn: fn(io, a.extra))
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    io = Io(args)
    try:
        return args.func(io, args)
    except (UsageError, PosetError, NCPolyError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
