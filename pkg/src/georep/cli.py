"""Command-line interface.

Exit codes: 0 yes / pass / true, 1 no / fail / false, 2 unknown,
3 bad input or flags, 4 internal error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import io
from .arrangement import (
    HyperplaneArrangement,
    WiringDiagram,
    canvas_lift,
    cells,
    check_stretching,
    insert_twins,
)
from .fixtures import fixture
from .recognize import Budget, Family, InstanceTooLarge, emit_etr, recognize
from .recognize.oracle import OracleCapExceeded
from .recognize.polygon import DEFAULT_CAP, UNIT_SQUARE
from .reduction import build_hypergraph
from .render import render_svg
from .verify import RepresentationError, verify_representation

log = logging.getLogger("georep")

EXIT_BAD_INPUT = 3
EXIT_INTERNAL = 4

FAMILY_HELP = (
    "halfplane | disk | ellipse:<Qfile> | polygon:<Pfile> | interval | square.  "
    "Qfile holds a JSON 2x2 matrix, Pfile a JSON list of counter-clockwise vertices."
)
CAPS_HELP = (
    f"comma separated key=value limits; 'pairs' bounds the vertex/edge pairs with several "
    f"region choices in the exact polygon recognizer (default {DEFAULT_CAP})"
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


def _write(path, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def parse_family(spec: str) -> Family:
    kind, _, arg = spec.partition(":")
    if kind in ("halfplane", "disk", "interval") and not arg:
        return Family(kind)
    if kind == "square" and not arg:
        return Family("polygon", UNIT_SQUARE)
    if kind == "ellipse" and arg:
        q = io.load_json(arg)
        return Family("ellipse", Q=tuple(tuple(io.parse_num(x) for x in row) for row in q))
    if kind == "polygon" and arg:
        poly = io.load_json(arg)
        return Family("polygon", tuple(tuple(io.parse_num(x) for x in p) for p in poly))
    raise UsageError(f"bad family {spec!r}; expected {FAMILY_HELP}")


def parse_caps(spec) -> dict:
    caps = {}
    for item in filter(None, (spec or "").split(",")):
        key, _, value = item.partition("=")
        if not value.isdigit():
            raise UsageError(f"bad cap {item!r}")
        caps[key.strip()] = int(value)
    unknown = set(caps) - {"pairs"}
    if unknown:
        raise UsageError(f"unknown caps {sorted(unknown)}")
    return caps


def parse_budget(spec) -> Budget:
    if spec is None:
        return Budget()
    restarts, _, iters = spec.partition("x")
    if not restarts.isdigit() or (iters and not iters.isdigit()):
        raise UsageError(f"bad budget {spec!r}; use RESTARTS or RESTARTSxITERATIONS")
    if iters:
        return Budget(restarts=int(restarts), iterations=int(iters))
    return Budget(restarts=int(restarts))


# --------------------------------------------------------------------------
# subcommands


def cmd_reduce(args):
    a = io.arrangement_from_dict(io.load_json(args.inp))
    r = build_hypergraph(a)
    _write(args.out, io.dumps(io.reduction_to_dict(r)))
    return 0


def cmd_verify(args):
    h = io.hypergraph_from_any(io.load_json(args.inp))
    rep = io.representation_from_dict(io.load_json(args.rep))
    report = verify_representation(h, rep, allow_coincident=args.allow_coincident)
    _write(args.out, io.dumps(report.to_dict()))
    return 0 if report.passed else 1


def cmd_recognize(args):
    h = io.hypergraph_from_any(io.load_json(args.inp))
    family = parse_family(args.family)
    if family.kind != "interval" and args.dim != 2:
        raise UsageError("only planar recognition is implemented (interval is the d=1 case)")
    caps = parse_caps(args.caps)
    d = recognize(h, family, parse_budget(args.budget), seed=args.seed, cap=caps.get("pairs"))
    _write(args.out, io.dumps(io.decision_to_dict(d)))
    return d.exit_code


def cmd_emit_etr(args):
    h = io.hypergraph_from_any(io.load_json(args.inp))
    f = emit_etr(h, args.dim)
    _write(args.out, f.smtlib() if args.smtlib else f.text())
    return 0


def cmd_stretch_check(args):
    a = io.arrangement_from_dict(io.load_json(args.inp))
    b = io.arrangement_from_dict(io.load_json(args.lines))
    if not isinstance(b, HyperplaneArrangement):
        raise UsageError("--lines must hold a line arrangement")
    report = check_stretching(a, b, oriented=not args.unoriented)
    _write(args.out, io.dumps(report.to_dict()))
    return 0 if report.ok else 1


def cmd_lift(args):
    a = io.arrangement_from_dict(io.load_json(args.inp))
    if not isinstance(a, HyperplaneArrangement):
        raise UsageError("lift takes a line arrangement")
    _write(args.out, io.dumps(io.arrangement_to_dict(canvas_lift(a, args.dim))))
    return 0


def cmd_fixture(args):
    try:
        a = fixture(args.name)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    _write(args.out, io.dumps(io.arrangement_to_dict(a)))
    return 0


def cmd_render(args):
    doc = io.load_json(args.inp)
    if isinstance(doc, dict) and "points" in doc and "shapes" in doc:
        svg = render_svg(io.representation_from_dict(doc))
    else:
        a = io.arrangement_from_dict(doc)
        if args.doubled:
            d = insert_twins(a)
            if isinstance(a, WiringDiagram):
                svg = render_svg(d)
            else:
                pts = {i: c.point for i, c in enumerate(cells(d.doubled).cells, 1)}
                svg = render_svg(d.doubled, points=pts)
        else:
            svg = render_svg(a)
    _write(args.out, svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="georep", description="Geometric hypergraph representations.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, func, help_, needs_in=True):
        sp = sub.add_parser(name, help=help_, description=help_)
        if needs_in:
            sp.add_argument("--in", dest="inp", required=True, help="input JSON file")
        sp.add_argument("--out", default=None, help="output file (default: stdout)")
        sp.set_defaults(func=func)
        return sp

    cmd("reduce", cmd_reduce, "arrangement -> reduction hypergraph with provenance")
    sp = cmd("verify", cmd_verify, "check a representation exactly")
    sp.add_argument("--rep", required=True, help="representation JSON")
    sp.add_argument("--allow-coincident", action="store_true", help="accept vertices sharing a point")
    sp = cmd("recognize", cmd_recognize, "decide representability for a shape family")
    sp.add_argument("--family", required=True, help=FAMILY_HELP)
    sp.add_argument("--budget", default=None, help="heuristic budget RESTARTS[xITERATIONS] (default 64x2000)")
    sp.add_argument("--seed", type=int, default=0, help="seed for randomised search")
    sp.add_argument("--caps", default=None, help=CAPS_HELP)
    sp.add_argument("--dim", type=int, default=2, help="dimension (only 2 is searched; interval is 1)")
    sp = cmd("emit-etr", cmd_emit_etr, "existential formula for halfspace representability")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--smtlib", action="store_true", help="SMT-LIB instead of plain text")
    sp = cmd("stretch-check", cmd_stretch_check, "is a line arrangement a stretching of a wiring diagram?")
    sp.add_argument("--lines", required=True, help="line arrangement JSON")
    sp.add_argument("--unoriented", action="store_true", help="allow each line to flip its sides")
    sp = cmd("lift", cmd_lift, "lift a planar arrangement onto a canvas in R^d")
    sp.add_argument("--dim", type=int, required=True)
    sp = cmd("fixture", cmd_fixture, "write a named test arrangement", needs_in=False)
    sp.add_argument("name", help="pappus_lines | pappus_wiring | non_pappus_wiring | grid(n) | "
                                 "random_simple(n, seed) | random_wiring(n, seed)")
    sp = cmd("render", cmd_render, "draw an arrangement or representation as SVG")
    sp.add_argument("--doubled", action="store_true", help="insert twins and mark one point per cell")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, io.FormatError, RepresentationError, InstanceTooLarge, OracleCapExceeded,
            KeyError, ValueError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"georep {args.command}: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error")
        print(f"georep {args.command}: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
