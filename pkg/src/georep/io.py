"""JSON encodings.

Rationals are written as integers when integral and as ``"num/den"``
strings otherwise; readers accept integers and such strings but refuse
floats.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .arrangement import CanvasLift, HyperplaneArrangement, StretchReport, WiringDiagram
from .geometry import DiskTranslate, EllipseTranslate, Halfspace, Hyperplane, PolygonTranslate, to_fraction
from .hypergraph import Hypergraph, hypergraph_from_dict, hypergraph_to_dict
from .recognize.decision import Decision
from .reduction import ReductionOutput
from .verify import Representation


class FormatError(ValueError):
    pass


def num(x) -> object:
    x = to_fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_num(x) -> Fraction:
    if isinstance(x, float):
        raise FormatError(f"floating point value {x!r}; write rationals as \"num/den\"")
    try:
        return to_fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational: {x!r}") from exc


def _vec(xs):
    return [num(x) for x in xs]


def _parse_vec(xs) -> tuple:
    if not isinstance(xs, list) or not xs:
        raise FormatError(f"expected a non-empty list of numbers, got {xs!r}")
    return tuple(parse_num(x) for x in xs)


def _label_out(label: str):
    return int(label) if label.isdigit() and str(int(label)) == label else label


# --------------------------------------------------------------------------
# shapes and representations


def shape_to_dict(s) -> dict:
    if isinstance(s, Halfspace):
        return {"kind": "halfspace", "normal": _vec(s.normal), "offset": num(s.offset)}
    if isinstance(s, DiskTranslate):
        return {"kind": "disk", "center": _vec(s.center)}
    if isinstance(s, EllipseTranslate):
        return {"kind": "ellipse", "center": _vec(s.center), "Q": [_vec(r) for r in s.Q]}
    if isinstance(s, PolygonTranslate):
        return {"kind": "polygon", "polygon": [_vec(p) for p in s.polygon], "translation": _vec(s.translation)}
    raise TypeError(f"cannot serialise {s!r}")


def shape_from_dict(doc: dict):
    if not isinstance(doc, dict) or "kind" not in doc:
        raise FormatError(f"shape needs a 'kind': {doc!r}")
    try:
        kind = doc["kind"]
        if kind == "halfspace":
            return Halfspace(_parse_vec(doc["normal"]), parse_num(doc["offset"]))
        if kind == "disk":
            return DiskTranslate(_parse_vec(doc["center"]))
        if kind == "ellipse":
            return EllipseTranslate(_parse_vec(doc["center"]), tuple(_parse_vec(r) for r in doc["Q"]))
        if kind == "polygon":
            return PolygonTranslate(tuple(_parse_vec(p) for p in doc["polygon"]), _parse_vec(doc["translation"]))
    except KeyError as exc:
        raise FormatError(f"{kind} shape lacks field {exc}") from exc
    raise FormatError(f"unknown shape kind {kind!r}")


def representation_to_dict(rep: Representation) -> dict:
    return {
        "points": {str(v): _vec(p) for v, p in sorted(rep.points.items())},
        "shapes": {e: shape_to_dict(s) for e, s in sorted(rep.shapes.items())},
    }


def representation_from_dict(doc) -> Representation:
    if not isinstance(doc, dict) or "points" not in doc or "shapes" not in doc:
        raise FormatError("representation needs 'points' and 'shapes'")
    try:
        points = {int(v): _parse_vec(p) for v, p in doc["points"].items()}
    except ValueError as exc:
        raise FormatError(f"bad vertex id: {exc}") from exc
    shapes = {str(e): shape_from_dict(s) for e, s in doc["shapes"].items()}
    return Representation(points, shapes)


# --------------------------------------------------------------------------
# arrangements


def hyperplane_to_dict(label, h: Hyperplane) -> dict:
    return {"label": _label_out(label), "normal": _vec(h.normal), "offset": num(h.offset)}


def arrangement_to_dict(a) -> dict:
    if isinstance(a, WiringDiagram):
        doc = {"n_lines": a.n_lines, "swaps": [[_label_out(x), _label_out(y)] for x, y in a.swaps]}
        if a.labels != tuple(str(i) for i in range(1, a.n_lines + 1)):
            doc["labels"] = [_label_out(l) for l in a.labels]
        return doc
    if isinstance(a, HyperplaneArrangement):
        key = "lines" if a.dim == 2 else "hyperplanes"
        return {key: [hyperplane_to_dict(l, h) for l, h in zip(a.labels, a.hyperplanes)]}
    if isinstance(a, CanvasLift):
        return {
            "hyperplanes": [hyperplane_to_dict(l, h) for l, h in zip(a.lifted.labels, a.lifted.hyperplanes)],
            "canvas": [hyperplane_to_dict(l, h) for l, h in zip(a.canvas.labels, a.canvas.hyperplanes)],
        }
    raise TypeError(f"cannot serialise {type(a).__name__}")


def arrangement_from_dict(doc):
    if not isinstance(doc, dict):
        raise FormatError("arrangement document must be an object")
    if "n_lines" in doc:
        if "swaps" not in doc:
            raise FormatError("wiring diagram needs 'swaps'")
        n = doc["n_lines"]
        if isinstance(n, bool) or not isinstance(n, int):
            raise FormatError("n_lines must be an integer")
        swaps = doc["swaps"]
        if not isinstance(swaps, list) or any(not isinstance(s, list) or len(s) != 2 for s in swaps):
            raise FormatError("swaps must be a list of pairs")
        return WiringDiagram(n, tuple((str(a), str(b)) for a, b in swaps), doc.get("labels"))
    key = next((k for k in ("lines", "hyperplanes") if k in doc), None)
    if key is None:
        raise FormatError("expected 'lines', 'hyperplanes' or a wiring diagram")
    labels, hyps = [], []
    for item in doc[key] + doc.get("canvas", []):
        if not isinstance(item, dict) or not {"label", "normal", "offset"} <= set(item):
            raise FormatError(f"malformed hyperplane entry {item!r}")
        labels.append(str(item["label"]))
        hyps.append(Hyperplane(_parse_vec(item["normal"]), parse_num(item["offset"])))
    return HyperplaneArrangement(tuple(labels), tuple(hyps))


# --------------------------------------------------------------------------
# reduction output, decisions, reports


def _sign_str(s) -> str:
    return "+" if s > 0 else "-"


def reduction_to_dict(r: ReductionOutput) -> dict:
    labels = r.labels
    doc = {
        "hypergraph": hypergraph_to_dict(r.hypergraph),
        "vertex_of_cell": {
            str(v): {l: _sign_str(x) for l, x in zip(labels, s)}
            for s, v in sorted(r.vertex_of_cell.items(), key=lambda kv: kv[1])
        },
        "edge_of_element": dict(r.edge_of_element),
        "twin_of": dict(r.doubled.twin_of),
    }
    if r.doubled.alpha is not None:
        doc["alpha"] = num(r.doubled.alpha)
    return doc


def hypergraph_from_any(doc) -> Hypergraph:
    """A plain hypergraph document or the output of ``reduce``."""
    if isinstance(doc, dict) and "hypergraph" in doc:
        doc = doc["hypergraph"]
    return hypergraph_from_dict(doc)


def _jsonable(x):
    if isinstance(x, Fraction):
        return num(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def decision_to_dict(d: Decision) -> dict:
    return {
        "outcome": d.outcome,
        "witness": representation_to_dict(d.witness) if d.witness is not None else None,
        "stats": _jsonable(d.stats),
    }


def stretch_report_to_dict(report: StretchReport) -> dict:
    return report.to_dict()


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc
