"""Deterministic SVG output for planar arrangements and representations.

Coordinates are converted to floats for display only and printed with six
decimals; element ids are derived from labels so repeated runs produce
byte-identical files.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .arrangement import DoubledArrangement, HyperplaneArrangement, WiringDiagram
from .geometry import DiskTranslate, EllipseTranslate, Halfspace, PolygonTranslate
from .verify import Representation

WIDTH = 600


def _f(x) -> str:
    s = f"{float(x):.6f}"
    return "0.000000" if s == "-0.000000" else s


@dataclass(frozen=True)
class Viewport:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    @classmethod
    def around(cls, pts, pad=1.0):
        if not pts:
            pts = [(0.0, 0.0)]
        xs = [float(p[0]) for p in pts]
        ys = [float(p[1]) for p in pts]
        w = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
        pad = max(pad, w / 10)
        return cls(min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad)

    @property
    def scale(self) -> float:
        return WIDTH / (self.xmax - self.xmin)

    @property
    def height(self) -> float:
        return (self.ymax - self.ymin) * self.scale

    def map(self, p):
        # y grows upwards in the data, downwards in SVG
        return ((float(p[0]) - self.xmin) * self.scale, (self.ymax - float(p[1])) * self.scale)

    def clip_line(self, normal, offset):
        a, b = float(normal[0]), float(normal[1])
        c = float(offset)
        pts = []
        if b != 0:
            for x in (self.xmin, self.xmax):
                y = (c - a * x) / b
                if self.ymin <= y <= self.ymax:
                    pts.append((x, y))
        if a != 0:
            for y in (self.ymin, self.ymax):
                x = (c - b * y) / a
                if self.xmin <= x <= self.xmax:
                    pts.append((x, y))
        pts = sorted(set(pts))
        return (pts[0], pts[-1]) if len(pts) >= 2 else None


class _Doc:
    def __init__(self, view: Viewport, title: str):
        self.view = view
        self.parts = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(WIDTH)}" height="{_f(view.height)}" '
            f'viewBox="0 0 {_f(WIDTH)} {_f(view.height)}">',
            f"<title>{escape(title)}</title>",
            f'<rect id="background" x="0" y="0" width="{_f(WIDTH)}" height="{_f(view.height)}" fill="white"/>',
        ]

    def add(self, s: str):
        self.parts.append(s)

    def line(self, ident, normal, offset, css="line"):
        seg = self.view.clip_line(normal, offset)
        if seg is None:
            return
        (x1, y1), (x2, y2) = (self.view.map(p) for p in seg)
        self.add(
            f'<line id={quoteattr(ident)} class="{css}" x1="{_f(x1)}" y1="{_f(y1)}" '
            f'x2="{_f(x2)}" y2="{_f(y2)}" stroke="black" stroke-width="1"/>'
        )

    def point(self, ident, p, label=None):
        x, y = self.view.map(p)
        self.add(f'<circle id={quoteattr(ident)} class="point" cx="{_f(x)}" cy="{_f(y)}" r="3" fill="black"/>')
        if label is not None:
            self.add(
                f'<text id={quoteattr(ident + "-label")} x="{_f(x + 4)}" y="{_f(y - 4)}" '
                f'font-size="10">{escape(str(label))}</text>'
            )

    def finish(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _planar(obj):
    dim = getattr(obj, "dim", 2)
    if dim != 2:
        raise ValueError(f"only planar objects can be rendered (got d={dim})")


def _render_lines(a: HyperplaneArrangement, points=None, title="arrangement") -> str:
    feats = [p for _, p in a.vertices()] + list((points or {}).values())
    for h in a.hyperplanes:
        n = h.normal
        s = h.offset / (n[0] * n[0] + n[1] * n[1])
        feats.append((n[0] * s, n[1] * s))
    doc = _Doc(Viewport.around(feats), title)
    for l, h in zip(a.labels, a.hyperplanes):
        doc.line(f"line-{l}", h.normal, h.offset)
    for k, p in sorted((points or {}).items()):
        doc.point(f"point-{k}", p)
    return doc.finish()


def _render_wiring(w: WiringDiagram, title="wiring diagram") -> str:
    steps = list(w.orders())
    dx, dy = 40.0, 30.0
    width = dx * (len(steps) + 1)
    height = dy * (w.n_lines + 1)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">',
        f"<title>{escape(title)}</title>",
    ]
    for l in w.labels:
        coords = []
        for k, order in enumerate(steps):
            x = dx * (k + 1)
            y = height - dy * (order.index(l) + 1)
            coords.append(f"{_f(x)},{_f(y)}")
        parts.append(
            f'<polyline id={quoteattr("wire-" + l)} class="wire" points="{" ".join(coords)}" '
            f'fill="none" stroke="black" stroke-width="1"/>'
        )
        y0 = height - dy * (steps[0].index(l) + 1)
        parts.append(f'<text id={quoteattr("wire-" + l + "-label")} x="{_f(4)}" y="{_f(y0 + 4)}" font-size="10">{escape(l)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _ellipse_axes(q):
    vals, vecs = np.linalg.eigh(np.array([[float(x) for x in row] for row in q]))
    rx, ry = 1 / math.sqrt(vals[0]), 1 / math.sqrt(vals[1])
    angle = math.degrees(math.atan2(vecs[1, 0], vecs[0, 0]))
    return rx, ry, angle


def _render_representation(rep: Representation, title="representation") -> str:
    if rep.dim != 2:
        raise ValueError(f"only planar representations can be rendered (got d={rep.dim})")
    feats = list(rep.points.values())
    for s in rep.shapes.values():
        if isinstance(s, DiskTranslate):
            c = s.center
            feats += [(c[0] - 1, c[1] - 1), (c[0] + 1, c[1] + 1)]
        elif isinstance(s, EllipseTranslate):
            rx, ry, _ = _ellipse_axes(s.Q)
            r = max(rx, ry)
            feats += [(float(s.center[0]) - r, float(s.center[1]) - r), (float(s.center[0]) + r, float(s.center[1]) + r)]
        elif isinstance(s, PolygonTranslate):
            feats += s.vertices()
    doc = _Doc(Viewport.around(feats, pad=0.25), title)
    view = doc.view
    for e, s in sorted(rep.shapes.items()):
        ident = f"shape-{e}"
        if isinstance(s, Halfspace):
            doc.line(ident, s.normal, s.offset, css="halfplane")
        elif isinstance(s, DiskTranslate):
            x, y = view.map(s.center)
            doc.add(f'<circle id={quoteattr(ident)} class="disk" cx="{_f(x)}" cy="{_f(y)}" r="{_f(view.scale)}" '
                    f'fill="none" stroke="black" stroke-width="1"/>')
        elif isinstance(s, EllipseTranslate):
            x, y = view.map(s.center)
            rx, ry, angle = _ellipse_axes(s.Q)
            doc.add(f'<ellipse id={quoteattr(ident)} class="ellipse" cx="{_f(x)}" cy="{_f(y)}" '
                    f'rx="{_f(rx * view.scale)}" ry="{_f(ry * view.scale)}" '
                    f'transform="rotate({_f(-angle)} {_f(x)} {_f(y)})" fill="none" stroke="black" stroke-width="1"/>')
        elif isinstance(s, PolygonTranslate):
            pts = " ".join(f"{_f(a)},{_f(b)}" for a, b in (view.map(p) for p in s.vertices()))
            doc.add(f'<polygon id={quoteattr(ident)} class="polygon" points="{pts}" fill="none" stroke="black" stroke-width="1"/>')
    for v, p in sorted(rep.points.items()):
        doc.point(f"point-{v}", p, label=v)
    return doc.finish()


def render_svg(obj, points: Optional[dict] = None, title: Optional[str] = None) -> str:
    """SVG text for a wiring diagram, line arrangement, doubled arrangement or representation."""
    if isinstance(obj, Representation):
        return _render_representation(obj, title or "representation")
    if isinstance(obj, WiringDiagram):
        return _render_wiring(obj, title or "wiring diagram")
    if isinstance(obj, DoubledArrangement):
        obj = obj.doubled
        if isinstance(obj, WiringDiagram):
            return _render_wiring(obj, title or "doubled wiring diagram")
    if isinstance(obj, HyperplaneArrangement):
        _planar(obj)
        return _render_lines(obj, points, title or "arrangement")
    raise TypeError(f"cannot render {type(obj).__name__}")
