"""Brute-force grid oracle for tiny instances.

Points and shape placements range over a lattice of spacing
``resolution``.  A ``yes`` comes with an exactly verified witness; failing
to find one only means ``no_at_resolution``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Optional

import numpy as np

from ..geometry import DiskTranslate, EllipseTranslate, Halfspace, PolygonTranslate, point_in_polygon, quad_form
from ..hypergraph import Hypergraph
from ..verify import Representation, verify_representation
from .decision import NO_AT_RESOLUTION, YES, Decision
from .polygon import UNIT_SQUARE


class OracleCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleCaps:
    max_vertices: int = 6
    max_edges: int = 3
    max_placements: int = 200_000


@dataclass(frozen=True)
class Family:
    """``kind`` is one of polygon, disk, ellipse, halfplane, interval."""

    kind: str
    polygon: Optional[tuple] = None
    Q: Optional[tuple] = None

    @staticmethod
    def square() -> "Family":
        return Family("polygon", UNIT_SQUARE)


def _translate_family(h, family, resolution, span, caps):
    r = Fraction(resolution)
    m = int(span / r)
    steps = range(-m, m + 1)

    def member(dx, dy):
        q = (dx * r, dy * r)
        if family.kind == "polygon":
            return point_in_polygon(q, family.polygon)
        if family.kind == "disk":
            return q[0] * q[0] + q[1] * q[1] <= 1
        return quad_form(family.Q, q) <= 1

    # membership of lattice offsets, indexed by (dx + 2m, dy + 2m)
    size = 4 * m + 1
    table = np.zeros((size, size), dtype=bool)
    for dx in range(-2 * m, 2 * m + 1):
        for dy in range(-2 * m, 2 * m + 1):
            table[dx + 2 * m, dy + 2 * m] = member(dx, dy)

    n_edges = len(h.edges)
    placements = (2 * m + 1) ** (2 * max(n_edges - 1, 0))
    if placements > caps.max_placements:
        raise OracleCapExceeded(f"{placements} placements exceed the cap")
    want = [sum(1 << k for k, (_, mem) in enumerate(h.edges) if v in mem) for v in h.vertices]
    need = {}
    for v, mask in zip(h.vertices, want):
        need.setdefault(mask, []).append(v)
    tau_choices = [[(0, 0)]] + [list(product(steps, steps))] * (n_edges - 1)
    for taus in product(*tau_choices):
        masks = np.zeros((2 * m + 1, 2 * m + 1), dtype=np.int64)
        for k, (tx, ty) in enumerate(taus):
            # point index i <-> coordinate (i - m) r; offset (i - m - tx)
            sub = table[m - tx: 3 * m + 1 - tx, m - ty: 3 * m + 1 - ty]
            masks |= sub.astype(np.int64) << k
        points = {}
        for mask, verts in need.items():
            spots = np.argwhere(masks == mask)
            if len(spots) < len(verts):
                break
            for v, (i, j) in zip(verts, spots):
                points[v] = (Fraction(int(i) - m) * r, Fraction(int(j) - m) * r)
        else:
            shapes = {}
            for (eid, _), (tx, ty) in zip(h.edges, taus):
                t = (tx * r, ty * r)
                if family.kind == "polygon":
                    shapes[eid] = PolygonTranslate(family.polygon, t)
                elif family.kind == "disk":
                    shapes[eid] = DiskTranslate(t)
                else:
                    shapes[eid] = EllipseTranslate(t, family.Q)
            return Representation(points, shapes)
    return None


def _halfplanes(h, resolution, span, caps):
    r = Fraction(resolution)
    m = int(span / r)
    coords = [k * r for k in range(-m, m + 1)]
    grid = [(x, y) for x in coords for y in coords]
    normals = [(a, b) for a in range(-2, 3) for b in range(-2, 3) if (a, b) != (0, 0)]
    offsets = [k * r for k in range(-2 * m, 2 * m + 1)]
    options = [(n, c) for n in normals for c in offsets]
    if len(options) ** len(h.edges) > caps.max_placements:
        raise OracleCapExceeded("too many halfplane placements")
    want = {v: tuple(v in mem for _, mem in h.edges) for v in h.vertices}
    for combo in product(options, repeat=len(h.edges)):
        points, used = {}, set()
        for v in h.vertices:
            spot = next(
                (p for p in grid if p not in used
                 and all((n[0] * p[0] + n[1] * p[1] <= c) == w for (n, c), w in zip(combo, want[v]))),
                None,
            )
            if spot is None:
                break
            points[v] = spot
            used.add(spot)
        else:
            shapes = {eid: Halfspace(n, c) for (eid, _), (n, c) in zip(h.edges, combo)}
            return Representation(points, shapes)
    return None


def _intervals(h, resolution, caps):
    r = Fraction(resolution)
    n = h.n_vertices
    slots = [k * r for k in range(int((n - 1) / r) + 1)]
    count = 1
    for k in range(n):
        count *= len(slots) - k
    if count > caps.max_placements:
        raise OracleCapExceeded("too many interval placements")
    for spots in permutations(slots, n):
        pos = dict(zip(h.vertices, spots))
        shapes = {}
        for eid, mem in h.edges:
            if not mem:
                centre, rad = slots[-1] + 10, r / 4
            else:
                lo, hi = min(pos[v] for v in mem), max(pos[v] for v in mem)
                if any(lo <= pos[u] <= hi for u in h.vertices if u not in mem):
                    break
                centre, rad = (lo + hi) / 2, (hi - lo) / 2 + r / 4
            shapes[eid] = EllipseTranslate((centre,), ((1 / (rad * rad),),))
        else:
            return Representation({v: (p,) for v, p in pos.items()}, shapes)
    return None


def brute_force_oracle(h: Hypergraph, family: Family, resolution=Fraction(1, 4), span=2, caps=OracleCaps()) -> Decision:
    if h.n_vertices > caps.max_vertices or len(h.edges) > caps.max_edges:
        raise OracleCapExceeded(f"oracle handles at most {caps.max_vertices} vertices and {caps.max_edges} edges")
    resolution = Fraction(resolution)
    if family.kind in ("polygon", "disk", "ellipse"):
        rep = _translate_family(h, family, resolution, Fraction(span), caps)
    elif family.kind == "halfplane":
        rep = _halfplanes(h, resolution, Fraction(span), caps)
    elif family.kind == "interval":
        rep = _intervals(h, resolution, caps)
    else:
        raise ValueError(f"unknown family {family.kind!r}")
    stats = {"resolution": str(resolution), "span": str(span)}
    if rep is None:
        return Decision(NO_AT_RESOLUTION, None, stats)
    report = verify_representation(h, rep)
    if not report:
        raise RuntimeError(f"grid witness failed exact verification: {report.to_dict()}")
    return Decision(YES, rep, stats)
