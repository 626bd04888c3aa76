"""Exact recognition for translates of one simple polygon.

A certificate says, for every vertex/edge pair, where the vertex's point
sits relative to the edge's translate P + tau_e: inside one triangle of a
fixed triangulation of conv(P), or strictly beyond one edge of conv(P).
Triangles inside P serve members; pocket triangles of conv(P) minus P and
hull edges serve non-members.  Given a certificate, realisability is one
LP over point coordinates and translations.  The recognizer enumerates
certificates depth-first and prunes with partial LPs.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .. import lp as lpmod
from ..geometry import PolygonTranslate, Triangulation, as_point, cross2, sub, triangulate_hull
from ..hypergraph import Hypergraph
from ..verify import Representation, verify_representation
from .decision import NO, YES, Decision

log = logging.getLogger(__name__)

DEFAULT_CAP = 12
UNIT_SQUARE = ((0, 0), (1, 0), (1, 1), (0, 1))


class InvalidCertificate(ValueError):
    pass


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Inside:
    triangle: int


@dataclass(frozen=True)
class Outside:
    hull_edge: int


Region = Union[Inside, Outside]


@dataclass(frozen=True)
class CertificateResult:
    status: str  # "feasible" | "infeasible"
    representation: Optional[Representation] = None
    coincident_unresolved: bool = False

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


class _Model:
    """LP variables and constraint rows for one hypergraph and polygon."""

    def __init__(self, h: Hypergraph, tri: Triangulation):
        self.h = h
        self.tri = tri
        self.anchor = h.edge_ids[0] if h.edges else None

    def variables(self):
        names = []
        for v in self.h.vertices:
            names += [f"x{v}", f"y{v}"]
        for e in self.h.edge_ids:
            if e != self.anchor:
                names += [f"a{e}", f"b{e}"]
        return names + ["t"]

    def _lin(self, v, e, u, w):
        """Coefficients of cross(u, (p_v - tau_e)) and its constant part.

        cross(u, q) = u_x q_y - u_y q_x for the relative point q = p_v - tau_e.
        """
        c = {f"x{v}": -u[1], f"y{v}": u[0]}
        if e != self.anchor:
            c[f"a{e}"] = u[1]
            c[f"b{e}"] = -u[0]
        return c, -cross2(u, w)

    def rows(self, v, e, region: Region, strict_all=False):
        """Constraints ``coeffs . z  rel  rhs`` for one certificate entry."""
        pts = self.tri.vertices
        out = []

        def halfplane(a, b, strict, bound=0):
            # cross(b - a, q - a) >= bound (+ t when strict)
            u = sub(b, a)
            coeffs, const = self._lin(v, e, u, a)
            if strict:
                coeffs = dict(coeffs, t=-1)
            out.append((coeffs, lpmod.GE, bound - const))

        if isinstance(region, Inside):
            k = region.triangle
            i, j, l = self.tri.triangles[k]
            corners = (pts[i], pts[j], pts[l])
            poly_edges = self.tri.polygon_edges()
            inner = self.tri.inside[k]
            for (a, ia), (b, ib) in (((pts[i], i), (pts[j], j)), ((pts[j], j), (pts[l], l)), ((pts[l], l), (pts[i], i))):
                strict = (not inner and frozenset((ia, ib)) in poly_edges) or strict_all
                halfplane(a, b, strict)
            if not inner:
                # keep away from the corners, which belong to P
                for c, (a, b) in zip(corners, ((corners[1], corners[2]), (corners[2], corners[0]), (corners[0], corners[1]))):
                    # cross(b - a, q - a) <= cross(b - a, c - a) - t
                    u = sub(b, a)
                    coeffs, const = self._lin(v, e, u, a)
                    coeffs = {k2: -x for k2, x in coeffs.items()}
                    coeffs["t"] = -1
                    out.append((coeffs, lpmod.GE, const - cross2(u, sub(c, a))))
        else:
            i, j = self.tri.hull_edges[region.hull_edge]
            a, b = pts[i], pts[j]
            # strictly right of the counter-clockwise hull edge
            u = sub(b, a)
            coeffs, const = self._lin(v, e, u, a)
            coeffs = {k2: -x for k2, x in coeffs.items()}
            coeffs["t"] = -1
            out.append((coeffs, lpmod.GE, const))
        return out

    def program(self, entries, strict_all=False, fixed: Optional[dict] = None):
        prog = lpmod.LinearProgram(self.variables())
        for (v, e), region in entries:
            for coeffs, rel, rhs in self.rows(v, e, region, strict_all):
                prog.add(coeffs, rel, rhs)
        for name, value in (fixed or {}).items():
            prog.add({name: 1}, lpmod.EQ, value)
        return prog


def choices(h: Hypergraph, tri: Triangulation, v: int, e: str) -> list:
    if v in h.members(e):
        return [Inside(k) for k, inner in enumerate(tri.inside) if inner]
    pockets = [Inside(k) for k, inner in enumerate(tri.inside) if not inner]
    return pockets + [Outside(k) for k in range(len(tri.hull_edges))]


def validate_certificate(h: Hypergraph, tri: Triangulation, cert: dict) -> None:
    for v in h.vertices:
        for e in h.edge_ids:
            if (v, e) not in cert:
                raise InvalidCertificate(f"no region for vertex {v} and edge {e}")
            region = cert[(v, e)]
            if region not in choices(h, tri, v, e):
                want = "a triangle of P" if v in h.members(e) else "a pocket triangle or hull edge"
                raise InvalidCertificate(f"vertex {v}, edge {e}: {region} is not {want}")


def _feasible_point(model, entries, fixed):
    prog = model.program(entries, fixed=fixed)
    res = lpmod.maximize_slack(prog, "t")
    if res.status == lpmod.INFEASIBLE or res.value <= 0:
        return None, res
    return res.assignment, res


def _separate(model, cert, assignment, h):
    """Move coincident points apart inside their own feasible regions.

    With the translations fixed each point's region is a convex set in
    which all strict constraints keep slack at least t/2; a second point of
    that region gives a segment to slide along.
    """
    t_half = assignment["t"] / 2
    fixed_tau = {k: x for k, x in assignment.items() if k[0] in "ab"}
    points = {v: (assignment[f"x{v}"], assignment[f"y{v}"]) for v in h.vertices}
    for v in h.vertices:
        others = [points[u] for u in h.vertices if u != v]
        if points[v] not in others:
            continue
        entries = [((v, e), cert[(v, e)]) for e in h.edge_ids]
        candidates = []
        for obj in ({f"x{v}": 1}, {f"x{v}": -1}, {f"y{v}": 1}, {f"y{v}": -1}):
            prog = model.program(entries, fixed=dict(fixed_tau, t=t_half))
            prog.maximize(obj)
            res = lpmod.solve(prog)
            if res.status == lpmod.OPTIMAL:
                candidates.append((res.assignment[f"x{v}"], res.assignment[f"y{v}"]))
        target = next((c for c in candidates if c != points[v]), None)
        if target is None:
            return None
        p = points[v]
        for k in range(2, 200):
            lam = Fraction(1, k)
            q = tuple(a + lam * (b - a) for a, b in zip(p, target))
            if q not in others:
                points[v] = q
                break
        else:
            return None
    return points


def check_certificate(h: Hypergraph, polygon, cert: dict, triangulation: Optional[Triangulation] = None) -> CertificateResult:
    tri = triangulation or triangulate_hull(polygon)
    validate_certificate(h, tri, cert)
    model = _Model(h, tri)
    entries = [((v, e), cert[(v, e)]) for v in h.vertices for e in h.edge_ids]
    assignment, _ = _feasible_point(model, entries, None)
    if assignment is None:
        return CertificateResult("infeasible")
    points = _separate(model, cert, assignment, h)
    if points is None:
        # every constraint strict: each point region is then open
        prog = model.program(entries, strict_all=True)
        res = lpmod.maximize_slack(prog, "t")
        if res.status != lpmod.INFEASIBLE and res.value > 0:
            assignment = res.assignment
            points = _separate(model, cert, assignment, h)
    if points is None:
        log.info("certificate feasible only with coincident points")
        return CertificateResult("infeasible", coincident_unresolved=True)
    poly = tuple(as_point(p) for p in polygon)
    shapes = {}
    for e in h.edge_ids:
        tau = (Fraction(0), Fraction(0)) if e == model.anchor else (assignment[f"a{e}"], assignment[f"b{e}"])
        shapes[e] = PolygonTranslate(poly, tau)
    rep = Representation(points, shapes)
    report = verify_representation(h, rep)
    if not report:
        raise RuntimeError(f"feasible certificate failed verification: {report.to_dict()}")
    return CertificateResult("feasible", rep)


def _distinct_points(h: Hypergraph):
    return Representation({v: (Fraction(v), Fraction(0)) for v in h.vertices}, {})


def recognize_polygon_translates(
    h: Hypergraph, polygon=UNIT_SQUARE, cap: int = DEFAULT_CAP, prune: bool = True
) -> Decision:
    """Complete search over certificates; yes carries a verified witness.

    ``cap`` bounds the number of vertex/edge pairs with two or more region
    choices.  With ``prune=False`` only complete certificates are checked.
    """
    tri = triangulate_hull(polygon)
    stats = {"lps_solved": 0, "certificates_checked": 0, "pruned": 0, "coincident_unresolved": 0}
    if not h.edges:
        return Decision(YES, _distinct_points(h), stats)
    verts = sorted(h.vertices, key=lambda v: (-sum(v in m for _, m in h.edges), v))
    edges = sorted(h.edge_ids, key=lambda e: (-len(h.members(e)), h.edge_ids.index(e)))
    pairs = [(v, e) for v in verts for e in edges]
    options = {p: choices(h, tri, *p) for p in pairs}
    branching = sum(1 for p in pairs if len(options[p]) >= 2)
    if branching > cap:
        raise InstanceTooLarge(f"{branching} pairs with several regions exceeds the cap of {cap}")
    if any(not options[p] for p in pairs):
        return Decision(NO, None, stats)
    # anchor the translation of the largest edge
    ordered = Hypergraph(h.n_vertices, tuple((e, h.members(e)) for e in edges))
    model = _Model(ordered, tri)
    cert = {}

    def partial_ok() -> bool:
        stats["lps_solved"] += 1
        prog = model.program(list(cert.items()))
        res = lpmod.maximize_slack(prog, "t")
        return res.status != lpmod.INFEASIBLE and res.value > 0

    def dfs(k):
        if k == len(pairs):
            stats["certificates_checked"] += 1
            stats["lps_solved"] += 1
            result = check_certificate(ordered, polygon, cert, tri)
            if result.coincident_unresolved:
                stats["coincident_unresolved"] += 1
            return result if result.feasible else None
        p = pairs[k]
        for region in options[p]:
            cert[p] = region
            if prune and not partial_ok():
                stats["pruned"] += 1
                continue
            found = dfs(k + 1)
            if found is not None:
                return found
        del cert[p]
        return None

    found = dfs(0)
    if found is None:
        return Decision(NO, None, stats)
    rep = Representation(found.representation.points, {e: found.representation.shapes[e] for e in h.edge_ids})
    return Decision(YES, rep, stats)
