"""From arrangements to hypergraphs and back.

``build_hypergraph`` turns a simple arrangement into a hypergraph: one
vertex per cell of the doubled arrangement, one edge per element and twin.
The builders realise that hypergraph from a stretching, with halfplanes or
with unit disks, and ``extract_separators`` recovers a line arrangement
from a disk (or ellipse) representation.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from .arrangement import (
    DoubledArrangement,
    HyperplaneArrangement,
    NonSimpleArrangement,
    cell_lp,
    cells,
    check_stretching,
    insert_twins,
    vertex_data,
)
from .geometry import (
    DiskTranslate,
    EllipseTranslate,
    Halfspace,
    Hyperplane,
    add,
    dot,
    scale,
    separator_congruent,
    sq_norm,
    sub,
    to_fraction,
)
from .hypergraph import Hypergraph
from .verify import Representation, verify_representation

log = logging.getLogger(__name__)

BELOW, BETWEEN, ABOVE = (-1, -1), (1, -1), (1, 1)


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionOutput:
    hypergraph: Hypergraph
    vertex_of_cell: dict  # sign vector over doubled labels -> vertex id
    edge_of_element: dict  # element or twin label -> edge id
    doubled: DoubledArrangement

    @property
    def base(self):
        return self.doubled.base

    @property
    def labels(self) -> tuple:
        return self.doubled.labels

    def cell_of_vertex(self) -> dict:
        return {v: s for s, v in self.vertex_of_cell.items()}

    def pairs(self) -> list:
        """(edge of element, edge of its twin) for each base element."""
        return [(self.edge_of_element[l], self.edge_of_element[t]) for l, t in self.doubled.twin_of.items()]


def build_hypergraph(a, doubled: Optional[DoubledArrangement] = None) -> ReductionOutput:
    """Edge of ``l`` = cells on the twin side of ``l``; edge of ``l'`` = cells below ``l'``."""
    if doubled is None:
        doubled = insert_twins(a)
    if isinstance(a, HyperplaneArrangement) and not a.is_simple():
        raise NonSimpleArrangement("the reduction needs a simple arrangement")
    cx = cells(doubled.doubled)
    labels = doubled.labels
    vertex_of_cell = {c.signs: i for i, c in enumerate(cx.cells, 1)}
    edges = []
    edge_of = {}
    for l, t in doubled.twin_of.items():
        il, it = labels.index(l), labels.index(t)
        edges.append((l, frozenset(v for s, v in vertex_of_cell.items() if s[il] == 1)))
        edges.append((t, frozenset(v for s, v in vertex_of_cell.items() if s[it] == -1)))
        edge_of[l], edge_of[t] = l, t
    h = Hypergraph(len(vertex_of_cell), tuple(edges))
    return ReductionOutput(h, vertex_of_cell, edge_of, doubled)


def vertex_stars(r: ReductionOutput) -> list:
    """For each base vertex, the 3^d hypergraph vertices around it.

    Entries are ``(label set, {pattern: vertex id or None})`` where a
    pattern gives, per element through the vertex, BELOW / BETWEEN / ABOVE
    its twin pair.  Every other element and twin keeps the vertex's side.
    """
    vd = vertex_data(r.base)
    labels = r.labels
    twin = r.doubled.twin_of
    out = []
    for through, sides in vd.vertices:
        through = sorted(through)
        found = {}
        for pattern in product((BELOW, BETWEEN, ABOVE), repeat=len(through)):
            s = {}
            for l, side in sides.items():
                s[l] = s[twin[l]] = side
            for l, (a, b) in zip(through, pattern):
                s[l], s[twin[l]] = a, b
            found[pattern] = r.vertex_of_cell.get(tuple(s[x] for x in labels))
        out.append((frozenset(through), found))
    return out


def check_vertex_stars(r: ReductionOutput) -> bool:
    """All 3^d cells exist and their membership patterns in the 2d edges differ."""
    h = r.hypergraph
    for through, found in vertex_stars(r):
        if any(v is None for v in found.values()):
            return False
        eids = [r.edge_of_element[x] for l in sorted(through) for x in (l, r.doubled.twin_of[l])]
        members = [h.members(e) for e in eids]
        patterns = {tuple(v in m for m in members) for v in found.values()}
        if len(patterns) != len(found):
            return False
    return True


# --------------------------------------------------------------------------
# halfspace builder


def _reorder(b: HyperplaneArrangement, labels) -> HyperplaneArrangement:
    if set(b.labels) != set(labels):
        raise ReductionError("stretching labels do not match the arrangement")
    return HyperplaneArrangement(tuple(labels), tuple(b[l] for l in labels))


def _require_stretching(r: ReductionOutput, b: HyperplaneArrangement):
    report = check_stretching(r.base, b)
    if not report:
        raise ReductionError(f"not a stretching: {report.to_dict()}")


def _cell_points(r: ReductionOutput, doubled_b: DoubledArrangement, box=None, equidistant=True) -> dict:
    """One rational point per hypergraph vertex, inside the matching cell of ``doubled_b``."""
    arr = doubled_b.doubled
    if arr.labels != r.labels:
        raise ReductionError("doubled label orders differ")
    alpha = doubled_b.alpha
    pairs = [(arr.labels.index(l), arr.labels.index(t)) for l, t in doubled_b.twin_of.items()]
    points = {}
    for signs, vid in r.vertex_of_cell.items():
        eqs = []
        if equidistant:
            for il, it in pairs:
                if signs[il] == 1 and signs[it] == -1:
                    h = arr.hyperplanes[il]
                    eqs.append((h.normal, h.offset + alpha / 2))
        t, p = cell_lp(arr, signs, box=box, equalities=eqs)
        if eqs and (t is None or t <= 0):
            log.warning("cell %s: no equidistant point, falling back", signs)
            t, p = cell_lp(arr, signs, box=box)
        if t is None or t <= 0:
            raise ReductionError(f"cell {signs} does not exist in the stretching")
        points[vid] = p
    return points


def halfspace_representation_from_stretching(
    r: ReductionOutput, b: HyperplaneArrangement, equidistant: bool = True
) -> Representation:
    b = _reorder(b, r.base.labels)
    _require_stretching(r, b)
    db = insert_twins(b)
    points = _cell_points(r, db, equidistant=equidistant)
    shapes = {}
    for l, t in db.twin_of.items():
        h = b[l]
        # element: n.x >= c, twin: n.x <= c + alpha
        shapes[r.edge_of_element[l]] = Halfspace(tuple(-a for a in h.normal), -h.offset)
        shapes[r.edge_of_element[t]] = Halfspace(h.normal, h.offset + db.alpha)
    rep = Representation(points, shapes, {"alpha": db.alpha, "doubled": db.doubled})
    report = verify_representation(r.hypergraph, rep)
    if not report:
        raise ReductionError(f"halfspace representation failed verification: {report.to_dict()}")
    return rep


# --------------------------------------------------------------------------
# disk builder (planar)


@dataclass(frozen=True)
class DiskBuilderParams:
    """``box`` is the half-width of the working box before the final 1/f scaling.

    ``epsilon`` bounds how far the normals may be from +-(0, 1) after the
    normalising map.  ``f`` overrides the computed scale factor (it must be
    at least the computed one).  ``Q`` switches to translates of the
    ellipse ``x^T Q x <= 1``.
    """

    box: Fraction = Fraction(1)
    epsilon: Fraction = Fraction(1, 10)
    f: Optional[Fraction] = None
    equidistant: bool = True
    Q: Optional[tuple] = None

    def __post_init__(self):
        for name in ("box", "epsilon"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.f is not None:
            object.__setattr__(self, "f", to_fraction(self.f))
            if self.f <= 0:
                raise ValueError("f must be positive")


@dataclass(frozen=True)
class AffineMap:
    """x -> M x + t on the plane."""

    m: tuple
    t: tuple

    def __call__(self, p):
        (a, b), (c, d) = self.m
        return (a * p[0] + b * p[1] + self.t[0], c * p[0] + d * p[1] + self.t[1])

    def det(self):
        (a, b), (c, d) = self.m
        return a * d - b * c

    def transform_hyperplane(self, h: Hyperplane) -> Hyperplane:
        # n.x = c  with  x = M^-1 (y - t)  gives  (M^-T n).y = c + (M^-T n).t
        (a, b), (c, d) = self.m
        det = self.det()
        n = h.normal
        n2 = ((d * n[0] - c * n[1]) / det, (-b * n[0] + a * n[1]) / det)
        return Hyperplane(n2, h.offset + dot(n2, self.t))

    def then(self, other: "AffineMap") -> "AffineMap":
        (a, b), (c, d) = self.m
        (e, f), (g, h) = other.m
        m = ((e * a + f * c, e * b + f * d), (g * a + h * c, g * b + h * d))
        return AffineMap(m, other(self.t))


def _apply(b: HyperplaneArrangement, g: AffineMap) -> HyperplaneArrangement:
    return HyperplaneArrangement(b.labels, tuple(g.transform_hyperplane(h) for h in b.hyperplanes))


def _foot(h: Hyperplane) -> tuple:
    """Closest point of the hyperplane to the origin (rational)."""
    return scale(h.normal, h.offset / sq_norm(h.normal))


def _sqrt_bounds(x: Fraction, rel) -> tuple:
    """Rationals lo <= sqrt(x) <= hi with hi - lo <= rel * lo."""
    k = 1
    while True:
        scale_ = 10 ** k
        num = x.numerator * x.denominator * scale_ * scale_
        r = math.isqrt(num)
        den = x.denominator * scale_
        lo, hi = Fraction(r, den), Fraction(r + 1, den)
        if lo > 0 and hi - lo <= rel * lo:
            return lo, hi
        k += 1


def normalize_lines(b: HyperplaneArrangement, epsilon) -> tuple:
    """Affine map with positive determinant: normals near +-(0,1), features in [-1/2, 1/2]^2."""
    g = AffineMap(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))), (Fraction(0), Fraction(0)))
    if any(h.normal[1] == 0 for h in b.hyperplanes):
        bad = {h.normal[1] / h.normal[0] for h in b.hyperplanes if h.normal[0] != 0}
        lam = next(Fraction(k) for k in range(1, len(bad) + 2) if Fraction(k) not in bad)
        # x' = x + lam y turns (a, b) into (a, b - lam a)
        g = AffineMap(((Fraction(1), lam), (Fraction(0), Fraction(1))), (Fraction(0), Fraction(0)))
    cur = _apply(b, g)
    ratio = max(abs(h.normal[0] / h.normal[1]) for h in cur.hyperplanes)
    k = max(Fraction(1), ratio / epsilon)
    g = g.then(AffineMap(((k, Fraction(0)), (Fraction(0), Fraction(1))), (Fraction(0), Fraction(0))))
    cur = _apply(b, g)
    feats = [p for _, p in cur.vertices()] + [_foot(h) for h in cur.hyperplanes]
    lo = [min(p[i] for p in feats) for i in range(2)]
    hi = [max(p[i] for p in feats) for i in range(2)]
    center = tuple((lo[i] + hi[i]) / 2 for i in range(2))
    width = max(hi[0] - lo[0], hi[1] - lo[1])
    s = 1 / width if width > 0 else Fraction(1)
    g = g.then(AffineMap(((s, Fraction(0)), (Fraction(0), s)), (-s * center[0], -s * center[1])))
    return g, _apply(b, g)


def _ldl_sqrt(q) -> Optional[tuple]:
    """Rational M with M^T M = Q when the LDL^T pivots are rational squares."""
    n = len(q)
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        D[j] = q[j][j] - sum(L[j][k] ** 2 * D[k] for k in range(j))
        if D[j] <= 0:
            return None
        for i in range(j + 1, n):
            L[i][j] = (q[i][j] - sum(L[i][k] * L[j][k] * D[k] for k in range(j))) / D[j]
    roots = []
    for x in D:
        rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if rn * rn != x.numerator or rd * rd != x.denominator:
            return None
        roots.append(Fraction(rn, rd))
    # M = sqrt(D) L^T
    return tuple(tuple(roots[i] * L[j][i] for j in range(n)) for i in range(n))


def _inverse2(m):
    (a, b), (c, d) = m
    det = a * d - b * c
    return ((d / det, -b / det), (-c / det, a / det))


def _matvec(m, v):
    return tuple(sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in m)


def disk_representation_from_stretching(
    r: ReductionOutput, b: HyperplaneArrangement, params: DiskBuilderParams = DiskBuilderParams()
) -> Representation:
    """Unit disks (or ellipse translates) realising the reduction hypergraph.

    Each element's disk is a radius-f disk on its twin side, centred on the
    normal through the line's point T closest to the origin, at a rational
    distance between f and f + g/100 from the line (g the twin gap).  All
    marked points live in the working box, so the disk boundary stays
    within the twin gap there once f >= 40 box^2 / h, h being the smallest height
    of a marked point above the line.  Scaling by 1/f gives unit disks.
    """
    b = _reorder(b, r.base.labels)
    if b.dim != 2:
        raise ReductionError("the disk builder is planar")
    _require_stretching(r, b)
    metric = None
    if params.Q is not None:
        q = tuple(tuple(to_fraction(x) for x in row) for row in params.Q)
        metric = _ldl_sqrt(q)
        if metric is None:
            raise ReductionError("Q has no rational square root of the supported form")
        # work in y = M x, where the ellipse becomes the unit disk
        b = _apply(b, AffineMap(metric, (Fraction(0), Fraction(0))))

    g, nb = normalize_lines(b, params.epsilon)
    box = params.box
    inner = box * 3 / 4
    db = insert_twins(nb)
    while True:
        if all(abs(x) <= inner for _, p in db.doubled.vertices() for x in p):
            break
        db = insert_twins(nb, max_alpha=db.alpha / 2)
    points = _cell_points(r, db, box=box, equidistant=params.equidistant)
    alpha = db.alpha

    # smallest height of a required point above each line (value units)
    heights = []
    for l, t in db.twin_of.items():
        h, ht = nb[l], db.doubled[t]
        for p in points.values():
            if h.value(p) > 0:
                heights.append((h, h.value(p)))
            if ht.value(p) < 0:
                heights.append((h, -ht.value(p)))
    h_lo = None
    for h, v in heights:
        _, n_hi = _sqrt_bounds(sq_norm(h.normal), Fraction(1, 1000))
        dist = v / n_hi
        h_lo = dist if h_lo is None or dist < h_lo else h_lo
    gaps = []
    for l in db.twin_of:
        _, n_hi = _sqrt_bounds(sq_norm(nb[l].normal), Fraction(1, 1000))
        gaps.append(alpha / n_hi)
    g_min = min(gaps)
    if h_lo is None:
        h_lo = g_min / 2
    lsq = 8 * box * box  # squared diameter of the box
    f = 5 * lsq / h_lo
    if params.f is not None:
        if params.f < f:
            raise ReductionError(f"f={params.f} is below the required {f}")
        f = params.f

    centers, tangency = {}, {}
    for l, t in db.twin_of.items():
        h = nb[l]
        nsq = sq_norm(h.normal)
        slack = min(g_min, h_lo) / 100
        lo, _ = _sqrt_bounds(nsq, slack / (f + slack))
        F = f / lo  # F |n| >= f and F |n| <= f + slack, checked below
        if not (F * F * nsq >= f * f and F * F * nsq <= (f + slack) ** 2):
            raise ReductionError("failed to place the centre at a rational distance")
        T = _foot(h)
        T2 = _foot(db.doubled[t])
        centers[r.edge_of_element[l]] = add(T, scale(h.normal, F))
        centers[r.edge_of_element[t]] = sub(T2, scale(h.normal, F))
        tangency[r.edge_of_element[l]] = T
        tangency[r.edge_of_element[t]] = T2

    inv_f = 1 / f
    pts = {v: scale(p, inv_f) for v, p in points.items()}
    cs = {e: scale(c, inv_f) for e, c in centers.items()}
    tg = {e: scale(p, inv_f) for e, p in tangency.items()}
    meta = {"f": f, "alpha": alpha, "box": box * inv_f, "tangency": tg, "normalization": g}
    if metric is None:
        shapes = {e: DiskTranslate(c) for e, c in cs.items()}
    else:
        mi = _inverse2(metric)
        pts = {v: _matvec(mi, p) for v, p in pts.items()}
        shapes = {e: EllipseTranslate(_matvec(mi, c), q) for e, c in cs.items()}
        meta["tangency"] = {e: _matvec(mi, p) for e, p in tg.items()}
        meta["metric"] = metric
    rep = Representation(pts, shapes, meta)
    report = verify_representation(r.hypergraph, rep)
    if not report:
        raise ReductionError(f"disk representation failed verification: {report.to_dict()}")
    return rep


def in_box(p, half_width) -> bool:
    return all(abs(x) <= half_width for x in p)


def extract_separators(h: Hypergraph, rep: Representation, r: ReductionOutput) -> HyperplaneArrangement:
    """One bisector per twin pair; its positive side holds shape(l) minus shape(l')."""
    labels, hyps = [], []
    for l, t in r.doubled.twin_of.items():
        s_l = rep.shapes[r.edge_of_element[l]]
        s_t = rep.shapes[r.edge_of_element[t]]
        if not isinstance(s_l, (DiskTranslate, EllipseTranslate)):
            raise ReductionError("separators need congruent disks or ellipses")
        labels.append(l)
        hyps.append(separator_congruent(s_t, s_l))
    return HyperplaneArrangement(tuple(labels), tuple(hyps))
