"""Exact rational geometry: predicates, hulls, triangulation and shapes.

All coordinates are :class:`fractions.Fraction`; nothing in here touches
floating point.  Points are plain tuples of fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union

Point = tuple  # tuple[Fraction, ...]
Number = Union[int, Fraction, str]


def to_fraction(value) -> Fraction:
    """Coerce ints, fractions and ``"num/den"`` strings to a Fraction.

    Floats are refused: they would silently smuggle rounding error into
    exact computations.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def as_point(coords: Iterable) -> Point:
    pt = tuple(to_fraction(c) for c in coords)
    if not pt:
        raise ValueError("points need at least one coordinate")
    return pt


def _check_dims(*points: Sequence, d: int | None = None) -> int:
    dims = {len(p) for p in points}
    if d is not None:
        dims.add(d)
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch: {sorted(dims)}")
    return dims.pop()


def add(p: Point, q: Point) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def sub(p: Point, q: Point) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def scale(p: Point, s) -> Point:
    return tuple(a * s for a in p)


def dot(p: Sequence, q: Sequence):
    return sum((a * b for a, b in zip(p, q)), Fraction(0))


def sq_norm(p: Sequence) -> Fraction:
    return dot(p, p)


def midpoint(p: Point, q: Point) -> Point:
    return tuple((a + b) / 2 for a, b in zip(p, q))


def sign(x) -> int:
    return (x > 0) - (x < 0)


def cross2(u: Sequence, v: Sequence):
    return u[0] * v[1] - u[1] * v[0]


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of det(q - p, r - p); +1 means p, q, r turn counter-clockwise."""
    _check_dims(p, q, r, d=2)
    return sign((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def signed_area2(poly: Sequence[Point]) -> Fraction:
    """Twice the signed area (shoelace); positive for counter-clockwise."""
    n = len(poly)
    return sum((cross2(poly[i], poly[(i + 1) % n]) for i in range(n)), Fraction(0))


# --------------------------------------------------------------------------
# exact linear algebra


def solve_linear(rows: Sequence[Sequence], rhs: Sequence):
    """Solve a square system exactly. Returns None when singular."""
    n = len(rows)
    m = [[to_fraction(a) for a in row] + [to_fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [a * inv for a in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(m[r][n] for r in range(n))


def rank(rows: Sequence[Sequence]) -> int:
    m = [[to_fraction(a) for a in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][col] != 0:
                f = m[i][col] / m[r][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


# --------------------------------------------------------------------------
# hulls and polygons


def convex_hull(points: Iterable, keep_collinear: bool = False) -> list[Point]:
    """Counter-clockwise convex hull by Andrew's monotone chain.

    With ``keep_collinear`` the boundary points lying in the relative
    interior of hull edges are kept as well.
    """
    pts = sorted(set(as_point(p) for p in points))
    if len(pts) < 3:
        raise ValueError("convex hull needs at least 3 distinct points")
    _check_dims(*pts, d=2)
    if all(orientation(pts[0], pts[1], p) == 0 for p in pts[2:]):
        raise ValueError("degenerate input: all points are collinear")

    def chain(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2:
                o = orientation(out[-2], out[-1], p)
                if o < 0 or (o == 0 and not keep_collinear):
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if keep_collinear:
        # points on the segment between the two extreme x-points can end
        # up in both chains
        seen, uniq = set(), []
        for p in hull:
            if p not in seen:
                seen.add(p)
                uniq.append(p)
        hull = uniq
    return hull


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    return (
        orientation(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed segments ab and cd share at least one point."""
    o1, o2 = orientation(a, b, c), orientation(a, b, d)
    o3, o4 = orientation(c, d, a), orientation(c, d, b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    return (
        (o1 == 0 and _on_segment(c, a, b))
        or (o2 == 0 and _on_segment(d, a, b))
        or (o3 == 0 and _on_segment(a, c, d))
        or (o4 == 0 and _on_segment(b, c, d))
    )


def is_simple_polygon(poly: Sequence[Point]) -> bool:
    n = len(poly)
    if n < 3 or len(set(poly)) != n or signed_area2(poly) == 0:
        return False
    for i in range(n):
        a, b, c = poly[i - 1], poly[i], poly[(i + 1) % n]
        # consecutive edges must not fold back onto each other
        if orientation(a, b, c) == 0 and dot(sub(a, b), sub(c, b)) > 0:
            return False
    for i, j in combinations(range(n), 2):
        if j == i + 1 or (i == 0 and j == n - 1):
            continue
        if segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]):
            return False
    return True


def in_closed_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    o1, o2, o3 = orientation(a, b, p), orientation(b, c, p), orientation(c, a, p)
    return (o1 >= 0 and o2 >= 0 and o3 >= 0) or (o1 <= 0 and o2 <= 0 and o3 <= 0)


def _ear_clip(idx: list[int], pts: Sequence[Point]) -> list[tuple[int, int, int]]:
    ring = list(idx)
    tris = []
    while len(ring) > 3:
        for k in range(len(ring)):
            a, b, c = ring[k - 1], ring[k], ring[(k + 1) % len(ring)]
            if orientation(pts[a], pts[b], pts[c]) <= 0:
                continue
            if any(
                in_closed_triangle(pts[o], pts[a], pts[b], pts[c])
                for o in ring
                if o not in (a, b, c)
            ):
                continue
            tris.append((a, b, c))
            del ring[k]
            break
        else:
            raise ValueError("ear clipping stalled; polygon is not simple")
    a, b, c = ring
    if orientation(pts[a], pts[b], pts[c]) <= 0:
        raise ValueError("ear clipping ended on a degenerate triangle")
    tris.append((a, b, c))
    return tris


@dataclass(frozen=True)
class Triangulation:
    """Triangulation of conv(P) in which every edge of P is an edge.

    ``triangles`` index into ``vertices`` (the polygon, counter-clockwise);
    ``inside[t]`` tells whether triangle ``t`` lies in P or in a pocket of
    conv(P) minus P.  ``hull`` lists the extreme vertices counter-clockwise.
    """

    vertices: tuple
    triangles: tuple
    inside: tuple
    hull: tuple

    @property
    def hull_edges(self) -> list[tuple[int, int]]:
        h = self.hull
        return [(h[i], h[(i + 1) % len(h)]) for i in range(len(h))]

    def edges(self) -> set[frozenset]:
        out = set()
        for a, b, c in self.triangles:
            out |= {frozenset((a, b)), frozenset((b, c)), frozenset((a, c))}
        return out

    def polygon_edges(self) -> set[frozenset]:
        n = len(self.vertices)
        return {frozenset((i, (i + 1) % n)) for i in range(n)}

    def points_of(self, t: int) -> tuple[Point, Point, Point]:
        return tuple(self.vertices[i] for i in self.triangles[t])


def triangulate_hull(polygon: Sequence) -> Triangulation:
    """Ear-clip P, then ear-clip every pocket of conv(P) outside P."""
    pts = tuple(as_point(p) for p in polygon)
    if not is_simple_polygon(pts):
        raise ValueError("polygon is not simple")
    if signed_area2(pts) < 0:
        raise ValueError("polygon must be counter-clockwise")
    n = len(pts)
    index = {p: i for i, p in enumerate(pts)}
    tris = _ear_clip(list(range(n)), pts)
    inside = [True] * len(tris)

    boundary = [index[p] for p in convex_hull(pts, keep_collinear=True)]
    # rotate so the boundary is listed in polygon order
    start = boundary.index(min(boundary))
    boundary = boundary[start:] + boundary[:start]
    for k in range(len(boundary)):
        i, j = boundary[k], boundary[(k + 1) % len(boundary)]
        if (i + 1) % n == j:
            continue  # hull edge is a polygon edge
        chain = [i]
        while chain[-1] != j:
            chain.append((chain[-1] + 1) % n)
        ring = list(reversed(chain))  # pockets run clockwise in polygon order
        if signed_area2([pts[a] for a in ring]) < 0:
            ring.reverse()
        pocket = _ear_clip(ring, pts)
        tris.extend(pocket)
        inside.extend([False] * len(pocket))

    hull = tuple(index[p] for p in convex_hull(pts))
    return Triangulation(pts, tuple(tris), tuple(inside), hull)


def point_in_polygon(p: Point, poly: Sequence[Point]) -> bool:
    """Closed point-in-polygon test via the winding number."""
    n = len(poly)
    winding = 0
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if _on_segment(p, a, b):
            return True
        if a[1] <= p[1]:
            if b[1] > p[1] and orientation(a, b, p) > 0:
                winding += 1
        elif b[1] <= p[1] and orientation(a, b, p) < 0:
            winding -= 1
    return winding != 0


# --------------------------------------------------------------------------
# hyperplanes and shapes


@dataclass(frozen=True)
class Hyperplane:
    """The set {x : normal . x = offset}."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", as_point(self.normal))
        object.__setattr__(self, "offset", to_fraction(self.offset))
        if all(a == 0 for a in self.normal):
            raise ValueError("hyperplane normal must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, p: Sequence) -> Fraction:
        return dot(self.normal, p) - self.offset


def side_of_hyperplane(h: Hyperplane, p: Sequence) -> int:
    _check_dims(h.normal, p)
    return sign(h.value(p))


@dataclass(frozen=True)
class Halfspace:
    """Closed halfspace normal . x <= offset."""

    normal: tuple
    offset: Fraction
    kind = "halfspace"

    def __post_init__(self):
        object.__setattr__(self, "normal", as_point(self.normal))
        object.__setattr__(self, "offset", to_fraction(self.offset))
        if all(a == 0 for a in self.normal):
            raise ValueError("halfspace normal must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.normal)


@dataclass(frozen=True)
class DiskTranslate:
    """Closed unit ball around ``center`` (a disk in the plane)."""

    center: tuple
    kind = "disk"

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))

    @property
    def dim(self) -> int:
        return len(self.center)


def _is_positive_definite(q) -> bool:
    # Sylvester's criterion on leading principal minors, via elimination
    m = [list(row) for row in q]
    n = len(m)
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return True


@dataclass(frozen=True)
class EllipseTranslate:
    """The set (x - c)^T Q (x - c) <= 1 for a rational SPD matrix Q."""

    center: tuple
    Q: tuple
    kind = "ellipse"

    def __post_init__(self):
        center = as_point(self.center)
        q = tuple(tuple(to_fraction(a) for a in row) for row in self.Q)
        d = len(center)
        if len(q) != d or any(len(row) != d for row in q):
            raise ValueError("Q must be a d x d matrix matching the center")
        if any(q[i][j] != q[j][i] for i in range(d) for j in range(d)):
            raise ValueError("Q must be symmetric")
        if not _is_positive_definite(q):
            raise ValueError("Q must be positive definite")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "Q", q)

    @property
    def dim(self) -> int:
        return len(self.center)


def quad_form(q, v: Sequence) -> Fraction:
    return sum((v[i] * q[i][j] * v[j] for i in range(len(v)) for j in range(len(v))), Fraction(0))


@dataclass(frozen=True)
class PolygonTranslate:
    """A translate of a simple counter-clockwise reference polygon."""

    polygon: tuple
    translation: tuple
    kind = "polygon"

    def __post_init__(self):
        poly = tuple(as_point(p) for p in self.polygon)
        if any(len(p) != 2 for p in poly):
            raise ValueError("polygons are planar")
        if not is_simple_polygon(poly):
            raise ValueError("reference polygon must be simple")
        if signed_area2(poly) < 0:
            raise ValueError("reference polygon must be counter-clockwise")
        object.__setattr__(self, "polygon", poly)
        object.__setattr__(self, "translation", as_point(self.translation))
        _check_dims(self.translation, d=2)

    @property
    def dim(self) -> int:
        return 2

    def vertices(self) -> list[Point]:
        return [add(p, self.translation) for p in self.polygon]


Shape = Union[Halfspace, DiskTranslate, EllipseTranslate, PolygonTranslate]


def contains(shape: Shape, p: Sequence) -> bool:
    """Exact, boundary-inclusive membership test."""
    p = as_point(p)
    _check_dims(p, d=shape.dim)
    if isinstance(shape, Halfspace):
        return dot(shape.normal, p) <= shape.offset
    if isinstance(shape, DiskTranslate):
        return sq_norm(sub(p, shape.center)) <= 1
    if isinstance(shape, EllipseTranslate):
        return quad_form(shape.Q, sub(p, shape.center)) <= 1
    if isinstance(shape, PolygonTranslate):
        return point_in_polygon(sub(p, shape.translation), shape.polygon)
    raise TypeError(f"unknown shape {shape!r}")


def separator_congruent(s1: Shape, s2: Shape) -> Hyperplane:
    """Bisector separating s1 minus s2 (negative side) from s2 minus s1.

    Only translates of one disk or one ellipse are supported; for those the
    bisector of the centers in the body's own metric does the job.
    """
    if isinstance(s1, DiskTranslate) and isinstance(s2, DiskTranslate):
        q = None
    elif isinstance(s1, EllipseTranslate) and isinstance(s2, EllipseTranslate):
        if s1.Q != s2.Q:
            raise ValueError("ellipses are not translates of one another")
        q = s1.Q
    else:
        raise ValueError("separators are only built for congruent disks or ellipses")
    c1, c2 = s1.center, s2.center
    _check_dims(c1, c2)
    if c1 == c2:
        raise ValueError("identical centers: the twin shapes coincide")
    d = len(c1)
    if q is None:
        normal = sub(c2, c1)
        offset = (sq_norm(c2) - sq_norm(c1)) / 2
    else:
        diff = sub(c2, c1)
        normal = tuple(sum((q[i][j] * diff[j] for j in range(d)), Fraction(0)) for i in range(d))
        offset = (quad_form(q, c2) - quad_form(q, c1)) / 2
    return Hyperplane(normal, offset)
