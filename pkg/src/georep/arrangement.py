"""Pseudoline and hyperplane arrangements.

Two encodings live side by side:

* :class:`WiringDiagram` -- a (possibly partial) planar pseudoline
  arrangement given as a sequence of adjacent transpositions.  Lines are
  listed bottom to top at the far left; the positive side of a wire is the
  region above it.
* :class:`HyperplaneArrangement` -- labelled rational hyperplanes in R^d;
  the positive side of ``n . x = c`` is ``n . x > c``.

Sign vectors are tuples of +1/-1 aligned with the arrangement's labels.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence, Union

from . import lp as lpmod
from .geometry import Hyperplane, rank, sign, solve_linear, to_fraction


class NonSimpleArrangement(ValueError):
    pass


# --------------------------------------------------------------------------
# wiring diagrams


@dataclass(frozen=True)
class WiringDiagram:
    n_lines: int
    swaps: tuple  # (label, label) pairs, in sweep order
    labels: tuple = None  # bottom-to-top order at the far left

    def __post_init__(self):
        labels = tuple(str(x) for x in (self.labels or range(1, self.n_lines + 1)))
        if len(labels) != self.n_lines or len(set(labels)) != self.n_lines:
            raise ValueError("need n_lines distinct labels")
        swaps = tuple((str(a), str(b)) for a, b in self.swaps)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "swaps", swaps)
        seen = set()
        order = list(labels)
        pos = {l: i for i, l in enumerate(order)}
        for a, b in swaps:
            if a not in pos or b not in pos:
                raise ValueError(f"swap ({a},{b}) names an unknown line")
            pair = frozenset((a, b))
            if len(pair) != 2:
                raise ValueError(f"a line cannot cross itself ({a})")
            if pair in seen:
                raise NonSimpleArrangement(f"lines {a} and {b} cross twice")
            seen.add(pair)
            i, j = sorted((pos[a], pos[b]))
            if j != i + 1:
                raise ValueError(f"swap ({a},{b}) is not between adjacent wires")
            order[i], order[j] = order[j], order[i]
            pos[order[i]], pos[order[j]] = i, j

    @property
    def dim(self) -> int:
        return 2

    @property
    def crossing_set(self) -> frozenset:
        return frozenset(frozenset(s) for s in self.swaps)

    def orders(self):
        """Bottom-to-top wire orders before the first and after every swap."""
        order = list(self.labels)
        yield tuple(order)
        for a, b in self.swaps:
            i, j = order.index(a), order.index(b)
            order[i], order[j] = order[j], order[i]
            yield tuple(order)


@dataclass(frozen=True)
class HyperplaneArrangement:
    labels: tuple
    hyperplanes: tuple

    def __post_init__(self):
        labels = tuple(str(l) for l in self.labels)
        hyps = tuple(h if isinstance(h, Hyperplane) else Hyperplane(*h) for h in self.hyperplanes)
        if len(labels) != len(hyps) or len(set(labels)) != len(labels):
            raise ValueError("need one distinct label per hyperplane")
        if len({h.dim for h in hyps}) > 1:
            raise ValueError("hyperplanes of mixed dimension")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "hyperplanes", hyps)

    @classmethod
    def from_coefficients(cls, rows, labels=None):
        """Rows ``(n_1, ..., n_d, c)`` meaning ``n . x = c``."""
        hyps = [Hyperplane(tuple(r[:-1]), r[-1]) for r in rows]
        return cls(tuple(labels or range(1, len(hyps) + 1)), tuple(hyps))

    @property
    def dim(self) -> int:
        return self.hyperplanes[0].dim if self.hyperplanes else 0

    def __getitem__(self, label) -> Hyperplane:
        return self.hyperplanes[self.labels.index(label)]

    def __len__(self):
        return len(self.hyperplanes)

    def sign_vector(self, p) -> tuple:
        return tuple(sign(h.value(p)) for h in self.hyperplanes)

    def vertices(self) -> list:
        """All (label set, point) pairs where d hyperplanes meet in one point."""
        d = self.dim
        out = []
        for idx in combinations(range(len(self)), d):
            hs = [self.hyperplanes[i] for i in idx]
            p = solve_linear([h.normal for h in hs], [h.offset for h in hs])
            if p is not None:
                out.append((frozenset(self.labels[i] for i in idx), p))
        return out

    def is_simple(self) -> bool:
        d = self.dim
        for k in range(2, d + 2):
            for idx in combinations(range(len(self)), k):
                hs = [self.hyperplanes[i] for i in idx]
                a = [h.normal for h in hs]
                r = rank(a)
                consistent = rank([h.normal + (h.offset,) for h in hs]) == r
                if consistent and (k > d or r < k):
                    return False
        return True

    def restrict(self, keep: int = 2) -> "HyperplaneArrangement":
        return HyperplaneArrangement(
            self.labels, tuple(Hyperplane(h.normal[:keep], h.offset) for h in self.hyperplanes)
        )


Arrangement = Union[WiringDiagram, HyperplaneArrangement]


# --------------------------------------------------------------------------
# vertex data: what a stretching has to preserve


@dataclass(frozen=True)
class VertexData:
    """Vertices of a (partial) arrangement and the side of every other element.

    ``vertices`` holds ``(label_set, sides)`` pairs where ``sides`` maps
    each label outside ``label_set`` to +1 or -1.
    """

    labels: tuple
    dim: int
    vertices: tuple


def vertex_data(a) -> VertexData:
    if isinstance(a, VertexData):
        return a
    if isinstance(a, WiringDiagram):
        verts = []
        order = list(a.labels)
        for x, y in a.swaps:
            i, j = sorted((order.index(x), order.index(y)))
            sides = {l: 1 for l in order[:i]}
            sides.update({l: -1 for l in order[j + 1:]})
            verts.append((frozenset((x, y)), sides))
            order[i], order[j] = order[j], order[i]
        return VertexData(a.labels, 2, tuple(verts))
    if isinstance(a, HyperplaneArrangement):
        if not a.is_simple():
            raise NonSimpleArrangement("vertex data needs a simple arrangement")
        verts = []
        for labels, p in a.vertices():
            sides = {
                l: sign(h.value(p)) for l, h in zip(a.labels, a.hyperplanes) if l not in labels
            }
            verts.append((labels, sides))
        return VertexData(a.labels, a.dim, tuple(verts))
    raise TypeError(f"no vertex data for {type(a).__name__}")


@dataclass
class StretchReport:
    ok: bool
    failures: list = field(default_factory=list)  # (vertex labels, label, expected, observed)
    missing_vertices: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    @property
    def bad_hyperplanes(self) -> set:
        return {f[1] for f in self.failures}

    def to_dict(self) -> dict:
        return {
            "stretching": self.ok,
            "missing_vertices": [sorted(v) for v in self.missing_vertices],
            "failures": [
                {"vertex": sorted(v), "hyperplane": l, "expected": e, "observed": o}
                for v, l, e, o in self.failures
            ],
        }


def check_stretching(a, b: HyperplaneArrangement, oriented: bool = True) -> StretchReport:
    """Is ``b`` a stretching of ``a``?

    Every vertex of ``a`` must be a single point of ``b`` and every other
    hyperplane of ``b`` must put that point on the recorded side.  Sides are
    compared with orientation (positive side = above the wire); with
    ``oriented=False`` each hyperplane may flip all of its sides at once.
    """
    vd = vertex_data(a)
    if set(vd.labels) != set(b.labels):
        raise ValueError("label sets of the two arrangements differ")
    if b.dim != vd.dim:
        raise ValueError("dimension mismatch between arrangements")
    report = StretchReport(True)
    observed_all = []
    for labels, sides in vd.vertices:
        hs = [b[l] for l in sorted(labels)]
        p = solve_linear([h.normal for h in hs], [h.offset for h in hs])
        if p is None:
            report.ok = False
            report.missing_vertices.append(labels)
            continue
        for l, expected in sides.items():
            observed_all.append((labels, l, expected, sign(b[l].value(p))))
    if oriented:
        bad = [f for f in observed_all if f[2] != f[3]]
    else:
        flip = {}
        for _, l, e, o in observed_all:
            if o != 0:
                flip.setdefault(l, set()).add(e * o)
        bad = [f for f in observed_all if f[3] == 0 or len(flip[f[1]]) > 1]
    if bad:
        report.ok = False
        report.failures.extend(bad)
    return report


def wiring_from_lines(b: HyperplaneArrangement) -> WiringDiagram:
    """Sweep a rational line arrangement left to right.

    Every line needs a positive y-coefficient so that its positive side is
    the region above it.
    """
    if b.dim != 2:
        raise ValueError("wiring diagrams are planar")
    for l, h in zip(b.labels, b.hyperplanes):
        if h.normal[1] <= 0:
            raise ValueError(f"line {l} needs a positive y-coefficient")
    slope = {l: (h.normal[0] / h.normal[1], h.offset / h.normal[1]) for l, h in zip(b.labels, b.hyperplanes)}
    order = sorted(b.labels, key=lambda l: slope[l])
    events = []
    for p, q in combinations(b.labels, 2):
        hp, hq = b[p], b[q]
        x = solve_linear([hp.normal, hq.normal], [hp.offset, hq.offset])
        if x is not None:
            events.append((x[0], p, q))
    events.sort(key=lambda e: e[0])
    return WiringDiagram(len(order), tuple((p, q) for _, p, q in events), tuple(order))


# --------------------------------------------------------------------------
# cells


@dataclass(frozen=True)
class Cell:
    signs: tuple
    point: Optional[tuple] = None


@dataclass(frozen=True)
class CellComplex:
    labels: tuple
    cells: tuple
    vertices: tuple  # (label set, point or swap index)

    def signs(self) -> set:
        return {c.signs for c in self.cells}

    def __len__(self):
        return len(self.cells)


def _wiring_cells(w: WiringDiagram) -> CellComplex:
    idx = {l: i for i, l in enumerate(w.labels)}
    found = {}
    for order in w.orders():
        for gap in range(len(order) + 1):
            s = [0] * len(order)
            for k, l in enumerate(order):
                s[idx[l]] = 1 if k < gap else -1
            found.setdefault(tuple(s), None)
    cells = tuple(Cell(s) for s in sorted(found))
    verts = tuple((frozenset(p), i) for i, p in enumerate(w.swaps))
    return CellComplex(w.labels, cells, verts)


def cell_lp(
    a: HyperplaneArrangement,
    signs: Sequence[int],
    box: Optional[Fraction] = None,
    equalities: Sequence = (),
    only: Optional[Sequence[int]] = None,
):
    """Maximise the common slack t of ``signs[i] * (n_i . x - c_i) >= t``.

    Returns ``(t, point)``; the sign vector is realised iff ``t > 0``.
    ``box`` confines x to ``[-box, box]^d``; ``equalities`` are extra
    ``(normal, value)`` pairs with ``normal . x = value``.
    """
    d = a.dim
    xs = [f"x{i}" for i in range(d)]
    prog = lpmod.LinearProgram(xs + ["t"])
    rows = range(len(a)) if only is None else only
    for i in rows:
        h, s = a.hyperplanes[i], signs[i]
        coeffs = {x: s * n for x, n in zip(xs, h.normal)}
        coeffs["t"] = -1
        prog.add(coeffs, lpmod.GE, s * h.offset)
    if box is not None:
        for x in xs:
            prog.add({x: 1}, lpmod.LE, box)
            prog.add({x: 1}, lpmod.GE, -box)
    for normal, value in equalities:
        prog.add(dict(zip(xs, normal)), lpmod.EQ, value)
    res = lpmod.maximize_slack(prog, "t")
    if res.status == lpmod.INFEASIBLE:
        return None, None
    return res.value, tuple(res.assignment[x] for x in xs)


def _generic_point(a: HyperplaneArrangement) -> tuple:
    d = a.dim
    primes = [97, 89, 83, 79, 73, 71]
    for k in range(1, 10_000):
        p = tuple(Fraction(k ** (i + 1), primes[i % len(primes)]) for i in range(d))
        if all(h.value(p) != 0 for h in a.hyperplanes):
            return p
    raise RuntimeError("could not find a point off every hyperplane")


def _coordinate_cells(a: HyperplaneArrangement) -> CellComplex:
    if not a.is_simple():
        raise NonSimpleArrangement("cell enumeration needs a simple arrangement")
    if not a.hyperplanes:
        raise ValueError("empty arrangement")
    start = a.sign_vector(_generic_point(a))
    found = {}
    t, p = cell_lp(a, start)
    found[start] = p
    frontier = [start]
    tested = {start}
    while frontier:
        s = frontier.pop()
        for i in range(len(s)):
            nb = s[:i] + (-s[i],) + s[i + 1:]
            if nb in tested:
                continue
            tested.add(nb)
            t, p = cell_lp(a, nb)
            if t is not None and t > 0:
                found[nb] = p
                frontier.append(nb)
    cells = tuple(Cell(s, found[s]) for s in sorted(found))
    return CellComplex(a.labels, cells, tuple(a.vertices()))


def cells(a: Arrangement) -> CellComplex:
    """All full-dimensional cells, sorted by sign vector.

    Coordinate arrangements are explored by flipping one sign at a time from
    a known cell; a flip is kept when the LP certifies a strictly interior
    point.  Adjacent cells differ in exactly one sign, so the search
    reaches every cell.
    """
    if isinstance(a, WiringDiagram):
        return _wiring_cells(a)
    return _coordinate_cells(a)


# --------------------------------------------------------------------------
# twins


def twin_label(label: str) -> str:
    return f"{label}'"


@dataclass(frozen=True)
class DoubledArrangement:
    """``doubled`` lists every element followed directly by its twin.

    Each twin sits on the positive side of its partner.  In the coordinate
    case the twin of ``n . x = c`` is ``n . x = c + alpha``.
    """

    base: object
    doubled: object
    twin_of: dict
    alpha: Optional[Fraction] = None

    @property
    def labels(self) -> tuple:
        return self.doubled.labels


def _twin_labels(labels):
    twins = {l: twin_label(l) for l in labels}
    if set(twins.values()) & set(labels):
        raise ValueError("twin labels collide with existing labels")
    out = []
    for l in labels:
        out += [l, twins[l]]
    return tuple(out), twins


def _double_wiring(w: WiringDiagram) -> DoubledArrangement:
    labels, twins = _twin_labels(w.labels)
    swaps = []
    order = list(w.labels)
    for x, y in w.swaps:
        lo, hi = (x, y) if order.index(x) < order.index(y) else (y, x)
        lt, ht = twins[lo], twins[hi]
        swaps += [(lt, hi), (lo, hi), (lt, ht), (lo, ht)]
        i, j = order.index(x), order.index(y)
        order[i], order[j] = order[j], order[i]
    doubled = WiringDiagram(2 * w.n_lines, tuple(swaps), labels)
    return DoubledArrangement(w, doubled, twins)


def _double_coordinates(a: HyperplaneArrangement, alpha) -> HyperplaneArrangement:
    labels, _ = _twin_labels(a.labels)
    hyps = []
    for h in a.hyperplanes:
        hyps += [h, Hyperplane(h.normal, h.offset + alpha)]
    return HyperplaneArrangement(labels, tuple(hyps))


def _initial_gap(a: HyperplaneArrangement) -> Fraction:
    dists = []
    for labels, p in a.vertices():
        for l, h in zip(a.labels, a.hyperplanes):
            if l not in labels:
                dists.append(abs(h.value(p)))
    if not dists:
        for g, h in combinations(a.hyperplanes, 2):
            if rank([g.normal, h.normal]) == 1:
                k = next(i for i, x in enumerate(g.normal) if x)
                lam = h.normal[k] / g.normal[k]
                dists += [abs(h.offset / lam - g.offset), abs(g.offset * lam - h.offset)]
    if not dists:
        return Fraction(1)
    return min(dists) / 3


def _same_pattern(a: HyperplaneArrangement, doubled: HyperplaneArrangement, alpha) -> bool:
    if not doubled.is_simple():
        return False
    for labels, q in a.vertices():
        members = [a[l] for l in sorted(labels)]
        others = [(h, sign(h.value(q))) for l, h in zip(a.labels, a.hyperplanes) if l not in labels]
        for shift in product((0, alpha), repeat=len(members)):
            p = solve_linear([h.normal for h in members], [h.offset + s for h, s in zip(members, shift)])
            for h, s in others:
                v = h.value(p)
                if sign(v) != s or sign(v - alpha) != s:
                    return False
    return True


def insert_twins(a: Arrangement, max_alpha=None) -> DoubledArrangement:
    """Give every element a parallel twin with the same crossing pattern.

    Coordinate case: start from a third of the smallest gap between a vertex
    and a hyperplane missing it (measured as ``|n . q - c|``) and halve until
    the doubled arrangement is simple and all 2^d twin vertices around every
    original vertex sit on the same side of every other hyperplane and twin.
    """
    if isinstance(a, WiringDiagram):
        return _double_wiring(a)
    if not a.hyperplanes:
        return DoubledArrangement(a, a, {}, None)
    if not a.is_simple():
        raise NonSimpleArrangement("twins need a simple arrangement")
    alpha = _initial_gap(a)
    if max_alpha is not None:
        alpha = min(alpha, to_fraction(max_alpha))
    while True:
        doubled = _double_coordinates(a, alpha)
        if _same_pattern(a, doubled, alpha):
            _, twins = _twin_labels(a.labels)
            return DoubledArrangement(a, doubled, twins, alpha)
        alpha /= 2


# --------------------------------------------------------------------------
# lifting a planar arrangement onto a canvas in R^d


@dataclass(frozen=True)
class CanvasLift:
    lifted: HyperplaneArrangement
    canvas: HyperplaneArrangement

    def combined(self) -> HyperplaneArrangement:
        return HyperplaneArrangement(
            self.lifted.labels + self.canvas.labels,
            self.lifted.hyperplanes + self.canvas.hyperplanes,
        )


def canvas_labels(d_target: int) -> tuple:
    return tuple(f"canvas{i}" for i in range(3, d_target + 1))


def canvas_lift(lines: HyperplaneArrangement, d_target: int) -> CanvasLift:
    """Extend each line orthogonally; the canvas is ``x_i = 0`` for i >= 3."""
    if d_target < 2:
        raise ValueError("target dimension must be at least 2")
    if lines.dim != 2:
        raise ValueError("canvas lift takes a planar arrangement")
    pad = (Fraction(0),) * (d_target - 2)
    lifted = HyperplaneArrangement(
        lines.labels, tuple(Hyperplane(h.normal + pad, h.offset) for h in lines.hyperplanes)
    )
    canvas = []
    for i in range(3, d_target + 1):
        e = [Fraction(0)] * d_target
        e[i - 1] = Fraction(1)
        canvas.append(Hyperplane(tuple(e), 0))
    return CanvasLift(lifted, HyperplaneArrangement(canvas_labels(d_target), tuple(canvas)))


def lift_vertex_data(a, d_target: int) -> VertexData:
    """Vertex data of the lifted arrangement: each planar crossing plus the canvas."""
    vd = vertex_data(a)
    if vd.dim != 2:
        raise ValueError("expected planar vertex data")
    extra = canvas_labels(d_target)
    verts = tuple((labels | frozenset(extra), dict(sides)) for labels, sides in vd.vertices)
    return VertexData(vd.labels + extra, d_target, verts)
