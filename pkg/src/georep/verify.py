"""Exact check that points and shapes realise a hypergraph."""
from __future__ import annotations

from dataclasses import dataclass, field

from .geometry import as_point, contains
from .hypergraph import Hypergraph


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Representation:
    """``points`` maps vertex id -> point, ``shapes`` maps edge id -> shape.

    ``meta`` carries builder details (scale, tangency points, ...) and plays
    no part in verification.
    """

    points: dict
    shapes: dict
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "points", {int(v): as_point(p) for v, p in self.points.items()})
        object.__setattr__(self, "shapes", {str(e): s for e, s in self.shapes.items()})

    @property
    def dim(self) -> int:
        dims = {len(p) for p in self.points.values()} | {s.dim for s in self.shapes.values()}
        if len(dims) > 1:
            raise RepresentationError(f"mixed dimensions {sorted(dims)}")
        return dims.pop() if dims else 0


@dataclass(frozen=True)
class Violation:
    edge: str
    vertex: int
    expected: str  # "in" or "out"
    observed: str


@dataclass
class VerifyReport:
    violations: list

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "violations": [
                {"edge": v.edge, "vertex": v.vertex, "expected": v.expected, "observed": v.observed}
                for v in self.violations
            ],
        }


def verify_representation(h: Hypergraph, rep: Representation, allow_coincident: bool = False) -> VerifyReport:
    """Compare the exact incidence matrix of ``rep`` with ``h``.

    Shapes are closed, so a point on the boundary counts as contained.
    """
    missing_v = [v for v in h.vertices if v not in rep.points]
    missing_e = [e for e in h.edge_ids if e not in rep.shapes]
    if missing_v or missing_e:
        raise RepresentationError(f"missing points {missing_v} / shapes {missing_e}")
    rep.dim  # raises on mixed dimensions
    if not allow_coincident:
        seen = {}
        for v in h.vertices:
            p = rep.points[v]
            if p in seen:
                raise RepresentationError(f"vertices {seen[p]} and {v} share a point")
            seen[p] = v
    violations = []
    for eid, members in h.edges:
        shape = rep.shapes[eid]
        for v in h.vertices:
            inside = contains(shape, rep.points[v])
            if inside != (v in members):
                violations.append(
                    Violation(eid, v, "in" if v in members else "out", "in" if inside else "out")
                )
    return VerifyReport(violations)


def incidence_matrix(h: Hypergraph, rep: Representation) -> dict:
    return {(eid, v): contains(s, rep.points[v]) for eid, s in rep.shapes.items() for v in h.vertices}
