"""Hypergraph data model, canonical JSON I/O and the one-dimensional recognizer."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional


@dataclass(frozen=True)
class Hypergraph:
    """Vertices are ``1..n_vertices``; edges are ``(edge_id, members)`` pairs.

    Edge ids must be distinct.  Member sets may repeat and may be empty.
    """

    n_vertices: int
    edges: tuple

    def __post_init__(self):
        if not isinstance(self.n_vertices, int) or self.n_vertices < 1:
            raise ValueError("n_vertices must be a positive integer")
        edges = tuple((str(eid), frozenset(members)) for eid, members in self.edges)
        seen = set()
        for eid, members in edges:
            if eid in seen:
                raise ValueError(f"duplicate edge id {eid!r}")
            seen.add(eid)
            for v in members:
                if not isinstance(v, int) or not 1 <= v <= self.n_vertices:
                    raise ValueError(f"edge {eid!r}: vertex {v!r} out of range 1..{self.n_vertices}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_sets(cls, n_vertices: int, sets: Iterable[Iterable[int]], prefix: str = "e"):
        return cls(n_vertices, tuple((f"{prefix}{i}", frozenset(s)) for i, s in enumerate(sets, 1)))

    @property
    def vertices(self) -> range:
        return range(1, self.n_vertices + 1)

    @property
    def edge_ids(self) -> list[str]:
        return [eid for eid, _ in self.edges]

    def members(self, edge_id: str) -> frozenset:
        for eid, members in self.edges:
            if eid == edge_id:
                return members
        raise KeyError(edge_id)

    def canonical(self) -> "Hypergraph":
        return Hypergraph(self.n_vertices, tuple(sorted(self.edges, key=lambda e: e[0])))

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.n_vertices == other.n_vertices and dict(self.edges) == dict(other.edges)

    def __hash__(self):
        return hash((self.n_vertices, frozenset(self.edges)))


@dataclass(frozen=True)
class IncidenceProfile:
    vertex: int
    edge_ids: frozenset


def hypergraph_to_dict(h: Hypergraph) -> dict:
    return {
        "n_vertices": h.n_vertices,
        "edges": [{"id": eid, "members": sorted(m)} for eid, m in h.canonical().edges],
    }


def hypergraph_from_dict(doc) -> Hypergraph:
    if not isinstance(doc, dict) or "n_vertices" not in doc or "edges" not in doc:
        raise ValueError("hypergraph document needs 'n_vertices' and 'edges'")
    edges = []
    for item in doc["edges"]:
        if not isinstance(item, dict) or "id" not in item or "members" not in item:
            raise ValueError(f"malformed edge entry {item!r}")
        members = item["members"]
        if not isinstance(members, list) or any(isinstance(v, bool) or not isinstance(v, int) for v in members):
            raise ValueError(f"edge {item['id']!r}: members must be a list of integers")
        edges.append((str(item["id"]), frozenset(members)))
    n = doc["n_vertices"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValueError("n_vertices must be an integer")
    return Hypergraph(n, tuple(edges))


def parse_hypergraph(text: str) -> Hypergraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed hypergraph document: {exc}") from exc
    return hypergraph_from_dict(doc)


def serialize_hypergraph(h: Hypergraph) -> str:
    return json.dumps(hypergraph_to_dict(h), indent=2)


def incidence_profile(h: Hypergraph, v: int) -> IncidenceProfile:
    if not 1 <= v <= h.n_vertices:
        raise ValueError(f"vertex {v} out of range 1..{h.n_vertices}")
    return IncidenceProfile(v, frozenset(eid for eid, m in h.edges if v in m))


def is_consecutive(order, edges) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    for members in edges:
        if members:
            idx = [pos[v] for v in members]
            if max(idx) - min(idx) + 1 != len(members):
                return False
    return True


def recognize_intervals(h: Hypergraph) -> Optional[tuple]:
    """Vertex ordering making every edge consecutive, or None.

    Depth-first search over orderings.  A prefix is abandoned as soon as an
    edge that has been started is interrupted by a non-member before all
    its members are placed; failed (placed-set, last-vertex) states are
    memoised.  Exponential in the worst case: fine for a dozen vertices,
    slow well beyond that.
    """
    n = h.n_vertices
    edges = [m for _, m in h.edges if len(m) > 1]
    vert_edges = {v: [k for k, m in enumerate(edges) if v in m] for v in h.vertices}
    sizes = [len(m) for m in edges]
    placed_count = [0] * len(edges)
    order: list[int] = []
    dead: set = set()

    def extend(placed: int) -> bool:
        if len(order) == n:
            return True
        key = (placed, order[-1] if order else 0)
        if key in dead:
            return False
        last = order[-1] if order else None
        open_edges = [
            k for k in (vert_edges[last] if last else ())
            if 0 < placed_count[k] < sizes[k]
        ]
        for v in h.vertices:
            if placed >> v & 1:
                continue
            mine = vert_edges[v]
            # an open edge must be continued by one of its members
            if any(k not in mine for k in open_edges):
                continue
            # a started edge that is no longer open cannot be resumed
            if any(0 < placed_count[k] < sizes[k] and k not in open_edges for k in mine):
                continue
            for k in mine:
                placed_count[k] += 1
            order.append(v)
            if extend(placed | 1 << v):
                return True
            order.pop()
            for k in mine:
                placed_count[k] -= 1
        dead.add(key)
        return False

    return tuple(order) if extend(0) else None
