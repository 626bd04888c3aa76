"""Existential sentences for halfspace representability.

A point ``p_v`` lies in the halfspace ``h_1 x_1 + ... + h_d x_d <= h_{d+1}``
of edge ``e`` exactly when the atom for (v, e) holds with relation ``<=``;
for non-members the relation is ``>``.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..hypergraph import Hypergraph

LE, GT = "<=", ">"


@dataclass(frozen=True)
class Atom:
    vertex: int
    edge: str
    point_vars: tuple  # p_v1 .. p_vd
    edge_vars: tuple  # h_e1 .. h_e(d+1)
    relation: str

    def text(self) -> str:
        lhs = " + ".join(f"{h}*{p}" for h, p in zip(self.edge_vars, self.point_vars))
        return f"{lhs} {self.relation} {self.edge_vars[-1]}"

    def smtlib(self) -> str:
        terms = " ".join(f"(* {h} {p})" for h, p in zip(self.edge_vars, self.point_vars))
        lhs = f"(+ {terms})" if len(self.point_vars) > 1 else terms
        return f"({self.relation} {lhs} {self.edge_vars[-1]})"


@dataclass(frozen=True)
class EtrFormula:
    dim: int
    variables: tuple
    atoms: tuple
    edge_index: dict  # edge id -> position used in variable names

    def text(self) -> str:
        body = " and\n  ".join(f"({a.text()})" for a in self.atoms) or "true"
        return f"exists {', '.join(self.variables)}:\n  {body}\n"

    def smtlib(self) -> str:
        lines = ["(set-logic QF_NRA)"]
        lines += [f"(declare-const {v} Real)" for v in self.variables]
        lines += [f"(assert {a.smtlib()})" for a in self.atoms]
        lines.append("(check-sat)")
        return "\n".join(lines) + "\n"


def emit_etr(h: Hypergraph, d: int) -> EtrFormula:
    if not isinstance(d, int) or d < 1:
        raise ValueError("dimension must be a positive integer")
    point = {v: tuple(f"p{v}_{i}" for i in range(1, d + 1)) for v in h.vertices}
    edge_index = {eid: k for k, eid in enumerate(h.edge_ids, 1)}
    halfspace = {eid: tuple(f"h{k}_{i}" for i in range(1, d + 2)) for eid, k in edge_index.items()}
    variables = tuple(x for v in h.vertices for x in point[v]) + tuple(
        x for eid in h.edge_ids for x in halfspace[eid]
    )
    atoms = tuple(
        Atom(v, eid, point[v], halfspace[eid], LE if v in members else GT)
        for eid, members in h.edges
        for v in h.vertices
    )
    return EtrFormula(d, variables, atoms, edge_index)
