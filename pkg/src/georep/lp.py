"""Exact rational linear programming.

A dense two-phase tableau simplex over :class:`fractions.Fraction` with
Bland's anti-cycling rule.  Every variable is free (unrestricted in sign);
callers that need bounds add them as ordinary constraints.  Strict
inequalities never appear here: upstream code models them with a shared
slack variable that is maximised.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .geometry import to_fraction

log = logging.getLogger(__name__)

LE, EQ, GE = "<=", "=", ">="

OPTIMAL = "optimal"
FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LinearProgram:
    variables: list = field(default_factory=list)
    constraints: list = field(default_factory=list)  # (coeffs, relation, rhs)
    objective: Optional[tuple] = None  # maximised

    def __post_init__(self):
        self._index = {v: i for i, v in enumerate(self.variables)}
        if len(self._index) != len(self.variables):
            raise ValueError("variable names must be distinct")

    def var(self, name) -> str:
        if name not in self._index:
            self._index[name] = len(self.variables)
            self.variables.append(name)
            # widen rows that were added before this variable existed
            self.constraints = [(c + (Fraction(0),), r, b) for c, r, b in self.constraints]
            if self.objective is not None:
                self.objective = self.objective + (Fraction(0),)
        return name

    def _dense(self, coeffs: Mapping) -> tuple:
        row = [Fraction(0)] * len(self.variables)
        for name, a in coeffs.items():
            if name not in self._index:
                raise KeyError(f"unknown variable {name!r}")
            row[self._index[name]] += to_fraction(a)
        return tuple(row)

    def add(self, coeffs: Mapping, relation: str, rhs) -> None:
        if relation not in (LE, EQ, GE):
            raise ValueError(f"unsupported relation {relation!r}")
        self.constraints.append((self._dense(coeffs), relation, to_fraction(rhs)))

    def maximize(self, coeffs: Mapping) -> None:
        self.objective = self._dense(coeffs)

    def check(self, assignment: Mapping) -> bool:
        x = [assignment[v] for v in self.variables]
        for coeffs, rel, rhs in self.constraints:
            lhs = sum((a * b for a, b in zip(coeffs, x) if a), Fraction(0))
            if rel == LE and not lhs <= rhs:
                return False
            if rel == GE and not lhs >= rhs:
                return False
            if rel == EQ and lhs != rhs:
                return False
        return True


@dataclass(frozen=True)
class LpResult:
    status: str
    assignment: Optional[dict] = None
    value: Optional[Fraction] = None

    @property
    def feasible(self) -> bool:
        return self.status in (OPTIMAL, FEASIBLE, UNBOUNDED)


class _Tableau:
    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols

    def pivot(self, r: int, c: int, obj: list) -> None:
        prow = self.rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            for j in range(self.ncols):
                if prow[j]:
                    prow[j] *= inv
            self.rhs[r] *= inv
        nz = [j for j in range(self.ncols) if prow[j]]
        for i, row in enumerate(self.rows):
            if i != r and row[c]:
                f = row[c]
                for j in nz:
                    row[j] -= f * prow[j]
                self.rhs[i] -= f * self.rhs[r]
        if obj[c]:
            f = obj[c]
            for j in nz:
                obj[j] -= f * prow[j]
            obj[-1] -= f * self.rhs[r]
        self.basis[r] = c

    def optimize(self, obj: list, allowed: int) -> bool:
        """Maximise; ``obj`` holds reduced costs plus the negated value.

        Returns False when unbounded.  Only columns below ``allowed`` may
        enter the basis.
        """
        while True:
            enter = next((j for j in range(allowed) if obj[j] > 0), None)
            if enter is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                if row[enter] > 0:
                    ratio = self.rhs[i] / row[enter]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], enter, obj)

    def dump(self) -> str:
        lines = []
        for b, row, r in zip(self.basis, self.rows, self.rhs):
            lines.append(f"x{b} = " + " ".join(str(a) for a in row) + f" | {r}")
        return "\n".join(lines)


def solve(lp: LinearProgram) -> LpResult:
    """Solve exactly; returned assignments are re-checked before return."""
    nvar = len(lp.variables)
    # columns: x+ and x- per free variable, then slacks, then artificials
    rows, rhs, slack_of = [], [], []
    for coeffs, rel, b in lp.constraints:
        if rel == GE:
            coeffs, rel, b = tuple(-a for a in coeffs), LE, -b
        row = []
        for a in coeffs:
            row += [a, -a]
        rows.append(row)
        rhs.append(b)
        slack_of.append(rel == LE)
    m = len(rows)
    nslack = sum(slack_of)
    base = 2 * nvar
    s = 0
    slack_col = []
    for i in range(m):
        rows[i] = rows[i] + [Fraction(0)] * nslack
        if slack_of[i]:
            rows[i][base + s] = Fraction(1)
            slack_col.append(base + s)
            s += 1
        else:
            slack_col.append(None)
        if rhs[i] < 0:
            rows[i] = [-a for a in rows[i]]
            rhs[i] = -rhs[i]

    # artificial variables only where the slack cannot start in the basis
    real_cols = base + nslack
    basis = [None] * m
    art = []
    for i in range(m):
        c = slack_col[i]
        if c is not None and rows[i][c] == 1:
            basis[i] = c
        else:
            art.append(i)
    ncols = real_cols + len(art)
    for i in range(m):
        rows[i] = rows[i] + [Fraction(0)] * len(art)
    for k, i in enumerate(art):
        rows[i][real_cols + k] = Fraction(1)
        basis[i] = real_cols + k

    tab = _Tableau(rows, rhs, basis, ncols)
    if art:
        obj = [Fraction(0)] * (ncols + 1)
        for k in range(len(art)):
            obj[real_cols + k] = Fraction(-1)
        for i in art:
            for j in range(ncols):
                obj[j] += rows[i][j]
            obj[-1] += rhs[i]
        tab.optimize(obj, ncols)
        if obj[-1] > 0:  # remaining artificial mass
            log.debug("phase 1 optimum %s > 0: infeasible", obj[-1])
            return LpResult(INFEASIBLE)
        # drive zero-valued artificials out of the basis
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] >= real_cols:
                c = next((j for j in range(real_cols) if tab.rows[r][j]), None)
                if c is None:
                    del tab.rows[r], tab.rhs[r], tab.basis[r]
                    continue
                tab.pivot(r, c, [Fraction(0)] * (ncols + 1))
            r += 1
        for row in tab.rows:
            del row[real_cols:]
        tab.ncols = real_cols

    cost = [Fraction(0)] * (real_cols + 1)
    if lp.objective is not None:
        for j, a in enumerate(lp.objective):
            cost[2 * j], cost[2 * j + 1] = a, -a
    obj = list(cost)
    for i, b in enumerate(tab.basis):
        if obj[b]:
            f = obj[b]
            for j in range(real_cols):
                obj[j] -= f * tab.rows[i][j]
            obj[-1] -= f * tab.rhs[i]
    bounded = tab.optimize(obj, real_cols)

    values = [Fraction(0)] * real_cols
    for i, b in enumerate(tab.basis):
        values[b] = tab.rhs[i]
    assignment = {v: values[2 * j] - values[2 * j + 1] for j, v in enumerate(lp.variables)}
    if not lp.check(assignment):
        raise RuntimeError("simplex produced an assignment violating the constraints")
    if lp.objective is None:
        return LpResult(FEASIBLE, assignment)
    if not bounded:
        return LpResult(UNBOUNDED, assignment)
    value = sum((a * assignment[v] for a, v in zip(lp.objective, lp.variables)), Fraction(0))
    return LpResult(OPTIMAL, assignment, value)


def maximize_slack(lp: LinearProgram, slack: str, cap=1) -> LpResult:
    """Maximise ``slack`` under ``slack <= cap``; the usual strictness trick."""
    lp.add({slack: 1}, LE, cap)
    lp.maximize({slack: 1})
    return solve(lp)
