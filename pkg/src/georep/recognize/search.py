"""Randomised search for planar representations.

Multi-start penalty minimisation (L-BFGS) over point coordinates and shape
parameters.  Each local optimum is rounded to rationals and checked by the
exact verifier, so the answer is either a verified ``yes`` or ``unknown``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize
from scipy.spatial import cKDTree

from ..geometry import DiskTranslate, EllipseTranslate, Halfspace, PolygonTranslate
from ..hypergraph import Hypergraph
from ..verify import Representation, RepresentationError, verify_representation
from .decision import UNKNOWN, YES, Decision
from .oracle import Family

log = logging.getLogger(__name__)

MAX_DENOMINATOR = 2 ** 20


@dataclass(frozen=True)
class Budget:
    restarts: int = 64
    iterations: int = 2000
    margin: float = 0.05
    separation: float = 0.02


def _rational(x: float) -> Fraction:
    return Fraction(x).limit_denominator(MAX_DENOMINATOR)


def _polygon_depth(q, poly):
    """Signed distance of the rows of ``q`` to the polygon boundary (negative
    inside) and its gradient with respect to ``q``.  Float arithmetic only:
    the exact verifier has the last word."""
    a = poly
    b = np.roll(poly, -1, axis=0)
    ab = b - a  # (k, 2)
    rel = q[:, None, :] - a[None, :, :]  # (n, k, 2)
    s = np.clip((rel * ab).sum(-1) / (ab * ab).sum(-1), 0.0, 1.0)
    closest = a[None, :, :] + s[..., None] * ab[None, :, :]
    diff = q[:, None, :] - closest
    dist = np.sqrt((diff ** 2).sum(-1) + 1e-18)
    k = dist.argmin(axis=1)
    rows = np.arange(len(q))
    best = dist[rows, k]
    grad = diff[rows, k] / best[:, None]
    # crossing-number parity
    ya, yb = a[None, :, 1], b[None, :, 1]
    y = q[:, 1:2]
    straddle = (ya > y) != (yb > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xcross = a[None, :, 0] + (y - ya) * (b[None, :, 0] - a[None, :, 0]) / (yb - ya)
    inside = (straddle & (xcross > q[:, 0:1])).sum(axis=1) % 2 == 1
    sgn = np.where(inside, -1.0, 1.0)
    return sgn * best, sgn[:, None] * grad


class _Problem:
    def __init__(self, h: Hypergraph, family: Family, budget: Budget):
        self.h = h
        self.family = family
        self.budget = budget
        self.nv = h.n_vertices
        self.ne = len(h.edges)
        self.per_edge = 2  # translation, or (angle, offset) for halfplanes
        self.member = np.array([[v in m for v in h.vertices] for _, m in h.edges], dtype=bool).reshape(self.ne, self.nv)
        if family.kind == "ellipse":
            self.Q = np.array([[float(x) for x in row] for row in family.Q])
        if family.kind == "polygon":
            self.poly = [tuple(Fraction(c) for c in p) for p in family.polygon]
            self.poly_f = np.array([[float(c) for c in p] for p in self.poly])

    def unpack(self, z):
        pts = z[: 2 * self.nv].reshape(self.nv, 2)
        shp = z[2 * self.nv:].reshape(self.ne, self.per_edge)
        return pts, shp

    def depth(self, pts, shp):
        """(edge, vertex) signed depth, negative = inside, with gradients
        d/dpoint (e, v, 2) and d/dshape (e, v, per_edge)."""
        kind = self.family.kind
        if kind == "halfplane":
            ang, off = shp[:, 0], shp[:, 1]
            c, s = np.cos(ang), np.sin(ang)
            g = np.outer(c, pts[:, 0]) + np.outer(s, pts[:, 1]) - off[:, None]
            dp = np.broadcast_to(np.stack([c, s], axis=1)[:, None, :], (self.ne, self.nv, 2))
            dang = np.outer(-s, pts[:, 0]) + np.outer(c, pts[:, 1])
            ds = np.stack([dang, -np.ones_like(g)], axis=-1)
            return g, dp, ds
        diff = pts[None, :, :] - shp[:, None, :2]
        if kind == "disk":
            r = np.sqrt((diff ** 2).sum(-1) + 1e-12)
            dp = diff / r[..., None]
            return r - 1, dp, -dp
        if kind == "ellipse":
            qd = diff @ self.Q
            r = np.sqrt((qd * diff).sum(-1) + 1e-12)
            dp = qd / r[..., None]
            return r - 1, dp, -dp
        g, dq = _polygon_depth(diff.reshape(-1, 2), self.poly_f)
        dp = dq.reshape(self.ne, self.nv, 2)
        return g.reshape(self.ne, self.nv), dp, -dp

    def penalty(self, z):
        """Penalty value and gradient."""
        pts, shp = self.unpack(z)
        gpts = np.zeros_like(pts)
        gshp = np.zeros_like(shp)
        total = 0.0
        m = self.budget.margin
        if self.ne:
            g, dp, ds = self.depth(pts, shp)
            viol = np.where(self.member, np.maximum(0, g + m), np.maximum(0, m - g))
            total += (viol ** 2).sum()
            w = 2 * viol * np.where(self.member, 1.0, -1.0)  # d total / d g
            gpts += np.einsum("ev,evk->vk", w, dp)
            gshp += np.einsum("ev,evk->ek", w, ds)
        if self.nv > 1:
            sep = self.budget.separation
            pairs = cKDTree(pts).query_pairs(sep, output_type="ndarray")
            if len(pairs):
                i, j = pairs[:, 0], pairs[:, 1]
                delta = pts[i] - pts[j]
                over = np.maximum(0, sep * sep - (delta ** 2).sum(-1))
                total += (over ** 2).sum()
                push = -4 * over[:, None] * delta
                np.add.at(gpts, i, push)
                np.add.at(gpts, j, -push)
        return total, np.concatenate([gpts.ravel(), gshp.ravel()])

    def start(self, rng):
        spread = max(2.0, float(self.nv) / 2)
        pts = rng.uniform(-spread, spread, size=(self.nv, 2))
        if self.family.kind == "halfplane":
            shp = np.stack([rng.uniform(0, 2 * np.pi, self.ne), rng.uniform(-1, 1, self.ne)], axis=1)
        else:
            shp = rng.uniform(-spread, spread, size=(self.ne, 2))
        return np.concatenate([pts.ravel(), shp.ravel()])

    def witness(self, z) -> Representation:
        pts, shp = self.unpack(z)
        points = {v: tuple(_rational(float(c)) for c in pts[i]) for i, v in enumerate(self.h.vertices)}
        shapes = {}
        for k, (eid, _) in enumerate(self.h.edges):
            row = shp[k]
            kind = self.family.kind
            if kind == "halfplane":
                normal = (_rational(np.cos(row[0])), _rational(np.sin(row[0])))
                if normal == (0, 0):
                    normal = (Fraction(1), Fraction(0))
                shapes[eid] = Halfspace(normal, _rational(row[1]))
            else:
                c = tuple(_rational(float(x)) for x in row[:2])
                if kind == "disk":
                    shapes[eid] = DiskTranslate(c)
                elif kind == "ellipse":
                    shapes[eid] = EllipseTranslate(c, self.family.Q)
                else:
                    shapes[eid] = PolygonTranslate(self.poly, c)
        return Representation(points, shapes)


def search_representation(h: Hypergraph, family: Family, budget: Budget = Budget(), seed: int = 0) -> Decision:
    if family.kind == "interval":
        raise ValueError("the heuristic search is planar; use recognize_intervals")
    prob = _Problem(h, family, budget)
    rng = np.random.default_rng(seed)
    best = np.inf
    for restart in range(budget.restarts):
        z0 = prob.start(rng)
        res = minimize(prob.penalty, z0, jac=True, method="L-BFGS-B", options={"maxiter": budget.iterations})
        best = min(best, float(res.fun))
        try:
            rep = prob.witness(res.x)
            ok = verify_representation(h, rep).passed
        except RepresentationError:
            ok = False
        if ok:
            stats = {"restarts": restart + 1, "best_penalty": float(res.fun), "seed": seed}
            return Decision(YES, rep, stats)
    log.info("no verified representation after %d restarts", budget.restarts)
    return Decision(UNKNOWN, None, {"restarts": budget.restarts, "best_penalty": best, "seed": seed})
