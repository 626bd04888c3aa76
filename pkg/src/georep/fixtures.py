"""Deterministic test arrangements.

Names accepted by :func:`fixture`::

    grid(n)                 n horizontal and n vertical lines
    random_simple(n, seed)  n rational lines in general position
    random_wiring(n, seed)  a random full wiring diagram on n wires
    pappus_lines            a simple perturbation of the Pappus configuration
    pappus_wiring           its wiring diagram
    non_pappus_wiring       the same diagram with the conclusion triangle flipped

The Pappus data comes from the point configuration A, B, C on one line,
D, E, F on another, X = AE.BD, Y = AF.CD, Z = BF.CE (points 1..9 in that
order).  Each point (p, q) is dualised to the line ``v = p u - q``; three
points are collinear exactly when their dual lines are concurrent.  The
points below are a small rational perturbation, so every one of the nine
Pappus triples becomes a tiny triangle and the arrangement is simple.
Flipping the triangle of X, Y, Z gives a diagram whose orientations no
point set has; :data:`NON_PAPPUS_CERTIFICATE` is a biquadratic final
polynomial proving that.
"""
from __future__ import annotations

import random
import re
from fractions import Fraction
from itertools import combinations

from .arrangement import HyperplaneArrangement, WiringDiagram, wiring_from_lines
from .geometry import Hyperplane

_Q = Fraction

PAPPUS_POINTS = (
    (_Q(-3, 400), _Q(-1, 125)),
    (_Q(4013, 2000), _Q(624, 625)),
    (_Q(49931, 10000), _Q(25073, 10000)),
    (_Q(10049, 10000), _Q(40043, 10000)),
    (_Q(1879, 625), _Q(8999, 2000)),
    (_Q(35003, 5000), _Q(27537, 5000)),
    (_Q(140009, 90000), _Q(69757, 30000)),
    (_Q(98013, 26000), _Q(77169, 26000)),
    (_Q(166057, 38000), _Q(37159, 11875)),
)

PAPPUS_HYPOTHESES = ((1, 2, 3), (4, 5, 6), (1, 7, 5), (2, 7, 4), (1, 8, 6), (3, 8, 4), (2, 9, 6), (3, 9, 5))
PAPPUS_CONCLUSION = (7, 8, 9)

# (p, q, r, a, b, larger) with [pqr][pab] = [pqa][prb] - [pqb][pra];
# larger is "L" when |[pqa][prb]| > |[pqb][pra]| is forced, else "R".
NON_PAPPUS_CERTIFICATE = (
    (2, 9, 6, 1, 8, "R"),
    (7, 2, 4, 1, 9, "L"),
    (9, 7, 8, 2, 4, "L"),
    (1, 7, 5, 2, 4, "R"),
    (4, 5, 6, 1, 8, "L"),
    (3, 9, 5, 2, 8, "L"),
    (6, 1, 8, 2, 4, "R"),
    (2, 1, 3, 5, 9, "R"),
    (8, 3, 4, 5, 9, "R"),
)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def det3(p, q, r):
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _parity(seq) -> int:
    inv = sum(1 for i, j in combinations(range(len(seq)), 2) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def point_chirotope(points) -> dict:
    """Orientation of every increasing index triple (1-based)."""
    return {
        t: _sgn(det3(*(points[i - 1] for i in t)))
        for t in combinations(range(1, len(points) + 1), 3)
    }


def wiring_chirotope(w: WiringDiagram) -> dict:
    """Orientation of every triple of wires, keyed by increasing integer label.

    A triple listed bottom to top at the far left is +1 when its lowest two
    wires cross first and -1 when its highest two do.
    """
    left = {l: i for i, l in enumerate(w.labels)}
    first = {}
    for k, pair in enumerate(w.swaps):
        first.setdefault(frozenset(pair), k)
    out = {}
    for t in combinations(sorted(w.labels, key=int), 3):
        lo, mid, hi = sorted(t, key=left.get)
        if frozenset((lo, mid)) not in first or frozenset((mid, hi)) not in first:
            raise ValueError("chirotope needs a full arrangement")
        s = 1 if first[frozenset((lo, mid))] < first[frozenset((mid, hi))] else -1
        out[tuple(int(x) for x in t)] = s * _parity([left[x] for x in t])
    return out


def oriented(chi: dict, t) -> int:
    return chi[tuple(sorted(t))] * _parity(t)


def check_final_polynomial(chi: dict, certificate=NON_PAPPUS_CERTIFICATE) -> bool:
    """Does ``certificate`` prove that no point set has orientations ``chi``?

    Each relation has both products on its right-hand side of the same
    sign, and the sign of the left-hand side then forces one product to be
    larger in absolute value.  Multiplying all those strict inequalities
    gives a product of brackets strictly larger than itself once the
    brackets cancel, which is impossible.
    """
    balance = {}
    for p, q, r, a, b, larger in certificate:
        L = ((p, q, a), (p, r, b))
        R = ((p, q, b), (p, r, a))
        s_l = oriented(chi, L[0]) * oriented(chi, L[1])
        s_r = oriented(chi, R[0]) * oriented(chi, R[1])
        s_lhs = oriented(chi, (p, q, r)) * oriented(chi, (p, a, b))
        if s_l != s_r:
            return False
        forced = "L" if s_lhs == s_l else "R"
        if forced != larger:
            return False
        big, small = (L, R) if larger == "L" else (R, L)
        for t in big:
            balance[tuple(sorted(t))] = balance.get(tuple(sorted(t)), 0) + 1
        for t in small:
            balance[tuple(sorted(t))] = balance.get(tuple(sorted(t)), 0) - 1
    return bool(certificate) and all(v == 0 for v in balance.values())


def dual_line(point) -> Hyperplane:
    px, py = point
    return Hyperplane((-px, Fraction(1)), -py)


def pappus_lines() -> HyperplaneArrangement:
    return HyperplaneArrangement(
        tuple(str(i) for i in range(1, 10)), tuple(dual_line(p) for p in PAPPUS_POINTS)
    )


def pappus_wiring() -> WiringDiagram:
    return wiring_from_lines(pappus_lines())


def flip_triangle(w: WiringDiagram, triple) -> WiringDiagram:
    """Reverse the three consecutive swaps of an empty triangle."""
    pairs = {frozenset(p) for p in combinations([str(x) for x in triple], 2)}
    idx = [k for k, s in enumerate(w.swaps) if frozenset(s) in pairs]
    if len(idx) != 3 or idx[2] - idx[0] != 2:
        raise ValueError("triangle is crossed by another wire")
    swaps = list(w.swaps)
    swaps[idx[0]:idx[2] + 1] = reversed(swaps[idx[0]:idx[2] + 1])
    return WiringDiagram(w.n_lines, tuple(swaps), w.labels)


def non_pappus_wiring() -> WiringDiagram:
    return flip_triangle(pappus_wiring(), PAPPUS_CONCLUSION)


def grid(n: int) -> HyperplaneArrangement:
    if n < 1:
        raise ValueError("grid size must be positive")
    hyps = [Hyperplane((0, 1), k) for k in range(n)] + [Hyperplane((1, 0), k) for k in range(n)]
    return HyperplaneArrangement(tuple(str(i) for i in range(1, 2 * n + 1)), tuple(hyps))


def random_simple(n: int, seed: int = 0) -> HyperplaneArrangement:
    """Lines ``a x + b y = c`` with small integers, b > 0, in general position."""
    if n < 1:
        raise ValueError("need at least one line")
    rng = random.Random(seed)
    labels = tuple(str(i) for i in range(1, n + 1))
    while True:
        rows, slopes = [], set()
        while len(rows) < n:
            a, b = rng.randint(-6, 6), rng.randint(1, 6)
            if Fraction(a, b) in slopes:
                continue
            slopes.add(Fraction(a, b))
            rows.append((a, b, rng.randint(-6, 6)))
        arr = HyperplaneArrangement.from_coefficients(rows, labels)
        if arr.is_simple():
            return arr


def random_wiring(n: int, seed: int = 0) -> WiringDiagram:
    """Random full wiring diagram: swap random adjacent uncrossed pairs until reversed."""
    rng = random.Random(seed)
    order = list(range(1, n + 1))
    swaps = []
    while True:
        open_gaps = [k for k in range(n - 1) if order[k] < order[k + 1]]
        if not open_gaps:
            break
        k = rng.choice(open_gaps)
        swaps.append((order[k], order[k + 1]))
        order[k], order[k + 1] = order[k + 1], order[k]
    return WiringDiagram(n, tuple(swaps))


_FIXED = {
    "pappus_lines": pappus_lines,
    "pappus_wiring": pappus_wiring,
    "non_pappus_wiring": non_pappus_wiring,
}
_CALL = re.compile(r"^\s*(grid|random_simple|random_wiring)\s*\(\s*(\d+)\s*(?:,\s*(-?\d+)\s*)?\)\s*$")


def fixture(name: str):
    if name in _FIXED:
        return _FIXED[name]()
    m = _CALL.match(name)
    if not m:
        raise KeyError(f"unknown fixture {name!r}")
    kind, n, seed = m.group(1), int(m.group(2)), m.group(3)
    if kind == "grid":
        if seed is not None:
            raise KeyError("grid takes a single argument")
        return grid(n)
    return {"random_simple": random_simple, "random_wiring": random_wiring}[kind](n, int(seed or 0))
