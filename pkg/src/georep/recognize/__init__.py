"""Decision procedures: exact, heuristic and brute force."""
from __future__ import annotations

from fractions import Fraction

from ..geometry import EllipseTranslate
from ..hypergraph import Hypergraph, recognize_intervals
from ..verify import Representation, verify_representation
from .decision import NO, NO_AT_RESOLUTION, UNKNOWN, YES, Decision
from .etr import EtrFormula, emit_etr
from .oracle import Family, OracleCaps, brute_force_oracle
from .polygon import (
    UNIT_SQUARE,
    CertificateResult,
    Inside,
    InstanceTooLarge,
    InvalidCertificate,
    Outside,
    check_certificate,
    recognize_polygon_translates,
)
from .search import Budget, search_representation


def interval_witness(h: Hypergraph, order) -> Representation:
    """Points 1..n in ``order``; each edge gets the interval spanning its members."""
    pos = {v: Fraction(i) for i, v in enumerate(order)}
    shapes = {}
    for eid, members in h.edges:
        if members:
            lo, hi = min(pos[v] for v in members), max(pos[v] for v in members)
        else:
            lo = hi = Fraction(len(order) + 5)
        rad = (hi - lo) / 2 + Fraction(1, 4)
        shapes[eid] = EllipseTranslate(((lo + hi) / 2,), ((1 / (rad * rad),),))
    return Representation({v: (p,) for v, p in pos.items()}, shapes)


def recognize(h: Hypergraph, family: Family, budget: Budget = Budget(), seed: int = 0, cap=None) -> Decision:
    """Dispatch to the strongest procedure available for ``family``."""
    if family.kind == "interval":
        order = recognize_intervals(h)
        if order is None:
            return Decision(NO, None, {"procedure": "consecutive-ones"})
        rep = interval_witness(h, order)
        assert verify_representation(h, rep).passed
        return Decision(YES, rep, {"procedure": "consecutive-ones", "order": list(order)})
    if family.kind == "polygon":
        kwargs = {} if cap is None else {"cap": cap}
        d = recognize_polygon_translates(h, family.polygon, **kwargs)
        d.stats["procedure"] = "certificate search"
        return d
    d = search_representation(h, family, budget, seed)
    d.stats["procedure"] = "heuristic search"
    return d


__all__ = [
    "Budget", "CertificateResult", "Decision", "EtrFormula", "Family", "Inside", "InstanceTooLarge",
    "InvalidCertificate", "NO", "NO_AT_RESOLUTION", "OracleCaps", "Outside", "UNIT_SQUARE", "UNKNOWN", "YES",
    "brute_force_oracle", "check_certificate", "emit_etr", "interval_witness", "recognize",
    "recognize_polygon_translates", "search_representation",
]
