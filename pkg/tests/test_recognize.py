import random
from itertools import product

import pytest

from georep.fixtures import non_pappus_wiring
from georep.geometry import triangulate_hull
from georep.hypergraph import Hypergraph, incidence_profile, recognize_intervals
from georep.recognize import (
    NO,
    NO_AT_RESOLUTION,
    UNIT_SQUARE,
    UNKNOWN,
    YES,
    Budget,
    Decision,
    Family,
    Inside,
    InstanceTooLarge,
    InvalidCertificate,
    Outside,
    brute_force_oracle,
    check_certificate,
    emit_etr,
    interval_witness,
    recognize,
    recognize_polygon_translates,
    search_representation,
)
from georep.recognize.oracle import OracleCapExceeded, OracleCaps
from georep.reduction import build_hypergraph
from georep.verify import verify_representation

CHAIN8 = Hypergraph.from_sets(8, [{1, 2, 3, 4}, {3, 4, 5, 6}, {5, 6, 7}, {6, 7, 8}])
L_SHAPE = ((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2))


def all_hypergraphs(max_v, max_e):
    for n in range(1, max_v + 1):
        subsets = [frozenset(v for v in range(1, n + 1) if m >> (v - 1) & 1) for m in range(2 ** n)]
        for k in range(max_e + 1):
            for edges in product(subsets, repeat=k):
                yield Hypergraph.from_sets(n, edges)


# --------------------------------------------------------------------------
# decisions


def test_decision_contract():
    with pytest.raises(ValueError):
        Decision(YES)
    with pytest.raises(ValueError):
        Decision("maybe")
    assert Decision(NO).exit_code == 1
    assert Decision(UNKNOWN).exit_code == 2


# --------------------------------------------------------------------------
# ETR


def test_etr_chain8_counts():
    f = emit_etr(CHAIN8, 2)
    assert len([v for v in f.variables if v.startswith("p")]) == 16
    assert len([v for v in f.variables if v.startswith("h")]) == 12
    assert len(f.atoms) == 32


def test_etr_smallest():
    f = emit_etr(Hypergraph.from_sets(1, [{1}]), 1)
    assert f.variables == ("p1_1", "h1_1", "h1_2")
    assert [a.text() for a in f.atoms] == ["h1_1*p1_1 <= h1_2"]
    assert "(assert (<= (* h1_1 p1_1) h1_2))" in f.smtlib()
    assert "exists p1_1, h1_1, h1_2" in f.text()
    with pytest.raises(ValueError):
        emit_etr(CHAIN8, 0)


def test_etr_pattern_matches_incidence():
    rng = random.Random(0)
    for _ in range(30):
        n = rng.randint(1, 6)
        h = Hypergraph.from_sets(n, [{v for v in range(1, n + 1) if rng.random() < 0.4} for _ in range(rng.randint(0, 4))])
        d = rng.randint(1, 3)
        f = emit_etr(h, d)
        assert len(f.variables) == len(set(f.variables)) == d * n + (d + 1) * len(h.edges)
        assert len(f.atoms) == n * len(h.edges)
        for a in f.atoms:
            assert (a.relation == "<=") == (a.edge in incidence_profile(h, a.vertex).edge_ids)
            assert len(a.point_vars) == d and len(a.edge_vars) == d + 1


# --------------------------------------------------------------------------
# certificates and the exact polygon recognizer


def test_certificate_examples():
    sq = triangulate_hull(UNIT_SQUARE)
    h1 = Hypergraph.from_sets(1, [{1}])
    res = check_certificate(h1, UNIT_SQUARE, {(1, "e1"): Inside(0)})
    assert res.feasible and verify_representation(h1, res.representation).passed
    h2 = Hypergraph.from_sets(2, [{1, 2}])
    res = check_certificate(h2, UNIT_SQUARE, {(1, "e1"): Inside(0), (2, "e1"): Inside(1)}, sq)
    assert res.feasible
    pts = res.representation.points
    assert pts[1] != pts[2]
    h3 = Hypergraph.from_sets(2, [{1}, {2}])
    bad = {(1, "e1"): Inside(0), (2, "e1"): Inside(0), (1, "e2"): Outside(0), (2, "e2"): Inside(0)}
    with pytest.raises(InvalidCertificate):
        check_certificate(h3, UNIT_SQUARE, bad)
    with pytest.raises(InvalidCertificate):
        check_certificate(h3, UNIT_SQUARE, {(1, "e1"): Inside(0)})


def test_certificate_infeasible():
    # each point in its own square and strictly below the other square's
    # bottom edge: y1 < b2 <= y2 < b1 <= y1
    h = Hypergraph.from_sets(2, [{1}, {2}])
    cert = {(1, "e1"): Inside(0), (1, "e2"): Outside(0), (2, "e1"): Outside(0), (2, "e2"): Inside(0)}
    assert not check_certificate(h, UNIT_SQUARE, cert).feasible
    cert[(2, "e1")] = Outside(2)
    res = check_certificate(h, UNIT_SQUARE, cert)
    assert res.feasible and verify_representation(h, res.representation).passed


@pytest.mark.parametrize("edges", [[{1}, {1, 2}], [{1, 2}, {1, 3}, {2, 3}], [], [set()], [{1, 2}, {1, 2}]])
def test_recognizer_examples(edges):
    n = max([max(e) for e in edges if e] or [2])
    h = Hypergraph.from_sets(n, edges)
    d = recognize_polygon_translates(h)
    assert d.outcome == YES
    assert verify_representation(h, d.witness).passed
    assert brute_force_oracle(h, Family.square()).outcome == YES


def test_recognizer_non_convex_polygon():
    h = Hypergraph.from_sets(3, [{1, 2}, {2, 3}])
    d = recognize_polygon_translates(h, L_SHAPE)
    assert d.outcome == YES and verify_representation(h, d.witness).passed


def test_recognizer_cap():
    h = Hypergraph.from_sets(5, [{1, 2}, {2, 3}, {3, 4}])
    with pytest.raises(InstanceTooLarge):
        recognize_polygon_translates(h)
    assert recognize_polygon_translates(h, cap=20).outcome == YES


def test_prune_soundness_small():
    for h in all_hypergraphs(3, 2):
        if h.n_vertices * len(h.edges) > 6:
            continue
        a = recognize_polygon_translates(h, prune=True)
        b = recognize_polygon_translates(h, prune=False)
        assert a.outcome == b.outcome


def test_recognizer_deterministic():
    h = Hypergraph.from_sets(3, [{1, 2}, {2, 3}])
    a, b = recognize_polygon_translates(h), recognize_polygon_translates(h)
    assert a.witness == b.witness and a.stats == b.stats


# --------------------------------------------------------------------------
# brute-force oracle


def test_oracle_examples():
    h = Hypergraph.from_sets(2, [{1, 2}])
    d = brute_force_oracle(h, Family.square(), resolution="1/4")
    assert d.outcome == YES and verify_representation(h, d.witness).passed
    tri = Hypergraph.from_sets(3, [{1, 2}, {1, 3}, {2, 3}])
    assert brute_force_oracle(tri, Family("interval")).outcome == NO_AT_RESOLUTION
    assert recognize_intervals(tri) is None
    again = brute_force_oracle(h, Family.square(), resolution="1/4")
    assert again.witness == d.witness


@pytest.mark.parametrize("family", [Family("disk"), Family("halfplane"), Family("ellipse", Q=((4, 0), (0, 1))),
                                    Family("polygon", L_SHAPE)], ids=lambda f: f.kind)
def test_oracle_families(family):
    h = Hypergraph.from_sets(3, [{1, 2}, {2, 3}])
    d = brute_force_oracle(h, family, resolution="1/2")
    assert d.outcome == YES and verify_representation(h, d.witness).passed


def test_oracle_caps():
    with pytest.raises(OracleCapExceeded):
        brute_force_oracle(CHAIN8, Family("disk"))
    with pytest.raises(OracleCapExceeded):
        brute_force_oracle(Hypergraph.from_sets(3, [{1}, {2}, {3}]), Family("disk"), caps=OracleCaps(max_placements=10))
    with pytest.raises(ValueError):
        brute_force_oracle(Hypergraph.from_sets(1, []), Family("blob"))


def test_interval_recognizer_vs_oracle():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 5)
        h = Hypergraph.from_sets(n, [{v for v in range(1, n + 1) if rng.random() < 0.5} for _ in range(rng.randint(0, 3))])
        order = recognize_intervals(h)
        oracle = brute_force_oracle(h, Family("interval"), resolution=1)
        assert (order is not None) == (oracle.outcome == YES)
        if order is not None:
            assert verify_representation(h, interval_witness(h, order)).passed


# --------------------------------------------------------------------------
# heuristic search


def test_search_chain8_disks():
    d = search_representation(CHAIN8, Family("disk"))
    assert d.outcome == YES and verify_representation(CHAIN8, d.witness).passed
    assert len(d.witness.points) == 8 and len(d.witness.shapes) == 4


def test_search_path_disks():
    h = Hypergraph.from_sets(4, [{1, 2}, {2, 3}, {3, 4}])
    d = search_representation(h, Family("disk"))
    assert d.outcome == YES and verify_representation(h, d.witness).passed


@pytest.mark.parametrize("family", [Family("halfplane"), Family("ellipse", Q=((1, 0), (0, 4))), Family.square()],
                         ids=lambda f: f.kind)
def test_search_other_families(family):
    d = search_representation(CHAIN8, family)
    assert d.outcome == YES and verify_representation(CHAIN8, d.witness).passed


def test_search_never_says_no():
    r = build_hypergraph(non_pappus_wiring())
    d = search_representation(r.hypergraph, Family("halfplane"))
    assert d.outcome == UNKNOWN and d.witness is None
    assert d.stats["restarts"] == Budget().restarts


def test_search_deterministic_and_seeded():
    a = search_representation(CHAIN8, Family("disk"), seed=3)
    b = search_representation(CHAIN8, Family("disk"), seed=3)
    assert a.witness == b.witness


def test_search_agrees_with_exact_recognizer():
    rng = random.Random(8)
    for _ in range(10):
        n = rng.randint(2, 3)
        h = Hypergraph.from_sets(n, [{v for v in range(1, n + 1) if rng.random() < 0.5} for _ in range(2)])
        exact = recognize_polygon_translates(h)
        heur = search_representation(h, Family.square(), Budget(restarts=8, iterations=300))
        assert not (heur.outcome == YES and exact.outcome == NO)


def test_search_rejects_intervals():
    with pytest.raises(ValueError):
        search_representation(CHAIN8, Family("interval"))


# --------------------------------------------------------------------------
# dispatcher


def test_recognize_dispatch():
    path = Hypergraph.from_sets(3, [{1, 2}, {2, 3}])
    tri = Hypergraph.from_sets(3, [{1, 2}, {1, 3}, {2, 3}])
    assert recognize(path, Family("interval")).outcome == YES
    assert recognize(tri, Family("interval")).outcome == NO
    assert recognize(path, Family.square()).stats["procedure"] == "certificate search"
    assert recognize(path, Family("disk")).stats["procedure"] == "heuristic search"
