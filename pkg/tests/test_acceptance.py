"""One test per acceptance criterion, each timed against its budget.

Every test prints a ``criterion N: PASS|FAIL`` line; the lines are also
collected and shown in the pytest terminal summary.
"""
import random
import time
from contextlib import contextmanager
from itertools import product

from conftest import ACCEPTANCE
from oracles import c1p_bruteforce, fm_feasible, fm_maximize, random_lp

from georep import lp
from georep.arrangement import (
    HyperplaneArrangement,
    WiringDiagram,
    canvas_lift,
    cells,
    check_stretching,
    insert_twins,
    lift_vertex_data,
    wiring_from_lines,
)
from georep.fixtures import grid, random_simple, random_wiring
from georep.geometry import side_of_hyperplane
from georep.hypergraph import Hypergraph, recognize_intervals
from georep.recognize import YES, Family, brute_force_oracle, emit_etr, recognize_polygon_translates, search_representation
from georep.reduction import (
    build_hypergraph,
    disk_representation_from_stretching,
    extract_separators,
    halfspace_representation_from_stretching,
    in_box,
)
from georep.verify import verify_representation

CHAIN8 = Hypergraph.from_sets(8, [{1, 2, 3, 4}, {3, 4, 5, 6}, {5, 6, 7}, {6, 7, 8}])


@contextmanager
def criterion(k, title, budget):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - start
        ok = ok and dt < budget
        line = f"criterion {k}: {'PASS' if ok else 'FAIL'} {title} ({dt:.2f}s, budget {budget}s)"
        ACCEPTANCE.append(line)
        print(line)
    assert dt < budget, f"{title} took {dt:.2f}s"


def patterns(h):
    return {v: tuple(v in m for _, m in h.edges) for v in h.vertices}


def sweepable(b):
    return wiring_from_lines(b) if all(x.normal[1] > 0 for x in b.hyperplanes) else b


def stretchable_fixtures(max_n):
    return [random_simple(n, s) for n in range(1, max_n + 1) for s in range(3)] + ([grid(2)] if max_n >= 4 else [])


def test_1_counting_law():
    with criterion(1, "reduction counting law, n=1..5 x 20 seeds", 10):
        for n in range(1, 6):
            for seed in range(20):
                r = build_hypergraph(random_wiring(n, seed))
                h = r.hypergraph
                assert h.n_vertices == 2 * n * n + 1 and len(h.edges) == 2 * n
                assert all(h.members(e) | h.members(t) == set(h.vertices) for e, t in r.pairs())


def test_2_nine_cells():
    with criterion(2, "two crossing pseudolines give 9 distinct cells", 1):
        w = WiringDiagram(2, (("1", "2"),))
        assert len(cells(insert_twins(w).doubled)) == 9
        h = build_hypergraph(w).hypergraph
        assert len(h.edges) == 4 and len(set(patterns(h).values())) == h.n_vertices == 9


def _random_simple_3d(rng, n):
    while True:
        rows = [tuple(rng.randint(-4, 4) for _ in range(4)) for _ in range(n)]
        try:
            a = HyperplaneArrangement.from_coefficients(rows)
        except ValueError:
            continue
        if a.is_simple() and len(list(a.vertices())) == (1 if n == 3 else 4):
            return a


def _cells_at_vertices(a):
    r = build_hypergraph(a)
    h, doubled = r.hypergraph, r.doubled.doubled
    for through, q in a.vertices():
        others = [i for i, l in enumerate(r.labels) if l.rstrip("'") not in through]
        near = [v for s, v in r.vertex_of_cell.items()
                if all(s[i] == side_of_hyperplane(doubled[r.labels[i]], q) for i in others)]
        local = [e for l in sorted(through) for e in (r.edge_of_element[l], r.edge_of_element[l + "'"])]
        pats = {tuple(v in h.members(e) for e in local) for v in near}
        yield len(near), len(pats), len(local)


def test_3_twenty_seven_cells():
    with criterion(3, "3^d incident cells at every vertex in d=3", 30):
        rng = random.Random(3)
        a = _random_simple_3d(rng, 3)
        assert list(_cells_at_vertices(a)) == [(27, 27, 6)]
        assert build_hypergraph(a).hypergraph.n_vertices == 27
        # a second arrangement with four vertices
        assert list(_cells_at_vertices(_random_simple_3d(rng, 4))) == [(27, 27, 6)] * 4


def test_4_halfspace_builder():
    with criterion(4, "halfspace builder verifies for n <= 4", 10):
        for b in stretchable_fixtures(4):
            r = build_hypergraph(sweepable(b))
            rep = halfspace_representation_from_stretching(r, b)
            report = verify_representation(r.hypergraph, rep)
            assert report.passed and len(report.violations) == 0


def test_5_disk_builder():
    with criterion(5, "disk builder verifies inside the box for n <= 3", 30):
        for b in stretchable_fixtures(3):
            r = build_hypergraph(sweepable(b))
            rep = disk_representation_from_stretching(r, b)
            assert verify_representation(r.hypergraph, rep).passed
            box = rep.meta["box"]
            assert all(in_box(p, box) for p in rep.points.values())
            assert all(in_box(p, box) for p in rep.meta["tangency"].values())


def test_6_round_trip():
    with criterion(6, "separators of the disk representation stretch A, n <= 3", 30):
        for b in stretchable_fixtures(3):
            a = sweepable(b)
            r = build_hypergraph(a)
            rep = disk_representation_from_stretching(r, b)
            assert check_stretching(a, extract_separators(r.hypergraph, rep, r)).ok


def _exhaustive(max_v, max_e):
    for n in range(1, max_v + 1):
        subsets = [frozenset(v for v in range(1, n + 1) if m >> (v - 1) & 1) for m in range(2 ** n)]
        for k in range(max_e + 1):
            for edges in product(subsets, repeat=k):
                yield Hypergraph.from_sets(n, edges)


def test_7_polygon_recognizer_vs_oracle():
    with criterion(7, "unit-square recognizer vs oracle, |V|<=3, |E|<=2", 300):
        count = 0
        for h in _exhaustive(3, 2):
            exact = recognize_polygon_translates(h)
            oracle = brute_force_oracle(h, Family.square())
            if exact.outcome == YES:
                assert verify_representation(h, exact.witness).passed
            if oracle.outcome == YES:
                assert verify_representation(h, oracle.witness).passed
                assert exact.outcome == YES
            assert (exact.outcome == YES) == (oracle.outcome == YES)
            count += 1
        assert count == 101


def test_8_etr_emitter():
    with criterion(8, "ETR counts and relation pattern, 50 hypergraphs x d=1..3", 5):
        rng = random.Random(8)
        for _ in range(50):
            n = rng.randint(1, 8)
            h = Hypergraph.from_sets(n, [{v for v in range(1, n + 1) if rng.random() < 0.4}
                                         for _ in range(rng.randint(0, 5))])
            for d in (1, 2, 3):
                f = emit_etr(h, d)
                assert len(f.variables) == d * h.n_vertices + (d + 1) * len(h.edges)
                assert len(f.atoms) == h.n_vertices * len(h.edges)
                assert {(a.vertex, a.edge) for a in f.atoms if a.relation == "<="} == \
                    {(v, e) for e, m in h.edges for v in m}


def _build_lp(n, cons, obj):
    names = [f"x{i}" for i in range(n)]
    prog = lp.LinearProgram(list(names))
    for a, rel, b in cons:
        prog.add(dict(zip(names, a)), rel, b)
    if obj is not None:
        prog.maximize(dict(zip(names, obj)))
    return prog


def test_9_lp_vs_fourier_motzkin():
    with criterion(9, "exact simplex vs Fourier-Motzkin on 500 LPs", 120):
        rng = random.Random(9)
        for _ in range(500):
            n, cons, obj = random_lp(rng)
            prog = _build_lp(n, cons, obj)
            res = lp.solve(prog)
            assert res.feasible == fm_feasible(n, cons)
            if res.assignment is not None:
                assert prog.check(res.assignment)
            if obj is not None:
                status, value = fm_maximize(n, cons, obj)
                assert status == res.status
                if status == lp.OPTIMAL:
                    assert value == res.value


def test_10_chain8_disks():
    with criterion(10, "unit-disk search on the eight-vertex chain", 120):
        d = search_representation(CHAIN8, Family("disk"))
        assert d.outcome == YES
        assert verify_representation(CHAIN8, d.witness).passed


def test_11_canvas_lift():
    with criterion(11, "canvas lift restricts exactly and transfers stretching", 10):
        for k in range(20):
            b = random_simple(3 + k % 3, 100 + k)
            for d in (3, 4):
                lift = canvas_lift(b, d)
                assert lift.lifted.restrict(2).hyperplanes == b.hyperplanes
                assert check_stretching(lift_vertex_data(wiring_from_lines(b), d), lift.combined()).ok


def test_12_intervals():
    with criterion(12, "consecutive-ones recognizer vs exhaustive orders", 60):
        rng = random.Random(12)
        for _ in range(200):
            n = rng.randint(1, 7)
            edges = [{v for v in range(1, n + 1) if rng.random() < 0.45} for _ in range(rng.randint(0, 4))]
            h = Hypergraph.from_sets(n, edges)
            order = recognize_intervals(h)
            assert (order is not None) == c1p_bruteforce(n, edges)
            if order is not None:
                pos = {v: i for i, v in enumerate(order)}
                assert all(not e or max(pos[v] for v in e) - min(pos[v] for v in e) + 1 == len(e) for e in edges)
