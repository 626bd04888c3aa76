from fractions import Fraction as F

import pytest

from georep.arrangement import HyperplaneArrangement, WiringDiagram, check_stretching, wiring_from_lines
from georep.fixtures import grid, non_pappus_wiring, pappus_lines, random_simple, random_wiring
from georep.geometry import DiskTranslate, EllipseTranslate, Halfspace, side_of_hyperplane
from georep.reduction import (
    DiskBuilderParams,
    ReductionError,
    build_hypergraph,
    check_vertex_stars,
    disk_representation_from_stretching,
    extract_separators,
    halfspace_representation_from_stretching,
    in_box,
)
from georep.verify import verify_representation


def sweepable(b):
    """The wiring diagram of ``b`` when every line can be swept, else ``b`` itself."""
    return wiring_from_lines(b) if all(h.normal[1] > 0 for h in b.hyperplanes) else b


def one_line():
    return HyperplaneArrangement.from_coefficients([(1, 0, 0)])


def crossing():
    return HyperplaneArrangement.from_coefficients([(0, 1, 0), (1, 1, 0)])


def test_single_pseudoline():
    r = build_hypergraph(WiringDiagram(1, ()))
    h = r.hypergraph
    assert h.n_vertices == 3
    assert {m for _, m in h.edges} == {frozenset({1, 2}), frozenset({2, 3})}
    # vertex 2 is the cell between the element and its twin
    assert h.members("1") == {2, 3} and h.members("1'") == {1, 2}


def test_two_crossing_pseudolines():
    r = build_hypergraph(WiringDiagram(2, (("1", "2"),)))
    h = r.hypergraph
    assert h.n_vertices == 9 and len(h.edges) == 4
    assert sorted(len(m) for _, m in h.edges) == [6, 6, 6, 6]
    patterns = {tuple(v in m for _, m in h.edges) for v in h.vertices}
    assert len(patterns) == 9


@pytest.mark.parametrize("n", range(1, 6))
def test_counting_law(n):
    for seed in range(3):
        r = build_hypergraph(random_wiring(n, seed))
        h = r.hypergraph
        assert h.n_vertices == 2 * n * n + 1 and len(h.edges) == 2 * n
        for e, et in r.pairs():
            assert h.members(e) | h.members(et) == set(h.vertices)
        assert check_vertex_stars(r)


def test_provenance_maps_are_bijections():
    r = build_hypergraph(random_wiring(3, 2))
    assert sorted(r.vertex_of_cell.values()) == list(r.hypergraph.vertices)
    assert sorted(r.edge_of_element.values()) == sorted(r.hypergraph.edge_ids)
    assert set(r.cell_of_vertex()) == set(r.hypergraph.vertices)


def test_partial_arrangement():
    w = WiringDiagram(3, (("2", "3"),))
    r = build_hypergraph(w)
    # pseudolines: 1 + wires + crossings, with 6 wires and 4 doubled crossings
    assert r.hypergraph.n_vertices == 1 + 6 + 4
    assert check_vertex_stars(r)


def test_coordinate_input_and_non_simple_rejected():
    r = build_hypergraph(grid(2))
    assert r.hypergraph.n_vertices == 25 and len(r.hypergraph.edges) == 8
    with pytest.raises(ValueError):
        build_hypergraph(HyperplaneArrangement.from_coefficients([(1, 0, 0), (0, 1, 0), (1, 1, 0)]))


def test_halfspace_single_line():
    a = one_line()
    r = build_hypergraph(a)
    rep = halfspace_representation_from_stretching(r, a)
    assert all(isinstance(s, Halfspace) for s in rep.shapes.values())
    assert verify_representation(r.hypergraph, rep).passed
    xs = sorted(p[0] for p in rep.points.values())
    alpha = rep.meta["alpha"]
    assert xs[0] < 0 < xs[1] < alpha < xs[2]
    assert xs[1] == alpha / 2  # equidistant between the twins


@pytest.mark.parametrize("b", [crossing(), grid(2), random_simple(3, 1), random_simple(4, 2), pappus_lines()],
                         ids=["crossing", "grid2", "rs3", "rs4", "pappus"])
def test_halfspace_builder_verifies(b):
    for a in {b, sweepable(b)}:
        r = build_hypergraph(a)
        rep = halfspace_representation_from_stretching(r, b)
        assert verify_representation(r.hypergraph, rep).passed


def test_halfspace_builder_without_equidistance():
    b = random_simple(3, 4)
    r = build_hypergraph(b)
    assert verify_representation(r.hypergraph, halfspace_representation_from_stretching(r, b, equidistant=False)).passed


def test_builder_rejects_non_stretching():
    b = random_simple(3, 1)
    other = random_simple(3, 5)
    r = build_hypergraph(wiring_from_lines(b))
    if not check_stretching(wiring_from_lines(b), other).ok:
        with pytest.raises(ReductionError):
            halfspace_representation_from_stretching(r, other)
    with pytest.raises(ReductionError):
        halfspace_representation_from_stretching(build_hypergraph(non_pappus_wiring()), pappus_lines())


def _disk_checks(r, rep):
    assert verify_representation(r.hypergraph, rep).passed
    box = rep.meta["box"]
    assert all(in_box(p, box) for p in rep.points.values())
    assert all(in_box(p, box) for p in rep.meta["tangency"].values())


@pytest.mark.parametrize("b", [one_line(), crossing(), random_simple(3, 0), random_simple(3, 8)],
                         ids=["n1", "n2", "rs3a", "rs3b"])
def test_disk_builder(b):
    r = build_hypergraph(sweepable(b))
    rep = disk_representation_from_stretching(r, b)
    assert all(isinstance(s, DiskTranslate) for s in rep.shapes.values())
    assert len(rep.points) == 2 * len(b) ** 2 + 1 and len(rep.shapes) == 2 * len(b)
    _disk_checks(r, rep)


def test_disk_builder_grid_needs_shear():
    b = grid(2)
    r = build_hypergraph(b)
    _disk_checks(r, disk_representation_from_stretching(r, b))


def test_disk_builder_params():
    b = crossing()
    r = build_hypergraph(b)
    rep = disk_representation_from_stretching(r, b, DiskBuilderParams(equidistant=False))
    _disk_checks(r, rep)
    big = rep.meta["f"] * 2
    _disk_checks(r, disk_representation_from_stretching(r, b, DiskBuilderParams(f=big)))
    with pytest.raises(ReductionError):
        disk_representation_from_stretching(r, b, DiskBuilderParams(f=rep.meta["f"] / 2))
    with pytest.raises(ValueError):
        DiskBuilderParams(epsilon=0)


@pytest.mark.parametrize("Q", [((1, 1), (1, 2)), ((4, 0), (0, F(9, 4)))])
def test_ellipse_builder(Q):
    b = random_simple(3, 0)
    r = build_hypergraph(b)
    rep = disk_representation_from_stretching(r, b, DiskBuilderParams(Q=Q))
    assert all(isinstance(s, EllipseTranslate) for s in rep.shapes.values())
    assert verify_representation(r.hypergraph, rep).passed
    assert check_stretching(b, extract_separators(r.hypergraph, rep, r)).ok


def test_ellipse_builder_refuses_irrational_root():
    b = crossing()
    with pytest.raises(ReductionError):
        disk_representation_from_stretching(build_hypergraph(b), b, DiskBuilderParams(Q=((2, 0), (0, 1))))


def test_separators_single_line():
    b = one_line()
    r = build_hypergraph(b)
    rep = disk_representation_from_stretching(r, b)
    sep = extract_separators(r.hypergraph, rep, r)
    assert len(sep) == 1
    (e, t), = r.pairs()
    c1, c2 = rep.shapes[e].center, rep.shapes[t].center
    assert side_of_hyperplane(sep.hyperplanes[0], c1) == -side_of_hyperplane(sep.hyperplanes[0], c2) != 0


def test_separators_two_lines_split_inner_points():
    b = crossing()
    r = build_hypergraph(wiring_from_lines(b))
    rep = disk_representation_from_stretching(r, b)
    sep = extract_separators(r.hypergraph, rep, r)
    ((lbl, q),) = sep.vertices()
    assert lbl == frozenset({"1", "2"})
    h = r.hypergraph
    count = {v: sum(v in h.members(e) for pair in r.pairs() for e in pair) for v in h.vertices}
    # the central cell lies in all four edges; equidistant placement puts its
    # point on both separators, i.e. at their crossing
    (central,) = [v for v, c in count.items() if c == 4]
    assert rep.points[central] == q
    # the four corner cells, in one edge of each pair, see four distinct sides
    corners = [v for v in h.vertices
               if all((v in h.members(e)) != (v in h.members(t)) for e, t in r.pairs())]
    assert len(corners) == 4
    signs = {sep.sign_vector(rep.points[v]) for v in corners}
    assert len(signs) == 4 and all(0 not in s for s in signs)


@pytest.mark.parametrize("b", [one_line(), crossing(), random_simple(3, 0), random_simple(3, 8), grid(2)],
                         ids=["n1", "n2", "rs3a", "rs3b", "grid2"])
def test_round_trip(b):
    a = sweepable(b)
    r = build_hypergraph(a)
    rep = disk_representation_from_stretching(r, b)
    assert check_stretching(a, extract_separators(r.hypergraph, rep, r)).ok


def test_separators_reject_halfspaces():
    b = crossing()
    r = build_hypergraph(b)
    with pytest.raises(ReductionError):
        extract_separators(r.hypergraph, halfspace_representation_from_stretching(r, b), r)
