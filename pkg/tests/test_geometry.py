import random
from fractions import Fraction as F

import pytest

from georep.geometry import (
    DiskTranslate,
    EllipseTranslate,
    Halfspace,
    Hyperplane,
    PolygonTranslate,
    contains,
    convex_hull,
    midpoint,
    orientation,
    point_in_polygon,
    separator_congruent,
    side_of_hyperplane,
    signed_area2,
    triangulate_hull,
)
from oracles import brute_hull_vertices, polygon_area2, ray_cast_contains, triangle_area2

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
L_SHAPE = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]


def rand_q(rng, lo=-5, hi=5, den=4):
    return F(rng.randint(lo * den, hi * den), rng.randint(1, den))


def rand_pt(rng, **kw):
    return (rand_q(rng, **kw), rand_q(rng, **kw))


def test_orientation_examples():
    assert orientation((0, 0), (1, 0), (0, 1)) == 1
    assert orientation((0, 0), (1, 1), (2, 2)) == 0
    with pytest.raises(ValueError):
        orientation((0, 0), (1, 0), (0, 1, 2))


def test_orientation_matches_determinant_and_antisymmetry():
    rng = random.Random(1)
    for _ in range(100):
        p, q, r = rand_pt(rng), rand_pt(rng), rand_pt(rng)
        det = p[0] * q[1] - p[1] * q[0] - p[0] * r[1] + p[1] * r[0] + q[0] * r[1] - q[1] * r[0]
        assert orientation(p, q, r) == (det > 0) - (det < 0)
        assert orientation(p, q, r) == -orientation(p, r, q)


def test_hull_examples():
    hull = convex_hull(SQUARE + [(F(1, 2), F(1, 2))])
    assert set(hull) == {tuple(map(F, p)) for p in SQUARE}
    assert signed_area2(hull) > 0
    tri = convex_hull([(0, 0), (0, 1), (1, 0)])
    assert len(tri) == 3 and signed_area2(tri) > 0
    with pytest.raises(ValueError):
        convex_hull([(0, 0), (1, 1)])
    with pytest.raises(ValueError):
        convex_hull([(0, 0), (1, 1), (2, 2)])


def test_hull_matches_bruteforce_and_is_idempotent():
    rng = random.Random(2)
    for k in range(20):
        pts = [rand_pt(rng, lo=-3, hi=3, den=2) for _ in range(20 if k < 5 else 10)]
        hull = convex_hull(pts)
        assert set(hull) == brute_hull_vertices(pts)
        assert convex_hull(hull) == hull
        assert all(point_in_polygon(p, hull) for p in pts)


@pytest.mark.parametrize("poly,n_tri", [(SQUARE, 2), ([(0, 0), (1, 0), (0, 1)], 1)])
def test_triangulate_convex(poly, n_tri):
    t = triangulate_hull(poly)
    assert len(t.triangles) == n_tri
    assert t.polygon_edges() <= t.edges()
    assert all(t.inside)


def test_triangulate_l_shape():
    t = triangulate_hull(L_SHAPE)
    assert t.polygon_edges() <= t.edges()
    # Euler on conv(P): 2V - h - 2 triangles, h = hull vertices, here 2*6 - 5 - 2
    assert len(t.triangles) == 2 * len(L_SHAPE) - len(t.hull) - 2
    assert sum(t.inside) == 4 and t.inside.count(False) == 1
    hull = [t.vertices[i] for i in t.hull]
    area = sum(triangle_area2(*t.points_of(k)) for k in range(len(t.triangles)))
    assert area == polygon_area2(hull)
    inner = sum(triangle_area2(*t.points_of(k)) for k in range(len(t.triangles)) if t.inside[k])
    assert inner == polygon_area2(L_SHAPE)


def test_triangulate_random_star_polygons():
    rng = random.Random(3)
    for _ in range(20):
        # star-shaped polygon from sorted angles with random radii
        n = rng.randint(4, 8)
        dirs = [(1, 0), (2, 1), (1, 1), (1, 2), (0, 1), (-1, 2), (-1, 1), (-2, 1),
                (-1, 0), (-2, -1), (-1, -1), (-1, -2), (0, -1), (1, -2), (1, -1), (2, -1)]
        picks = sorted(rng.sample(range(16), n))
        poly = [(d[0] * r, d[1] * r) for d, r in ((dirs[k], rng.randint(1, 4)) for k in picks)]
        try:
            t = triangulate_hull(poly)
        except ValueError:
            continue  # degenerate draw (collinear consecutive vertices)
        assert t.polygon_edges() <= t.edges()
        hull = [t.vertices[i] for i in t.hull]
        assert sum(triangle_area2(*t.points_of(k)) for k in range(len(t.triangles))) == polygon_area2(hull)
        assert sum(triangle_area2(*t.points_of(k)) for k in range(len(t.triangles)) if t.inside[k]) == polygon_area2(poly)


def test_triangulate_rejects_bad_polygons():
    with pytest.raises(ValueError):
        triangulate_hull([(0, 0), (1, 1), (1, 0), (0, 1)])  # bow tie
    with pytest.raises(ValueError):
        triangulate_hull(list(reversed(SQUARE)))


def test_contains_examples():
    assert contains(DiskTranslate((0, 0)), (1, 0))
    assert not contains(DiskTranslate((0, 0)), (1, 1))
    assert contains(Halfspace((1, 0), 0), (0, 5))
    assert not contains(Halfspace((1, 0), 0), (F(1, 10**9), 0))
    e = EllipseTranslate((0, 0), ((4, 0), (0, 1)))
    assert contains(e, (F(1, 2), 0)) and not contains(e, (F(1, 2), F(1, 100)))
    with pytest.raises(ValueError):
        contains(DiskTranslate((0, 0)), (1, 0, 0))


def test_polygon_translate_matches_ray_casting():
    rng = random.Random(4)
    s = PolygonTranslate(SQUARE, (3, 3))
    moved = [(x + 3, y + 3) for x, y in SQUARE]
    for _ in range(200):
        p = (F(rng.randint(20, 50), 10), F(rng.randint(20, 50), 10))
        assert contains(s, p) == ray_cast_contains(p, moved)
    ell = PolygonTranslate(L_SHAPE, (0, 0))
    for _ in range(200):
        p = (F(rng.randint(-5, 25), 10), F(rng.randint(-5, 25), 10))
        assert contains(ell, p) == ray_cast_contains(p, L_SHAPE)


def test_shape_validation():
    with pytest.raises(ValueError):
        EllipseTranslate((0, 0), ((1, 2), (2, 1)))  # indefinite
    with pytest.raises(ValueError):
        EllipseTranslate((0, 0), ((1, 0), (1, 1)))  # not symmetric
    with pytest.raises(ValueError):
        PolygonTranslate([(0, 0), (1, 0)], (0, 0))
    with pytest.raises(ValueError):
        Hyperplane((0, 0), 1)


def test_convex_shapes_closed_under_midpoints():
    rng = random.Random(5)
    shapes = [DiskTranslate((0, 0)), EllipseTranslate((1, 0), ((2, 1), (1, 3))), Halfspace((1, -2), 1),
              PolygonTranslate(SQUARE, (F(1, 3), 0))]
    for s in shapes:
        inside = [p for p in (rand_pt(rng, lo=-2, hi=2, den=8) for _ in range(300)) if contains(s, p)]
        for p, q in zip(inside, inside[1:]):
            assert contains(s, midpoint(p, q))


def test_side_of_hyperplane():
    h = Hyperplane((1, 0), 0)
    assert side_of_hyperplane(h, (1, 0)) == 1
    assert side_of_hyperplane(h, (0, 5)) == 0
    rng = random.Random(6)
    for _ in range(50):
        n, p, c = rand_pt(rng), rand_pt(rng), rand_q(rng)
        if n == (0, 0):
            continue
        v = n[0] * p[0] + n[1] * p[1] - c
        assert side_of_hyperplane(Hyperplane(n, c), p) == (v > 0) - (v < 0)


def test_separator_examples():
    h = separator_congruent(DiskTranslate((0, 0)), DiskTranslate((1, 0)))
    assert h.offset / h.normal[0] == F(1, 2) and h.normal[1] == 0
    with pytest.raises(ValueError):
        separator_congruent(DiskTranslate((0, 0)), DiskTranslate((0, 0)))
    with pytest.raises(ValueError):
        separator_congruent(DiskTranslate((0, 0)), Halfspace((1, 0), 0))
    with pytest.raises(ValueError):
        separator_congruent(EllipseTranslate((0, 0), ((1, 0), (0, 1))), EllipseTranslate((1, 0), ((2, 0), (0, 1))))


@pytest.mark.parametrize("Q", [None, ((1, 0), (0, 1)), ((3, 1), (1, 2))])
def test_separator_sampled(Q):
    rng = random.Random(7)
    grid = [(F(i, 8), F(j, 8)) for i in range(-24, 25) for j in range(-24, 25)]
    for _ in range(10):
        c1, c2 = rand_pt(rng, lo=-1, hi=1), rand_pt(rng, lo=-1, hi=1)
        if c1 == c2:
            continue
        if Q is None:
            s1, s2 = DiskTranslate(c1), DiskTranslate(c2)
        else:
            s1, s2 = EllipseTranslate(c1, Q), EllipseTranslate(c2, Q)
        h = separator_congruent(s1, s2)
        for x in grid:
            a, b = contains(s1, x), contains(s2, x)
            if a and not b:
                assert side_of_hyperplane(h, x) < 0
            elif b and not a:
                assert side_of_hyperplane(h, x) > 0
