import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orderk import geom_core as gc
from orderk import oracles
from orderk.errors import Collinear, IdenticalPoints, OverlappingSegments

UNIT = gc.ConvexPolygon(((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)))
BIG = gc.rectangle(-10, -10, 10, 10)


def unit_square_halfplanes():
    return [
        gc.HalfPlane((1.0, 0.0), 1.0, "r"),
        gc.HalfPlane((-1.0, 0.0), 0.0, "l"),
        gc.HalfPlane((0.0, 1.0), 1.0, "t"),
        gc.HalfPlane((0.0, -1.0), 0.0, "b"),
    ]


def random_convex(rng, m=8):
    pts = rng.random((m, 2))
    c = pts.mean(axis=0)
    pts = pts[np.argsort(np.arctan2(pts[:, 1] - c[1], pts[:, 0] - c[0]))]
    hs = gc.ConvexPolygon(tuple(map(tuple, pts))).halfplanes()
    # intersecting the edge half-planes of a star-shaped polygon gives a convex one
    return gc.halfplane_intersection(hs, gc.rectangle(-1, -1, 2, 2))


# ---------------------------------------------------------------- bisector


def test_bisector_axis_x():
    h = gc.bisector((0, 0), (2, 0))
    assert h.contains((1.0, 5.0)) and h.contains((0.99, -3))
    assert not h.contains((1.01, 0))


def test_bisector_axis_y():
    h = gc.bisector((0, 0), (0, 2))
    assert h.contains((7, 1.0)) and not h.contains((0, 1.01))


def test_bisector_diagonal():
    h = gc.bisector((0, 0), (2, 2))
    assert abs(h.value((1, 1))) < 1e-15
    assert h.normal[0] == pytest.approx(h.normal[1])
    assert h.normal[0] > 0


def test_bisector_identical_points():
    with pytest.raises(IdenticalPoints):
        gc.bisector((1, 1), (1, 1))


@given(st.tuples(st.floats(-100, 100), st.floats(-100, 100)), st.tuples(st.floats(-100, 100), st.floats(-100, 100)))
def test_bisector_contains_p_excludes_q(p, q):
    if math.dist(p, q) < 1e-6:
        return
    h = gc.bisector(p, q)
    assert h.value(p) < 0 < h.value(q)


# ---------------------------------------------------------------- clipping


def test_no_halfplanes_returns_box():
    p = gc.halfplane_intersection([], BIG)
    assert p.clipped
    assert p.area == pytest.approx(400)


def test_degenerate_slab_is_empty():
    hs = [gc.HalfPlane((1.0, 0.0), 1.0), gc.HalfPlane((-1.0, 0.0), -1.0)]
    assert gc.halfplane_intersection(hs, BIG).is_empty


def test_unit_square_from_halfplanes():
    p = gc.halfplane_intersection(unit_square_halfplanes(), BIG)
    assert not p.clipped
    assert p.area == pytest.approx(1.0, abs=1e-15)
    assert set(p.edge_tags) == {"r", "l", "t", "b"}


def test_clipped_flag_tracks_box_edges():
    p = gc.halfplane_intersection(unit_square_halfplanes()[:3], BIG)
    assert p.clipped
    assert any(gc.is_bbox_tag(t) for t in p.edge_tags)


def test_area_monotone_when_appending(rng):
    for _ in range(20):
        hs = [gc.bisector(tuple(rng.random(2)), tuple(rng.random(2))) for _ in range(8)]
        areas = [gc.halfplane_intersection(hs[:i], BIG).area for i in range(len(hs) + 1)]
        assert all(b <= a + 1e-12 for a, b in zip(areas, areas[1:]))


def test_polygon_intersection_idempotent():
    p = gc.polygon_intersection(UNIT, UNIT)
    assert p.area == pytest.approx(1.0)


def test_polygon_intersection_shifted():
    shifted = gc.ConvexPolygon(tuple((x + 0.5, y) for x, y in UNIT.vertices))
    assert gc.polygon_intersection(UNIT, shifted).area == pytest.approx(0.5, abs=1e-15)


def test_polygon_intersection_disjoint():
    far = gc.ConvexPolygon(tuple((x + 3, y) for x, y in UNIT.vertices))
    assert gc.polygon_intersection(UNIT, far).is_empty
    assert gc.intersection_area(UNIT, far) == 0


def test_polygon_intersection_commutative(rng):
    for _ in range(50):
        a, b = random_convex(rng), random_convex(rng)
        x, y = gc.intersection_area(a, b), gc.intersection_area(b, a)
        assert abs(x - y) <= 1e-12 * max(a.area, b.area)


def test_chord_split_areas_sum(rng):
    for _ in range(50):
        p = random_convex(rng)
        h = gc.bisector(tuple(rng.random(2)), tuple(rng.random(2)))
        flip = gc.HalfPlane((-h.normal[0], -h.normal[1]), -h.offset)
        left = gc.halfplane_intersection([h], p, min_area=0)
        right = gc.halfplane_intersection([flip], p, min_area=0)
        assert abs(left.area + right.area - p.area) <= 1e-12 * p.area


# ---------------------------------------------------------------- area


def test_area_unit_square():
    assert gc.area(UNIT) == 1.0


def test_area_triangle():
    assert gc.area(((0, 0), (1, 0), (0, 1))) == 0.5


def test_area_matches_monte_carlo(rng):
    for _ in range(3):
        p = random_convex(rng)
        est = oracles.monte_carlo_area(p.vertices, 1_000_000, rng)
        assert abs(est - p.area) <= 0.005 * p.area


def test_interior_point_inside(rng):
    for _ in range(20):
        p = random_convex(rng)
        assert gc.point_in_polygon(gc.interior_point(p), p)


# ---------------------------------------------------------------- circumcenter


def test_circumcenter_right_triangle():
    assert gc.circumcenter((0, 0), (2, 0), (0, 2)) == pytest.approx((1, 1))


def test_circumcenter_equilateral():
    c = gc.circumcenter((0, 0), (1, 0), (0.5, math.sqrt(3) / 2))
    assert c == pytest.approx((0.5, math.sqrt(3) / 6), abs=1e-15)


def test_circumcenter_equidistant():
    a, b, c = (0, 0), (4, 0), (1, 3)
    o = gc.circumcenter(a, b, c)
    assert abs(math.dist(o, a) - math.dist(o, b)) <= 1e-12
    assert abs(math.dist(o, a) - math.dist(o, c)) <= 1e-12


def test_circumcenter_collinear():
    with pytest.raises(Collinear):
        gc.circumcenter((0, 0), (1, 1), (2, 2))


def test_circumcenter_permutation_invariant(rng):
    for _ in range(50):
        pts = [tuple(rng.random(2)) for _ in range(3)]
        ref = gc.circumcenter(*pts)
        for perm in itertools.permutations(pts):
            assert math.dist(gc.circumcenter(*perm), ref) <= 1e-12


# ---------------------------------------------------------------- segments


def test_segment_crossing():
    assert gc.segment_intersection((0, 0), (1, 1), (0, 1), (1, 0)) == pytest.approx((0.5, 0.5))


def test_segment_parallel():
    assert gc.segment_intersection((0, 0), (1, 0), (0, 1), (1, 1)) is None


def test_segment_endpoint_contact():
    assert gc.segment_intersection((0, 0), (2, 2), (1, 1), (3, 0)) == pytest.approx((1, 1))


def test_segment_disjoint():
    assert gc.segment_intersection((0, 0), (1, 0), (2, 1), (2, 5)) is None


def test_segment_overlap():
    with pytest.raises(OverlappingSegments):
        gc.segment_intersection((0, 0), (2, 0), (1, 0), (3, 0))


# ---------------------------------------------------------------- predicates


@pytest.mark.parametrize("mode", gc.MODES)
def test_orient2d_signs(mode):
    assert gc.orient2d((0, 0), (1, 0), (0, 1), mode) == 1
    assert gc.orient2d((0, 0), (0, 1), (1, 0), mode) == -1
    assert gc.orient2d((0, 0), (1, 1), (2, 2), mode) == 0


def test_orient2d_robust_near_degenerate():
    # a decimal point that is not exactly on the line in binary
    a, b = (0.1, 0.1), (0.3, 0.3)
    c = (0.2, 0.2 + 2**-55)
    exact = Fraction(b[0] - a[0]) * (Fraction(c[1]) - Fraction(a[1])) - (Fraction(b[1]) - Fraction(a[1])) * (
        Fraction(c[0]) - Fraction(a[0])
    )
    sign = (exact > 0) - (exact < 0)
    assert gc.orient2d(a, b, c, gc.ROBUST) == sign
    assert gc.orient2d(a, b, c, gc.FLOAT) == 0


@pytest.mark.parametrize("mode", gc.MODES)
def test_incircle(mode):
    a, b, c = (0, 0), (1, 0), (0, 1)
    assert gc.incircle(a, b, c, (0.5, 0.5), mode) == 1
    assert gc.incircle(a, b, c, (3, 3), mode) == -1
    assert gc.incircle(a, b, c, (1, 1), mode) == 0


def test_env_mode(monkeypatch):
    monkeypatch.setenv("ORDERK_MODE", "float")
    assert gc.default_mode() == gc.FLOAT
    monkeypatch.setenv("ORDERK_MODE", "robust")
    assert gc.default_mode() == gc.ROBUST
    monkeypatch.delenv("ORDERK_MODE")
    assert gc.default_mode() == gc.ROBUST


# ---------------------------------------------------------------- general position


def test_square_corners_cocircular():
    s = gc.PointSet.from_coords([(0, 0), (1, 0), (1, 1), (0, 1)])
    bad = gc.validate_general_position(s)
    assert [v.kind for v in bad] == ["cocircular"]


def test_three_collinear():
    s = gc.PointSet.from_coords([(0, 0), (1, 1), (2, 2)])
    bad = gc.validate_general_position(s)
    assert bad == [gc.Violation("collinear", (0, 1, 2))]


def test_coincident():
    s = gc.PointSet.from_coords([(0, 0), (0, 0), (1, 2)])
    assert [v.kind for v in gc.validate_general_position(s)] == ["coincident"]


def test_generic_set_passes(five):
    assert gc.validate_general_position(five) == []


def test_general_position_matches_brute_force(rng):
    # grid points give plenty of exact collinear and cocircular tuples
    pts = [tuple(map(float, p)) for p in rng.integers(0, 4, size=(9, 2))]
    pts = list(dict.fromkeys(pts))
    s = gc.PointSet.from_coords(pts)
    bad = gc.validate_general_position(s, gc.ROBUST)
    coll = {v.indices for v in bad if v.kind == "collinear"}
    cocirc = {v.indices for v in bad if v.kind == "cocircular"}
    F = [tuple(Fraction(c) for c in p) for p in pts]

    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    expect_coll = {t for t in itertools.combinations(range(len(F)), 3) if orient(*(F[i] for i in t)) == 0}
    assert coll == expect_coll

    def lifted(a, b, c, d):
        rows = [(p[0] - d[0], p[1] - d[1], (p[0] - d[0]) ** 2 + (p[1] - d[1]) ** 2) for p in (a, b, c)]
        (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = rows
        return a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1)

    expect_cocirc = {
        q
        for q in itertools.combinations(range(len(F)), 4)
        if lifted(*(F[i] for i in q)) == 0 and not any(t in expect_coll for t in itertools.combinations(q, 3))
    }
    assert cocirc == expect_cocirc


def test_involving_restricts_sweep():
    s = gc.PointSet.from_coords([(0, 0), (1, 0), (1, 1), (0, 1), (0.3, 0.6)])
    assert gc.validate_general_position(s, involving=4) == []
    assert gc.validate_general_position(s) != []


def test_one_dimensional_only_coincidence():
    s = gc.PointSet.from_coords([0.0, 1.0, 2.0, 1.0])
    assert gc.validate_general_position(s) == [gc.Violation("coincident", (1, 3))]


# ---------------------------------------------------------------- bounding box


def test_bounding_box_default_scale():
    s = gc.PointSet.from_coords([(0, 0), (1, 0), (0.5, 0.8)])
    xmin, ymin, xmax, ymax = gc.bbox_extent(gc.bounding_box(s, fit=False))
    assert xmax - xmin == pytest.approx(20 * s.diameter)
    assert ((xmin + xmax) / 2, (ymin + ymax) / 2) == pytest.approx(s.centroid)


def test_bounding_box_contains_circumcenters(rng):
    s = gc.PointSet.from_coords(rng.random((10, 2)))
    box = gc.bounding_box(s)
    for t in itertools.combinations(s.points, 3):
        assert gc.point_in_polygon(gc.circumcenter(*t), box)


@settings(max_examples=30, deadline=None)
@given(st.floats(1.0, 200.0))
def test_bounding_box_respects_scale(scale):
    s = gc.PointSet.from_coords([(0, 0), (1, 0), (0.5, 0.8)])
    xmin, _, xmax, _ = gc.bbox_extent(gc.bounding_box(s, scale))
    assert xmax - xmin >= scale * s.diameter * (1 - 1e-12)


def test_tiny_genuine_polygon_is_kept():
    # edges of 1e-7 far from the origin: area 1e-14 but well resolved
    sq = gc.rectangle(0.45, 0.63, 0.45 + 1e-7, 0.63 + 1e-7)
    assert not gc.is_sliver(sq.vertices)
    big = gc.rectangle(-10, -10, 10, 10)
    assert gc.intersection_area(sq, big) == pytest.approx(1e-14, rel=1e-6)


def test_noise_sliver_is_empty():
    thin = ((0.0, 0.0), (10.0, 0.0), (10.0, 1e-14), (0.0, 1e-14))
    assert gc.is_sliver(thin)
    # a cut grazing the corner of a square leaves only a rounding-size triangle
    h = gc.HalfPlane((-1.0, -1.0), -(2.0 - 1e-15))
    assert gc.halfplane_intersection([h], gc.rectangle(0, 0, 1, 1)).is_empty
    h = gc.HalfPlane((-1.0, -1.0), -(2.0 - 1e-6))
    assert not gc.halfplane_intersection([h], gc.rectangle(0, 0, 1, 1)).is_empty
