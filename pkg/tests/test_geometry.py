import numpy as np
import pytest

from secmux.geometry import (
    RatePolygon,
    convex_hull,
    hausdorff_distance,
    pareto_front,
    point_polygon_distance,
)

# ---------------------------------------------------------------------------
# hull and pareto primitives
# ---------------------------------------------------------------------------


def test_hull_square_with_interior_points():
    pts = np.array([[0, 0], [1, 0], [1, 1], [0, 1], [0.5, 0.5], [0.2, 0.9]])
    hull = convex_hull(pts)
    assert sorted(map(tuple, hull)) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_hull_degenerate_cases():
    assert convex_hull(np.array([[0.5, 0.5]])).shape == (1, 2)
    two = convex_hull(np.array([[0, 0], [1, 1], [0.5, 0.5]]))
    assert sorted(map(tuple, two)) == [(0, 0), (1, 1)]


def test_hull_is_ccw():
    hull = convex_hull(np.array([[0, 0], [2, 0], [2, 1], [0, 1]]))
    area2 = 0.0
    for i in range(len(hull)):
        x1, y1 = hull[i]
        x2, y2 = hull[(i + 1) % len(hull)]
        area2 += x1 * y2 - x2 * y1
    assert area2 > 0


def test_pareto_front_drops_dominated():
    pts = np.array([[1, 1], [0.5, 0.5], [2, 0.2], [0.2, 2], [1, 1]])
    front = pareto_front(pts)
    assert sorted(map(tuple, front)) == [(0.2, 2.0), (1.0, 1.0), (2.0, 0.2)]


def test_pareto_front_keeps_hull_inputs():
    rng = np.random.default_rng(3)
    pts = rng.random((500, 2))
    front = pareto_front(pts)
    # Hull of front + origin + axis feet equals hull of the downward
    # closure of the full cloud.
    feet = np.array([[pts[:, 0].max(), 0.0], [0.0, pts[:, 1].max()], [0.0, 0.0]])
    closed_full = np.concatenate(
        [pts, feet, np.stack([pts[:, 0], np.zeros(len(pts))], 1),
         np.stack([np.zeros(len(pts)), pts[:, 1]], 1)]
    )
    h1 = convex_hull(np.concatenate([front, feet]))
    h2 = convex_hull(closed_full)
    assert sorted(map(tuple, np.round(h1, 12))) == sorted(map(tuple, np.round(h2, 12)))


# ---------------------------------------------------------------------------
# polygon construction
# ---------------------------------------------------------------------------


def test_from_halfplanes_unit_square():
    planes = [(1, 0, 1), (0, 1, 1), (-1, 0, 0), (0, -1, 0)]
    poly = RatePolygon.from_halfplanes(planes)
    assert sorted(map(tuple, poly.vertices)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert tuple(poly.vertices[0]) == (0, 0)


def test_from_halfplanes_empty():
    planes = [(1, 0, -1), (-1, 0, 0), (0, 1, 1), (0, -1, 0)]
    assert RatePolygon.from_halfplanes(planes) is None


def test_from_halfplanes_redundant_constraint():
    planes = [(1, 0, 1), (0, 1, 1), (1, 1, 5), (-1, 0, 0), (0, -1, 0)]
    poly = RatePolygon.from_halfplanes(planes)
    assert sorted(map(tuple, poly.vertices)) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_vertices_satisfy_halfplanes():
    planes = [(1, 0, 2), (0, 1, 1.5), (1, 1, 2.8), (-1, 0, 0), (0, -1, 0)]
    poly = RatePolygon.from_halfplanes(planes)
    for v in poly.vertices:
        for a, b, c in poly.halfplanes:
            assert a * v[0] + b * v[1] <= c + 1e-9


def test_roundtrip_vertices_planes_vertices():
    planes = [(1, 0, 2), (0, 1, 1), (2, 1, 4.5), (-1, 0, 0), (0, -1, 0)]
    poly = RatePolygon.from_halfplanes(planes)
    again = RatePolygon.from_vertices(poly.vertices)
    assert np.allclose(
        np.sort(poly.vertices, axis=0), np.sort(again.vertices, axis=0), atol=1e-12
    )


def test_single_point_and_segment():
    point = RatePolygon.single_point()
    assert point.contains((0, 0))
    assert not point.contains((0.1, 0))
    seg = RatePolygon.rectangle(2.0, 0.0)
    assert seg.contains((1.5, 0))
    assert not seg.contains((1.5, 0.1))
    assert not seg.contains((2.5, 0))


def test_rejects_negative_quadrant():
    with pytest.raises(ValueError):
        RatePolygon.from_vertices([[-0.5, 0.2], [1, 1]])


# ---------------------------------------------------------------------------
# membership against a brute-force oracle
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_membership_matches_constraint_oracle(seed):
    rng = np.random.default_rng(seed)
    caps = rng.uniform(0.3, 1.5, size=5)
    planes = [
        (1, 0, caps[0]),
        (0, 1, caps[1]),
        (1, 1, caps[2] + max(caps[0], caps[1])),
        (2, 1, caps[3] + 2 * caps[0]),
        (1, 2, caps[4] + 2 * caps[1]),
        (-1, 0, 0),
        (0, -1, 0),
    ]
    poly = RatePolygon.from_halfplanes(planes)
    xs = np.linspace(0, caps[0] * 1.2, 40)
    ys = np.linspace(0, caps[1] * 1.2, 40)
    for x in xs:
        for y in ys:
            direct = all(a * x + b * y <= c + 1e-9 for a, b, c in planes)
            assert poly.contains((x, y)) == direct


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------


def test_distance_inside_is_zero():
    poly = RatePolygon.rectangle(1, 1)
    assert point_polygon_distance((0.5, 0.5), poly) == 0.0


def test_distance_outside_edge_and_corner():
    poly = RatePolygon.rectangle(1, 1)
    assert point_polygon_distance((1.5, 0.5), poly) == pytest.approx(0.5)
    assert point_polygon_distance((2, 2), poly) == pytest.approx(np.sqrt(2))


def test_hausdorff_self_is_zero():
    poly = RatePolygon.rectangle(1, 2)
    assert hausdorff_distance(poly, poly) == 0.0


def test_hausdorff_translated_square():
    a = RatePolygon.from_vertices([[0, 0], [1, 0], [1, 1], [0, 1]])
    b = RatePolygon.from_vertices([[0.1, 0], [1.1, 0], [1.1, 1], [0.1, 1]])
    assert hausdorff_distance(a, b) == pytest.approx(0.1, abs=1e-12)


def test_support_and_slice_queries():
    poly = RatePolygon.from_halfplanes(
        [(1, 0, 2), (0, 1, 1), (1, 1, 2.5), (-1, 0, 0), (0, -1, 0)]
    )
    assert poly.max_x == pytest.approx(2.0)
    assert poly.support(1, 1) == pytest.approx(2.5)
    assert poly.max_x_at_y(1.0) == pytest.approx(1.5)
    assert poly.max_x_at_y(0.0) == pytest.approx(2.0)
    assert poly.max_x_at_y(5.0) == -np.inf
