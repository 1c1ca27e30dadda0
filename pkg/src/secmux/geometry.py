"""Convex polygons in the nonnegative rate quadrant.

A region is carried in two equivalent forms: a list of half-planes
``a*x + b*y <= c`` (normals scaled to unit length so that constraint
margins are Euclidean distances) and a counterclockwise vertex list
starting at the lexicographically smallest vertex.  Degenerate regions
(a single point or a segment) are first-class citizens: sweeps over
degenerate channels produce them routinely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

GEOM_TOL = 1e-9

__all__ = [
    "GEOM_TOL",
    "RatePolygon",
    "convex_hull",
    "pareto_front",
    "point_polygon_distance",
    "hausdorff_distance",
]


def _cross(ox, oy, ax, ay, bx, by) -> float:
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def convex_hull(points: np.ndarray) -> np.ndarray:
    """Counterclockwise hull via the monotone chain; collinear points are
    dropped.  Accepts any (n, 2) array; handles 1- and 2-point hulls."""
    pts = np.unique(np.asarray(points, dtype=np.float64), axis=0)
    if len(pts) <= 2:
        return pts
    # np.unique sorts lexicographically, which is what the chain needs.
    def build(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(
                out[-2][0], out[-2][1], out[-1][0], out[-1][1], p[0], p[1]
            ) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = build(pts)
    upper = build(pts[::-1])
    hull = np.array(lower[:-1] + upper[:-1])
    if len(hull) == 0:  # fully collinear input
        return np.array([pts[0], pts[-1]])
    return hull


def pareto_front(points: np.ndarray) -> np.ndarray:
    """Componentwise-maximal points of an (n, 2) array.

    For regions that are downward closed inside the quadrant, the hull of
    a point union is determined by the Pareto front together with the
    origin and the two axis feet, so sweeps can prune aggressively.
    """
    pts = np.asarray(points, dtype=np.float64)
    if len(pts) == 0:
        return pts.reshape(0, 2)
    order = np.lexsort((-pts[:, 1], -pts[:, 0]))
    sorted_pts = pts[order]
    ys = sorted_pts[:, 1]
    keep = np.ones(len(pts), dtype=bool)
    keep[1:] = ys[1:] > np.maximum.accumulate(ys)[:-1]
    return sorted_pts[keep]


@dataclass(frozen=True, eq=False)
class RatePolygon:
    """A convex region of nonnegative rate pairs."""

    vertices: np.ndarray
    halfplanes: tuple[tuple[float, float, float], ...]

    def __init__(self, vertices, halfplanes):
        verts = np.asarray(vertices, dtype=np.float64).reshape(-1, 2).copy()
        verts.setflags(write=False)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(
            self, "halfplanes", tuple((float(a), float(b), float(c)) for a, b, c in halfplanes)
        )
        if len(verts) == 0:
            raise ValueError("a rate polygon needs at least one vertex")
        if np.any(verts < -GEOM_TOL):
            raise ValueError("rate polygons live in the nonnegative quadrant")
        for v in verts:
            if not self.contains(v, tol=1e-7):
                raise ValueError(f"vertex {v} violates a half-plane constraint")

    # -- construction -------------------------------------------------

    @classmethod
    def from_halfplanes(cls, planes) -> "RatePolygon | None":
        """Intersect half-planes by pairwise vertex enumeration.

        Each plane is (a, b, c) meaning a*x + b*y <= c.  Returns None when
        the intersection is empty.  The caller supplies the quadrant
        constraints explicitly if it wants them.
        """
        normalized = []
        for a, b, c in planes:
            norm = float(np.hypot(a, b))
            if norm == 0.0:
                raise ValueError("half-plane with zero normal")
            normalized.append((a / norm, b / norm, c / norm))

        candidates = []
        n = len(normalized)
        for i in range(n):
            a1, b1, c1 = normalized[i]
            for j in range(i + 1, n):
                a2, b2, c2 = normalized[j]
                det = a1 * b2 - a2 * b1
                if abs(det) < 1e-12:
                    continue
                x = (c1 * b2 - c2 * b1) / det
                y = (a1 * c2 - a2 * c1) / det
                candidates.append((x, y))
        feasible = []
        for x, y in candidates:
            if all(a * x + b * y <= c + GEOM_TOL for a, b, c in normalized):
                feasible.append((0.0 if abs(x) < GEOM_TOL else x,
                                 0.0 if abs(y) < GEOM_TOL else y))
        if not feasible:
            return None
        verts = _order_ccw(np.asarray(feasible))
        return cls(verts, _canonical_planes(verts))

    @classmethod
    def from_vertices(cls, points) -> "RatePolygon":
        """Hull of a point cloud, with half-planes derived from the edges."""
        hull = convex_hull(np.asarray(points, dtype=np.float64))
        verts = _order_ccw(hull)
        return cls(verts, _canonical_planes(verts))

    @classmethod
    def single_point(cls, x: float = 0.0, y: float = 0.0) -> "RatePolygon":
        return cls.from_vertices([[x, y]])

    @classmethod
    def rectangle(cls, width: float, height: float) -> "RatePolygon":
        """Axis-aligned rectangle anchored at the origin; degenerate sides
        collapse to a segment or a point."""
        w = max(float(width), 0.0)
        h = max(float(height), 0.0)
        corners = [[0.0, 0.0], [w, 0.0], [w, h], [0.0, h]]
        return cls.from_vertices(corners)

    # -- queries -------------------------------------------------------

    def contains(self, point, tol: float = GEOM_TOL) -> bool:
        x, y = float(point[0]), float(point[1])
        return all(a * x + b * y <= c + tol for a, b, c in self.halfplanes)

    @property
    def max_x(self) -> float:
        return float(self.vertices[:, 0].max())

    @property
    def max_y(self) -> float:
        return float(self.vertices[:, 1].max())

    def support(self, dx: float, dy: float) -> float:
        """Largest value of dx*x + dy*y over the region."""
        return float((self.vertices[:, 0] * dx + self.vertices[:, 1] * dy).max())

    def max_x_at_y(self, y: float) -> float:
        """Largest x with (x, y) in the region; -inf when the slice is empty."""
        verts = self.vertices
        if len(verts) == 1:
            return verts[0, 0] if abs(verts[0, 1] - y) <= GEOM_TOL else -np.inf
        best = -np.inf
        n = len(verts)
        for i in range(n):
            ax, ay = verts[i]
            bx, by = verts[(i + 1) % n]
            lo, hi = min(ay, by), max(ay, by)
            if lo - GEOM_TOL <= y <= hi + GEOM_TOL:
                if abs(by - ay) < 1e-15:
                    best = max(best, ax, bx)
                else:
                    t = min(max((y - ay) / (by - ay), 0.0), 1.0)
                    best = max(best, ax + t * (bx - ax))
        return best

    def scaled(self, factor: float) -> "RatePolygon":
        verts = self.vertices * factor
        planes = [(a, b, c * factor) for a, b, c in self.halfplanes]
        return RatePolygon(verts, planes)


def _order_ccw(points: np.ndarray) -> np.ndarray:
    """Deduplicate, orient counterclockwise, start at the lexicographic
    minimum."""
    pts = np.asarray(points, dtype=np.float64)
    # Merge near-duplicates within tolerance.
    unique: list[np.ndarray] = []
    for p in pts:
        if not any(abs(p[0] - q[0]) <= GEOM_TOL and abs(p[1] - q[1]) <= GEOM_TOL for q in unique):
            unique.append(p)
    pts = np.array(unique)
    if len(pts) <= 2:
        order = np.lexsort((pts[:, 1], pts[:, 0]))
        return pts[order]
    center = pts.mean(axis=0)
    angles = np.arctan2(pts[:, 1] - center[1], pts[:, 0] - center[0])
    pts = pts[np.argsort(angles)]
    hull = convex_hull(pts)
    start = np.lexsort((hull[:, 1], hull[:, 0]))[0]
    return np.roll(hull, -start, axis=0)


def _canonical_planes(verts: np.ndarray) -> list[tuple[float, float, float]]:
    """Half-planes describing the hull of an ordered CCW vertex list."""
    k = len(verts)
    if k == 1:
        x, y = verts[0]
        return [(1.0, 0.0, x), (-1.0, 0.0, -x), (0.0, 1.0, y), (0.0, -1.0, -y)]
    if k == 2:
        (x1, y1), (x2, y2) = verts
        dx, dy = x2 - x1, y2 - y1
        norm = float(np.hypot(dx, dy))
        ux, uy = dx / norm, dy / norm
        nx, ny = uy, -ux
        return [
            (nx, ny, nx * x1 + ny * y1),
            (-nx, -ny, -(nx * x1 + ny * y1)),
            (-ux, -uy, -(ux * x1 + uy * y1)),
            (ux, uy, ux * x2 + uy * y2),
        ]
    planes = []
    for i in range(k):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % k]
        dx, dy = x2 - x1, y2 - y1
        norm = float(np.hypot(dx, dy))
        if norm < 1e-15:
            continue
        nx, ny = dy / norm, -dx / norm  # outward normal of a CCW edge
        planes.append((nx, ny, nx * x1 + ny * y1))
    return planes


def point_polygon_distance(point, poly: RatePolygon) -> float:
    """Euclidean distance from a point to a convex polygon (0 inside)."""
    x, y = float(point[0]), float(point[1])
    if poly.contains((x, y), tol=0.0):
        return 0.0
    verts = poly.vertices
    if len(verts) == 1:
        return float(np.hypot(x - verts[0, 0], y - verts[0, 1]))
    best = np.inf
    n = len(verts)
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        dx, dy = bx - ax, by - ay
        denom = dx * dx + dy * dy
        t = 0.0 if denom == 0.0 else min(max(((x - ax) * dx + (y - ay) * dy) / denom, 0.0), 1.0)
        best = min(best, float(np.hypot(x - (ax + t * dx), y - (ay + t * dy))))
    return best


def hausdorff_distance(p: RatePolygon, q: RatePolygon) -> float:
    """Symmetric Hausdorff distance between two convex polygons.

    For convex sets the directed distance is attained at a vertex, so the
    maximum over vertex-to-polygon distances is exact.
    """
    if len(p.vertices) == 0 or len(q.vertices) == 0:
        raise ValueError("hausdorff distance of an empty polygon")
    d_pq = max(point_polygon_distance(v, q) for v in p.vertices)
    d_qp = max(point_polygon_distance(v, p) for v in q.vertices)
    return max(d_pq, d_qp)
