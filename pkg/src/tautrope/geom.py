"""Planar predicates and constructions shared by every other module.

All geometry is plain double precision; there is no exact-arithmetic
fallback.  Inputs closer to degeneracy than ``EPS_COL`` are meant to be
rejected by scene/trace validators rather than resolved here.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional, Sequence

# Tolerance for collinearity / zero tests, for coordinates of magnitude <= 1e3.
EPS_COL = 1e-9


class GeometryError(ValueError):
    """Base class for geometric contract violations."""


class DegenerateContact(GeometryError):
    """A segment meets a ray at its origin or runs along the ray's line."""


class Point(NamedTuple):
    x: float
    y: float


class OpenSegment(NamedTuple):
    """Line segment whose open interior is impassable; endpoints are free."""

    a: Point
    b: Point


class Ray(NamedTuple):
    """Parametric ray: origin + k*dir for k >= 0. dir is never (0, 0)."""

    origin: Point
    dir: Point


class RayHit(NamedTuple):
    point: Point
    seg_param: float
    ray_param: float


# Instrumentation: number of segment-ray crossing tests performed.  This is
# the cost metric for the per-step O(n) bound; it is a best-effort global
# counter, not a synchronization point.
_ray_tests = 0


def ray_test_count() -> int:
    return _ray_tests


def reset_ray_test_count() -> None:
    global _ray_tests
    _ray_tests = 0


def pt(x: float, y: float) -> Point:
    return Point(float(x), float(y))


def is_finite_point(p: Point) -> bool:
    return math.isfinite(p[0]) and math.isfinite(p[1])


def dist(p: Point, q: Point) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the turn a->b->c: +1 left, -1 right, 0 collinear within EPS_COL."""
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if d > EPS_COL:
        return 1
    if d < -EPS_COL:
        return -1
    return 0


def segments_cross(s: OpenSegment, t: OpenSegment) -> bool:
    """True iff the open interiors properly cross at a single point.

    Endpoint contact and collinear overlap do not count as crossings.
    """
    o1 = orient(s[0], s[1], t[0])
    o2 = orient(s[0], s[1], t[1])
    if o1 * o2 >= 0:
        return False
    o3 = orient(t[0], t[1], s[0])
    o4 = orient(t[0], t[1], s[1])
    return o3 * o4 < 0


def segment_ray_crossing(m: OpenSegment, r: Ray) -> Optional[RayHit]:
    """Proper crossing of the open segment with the ray, if any.

    Returns the crossing point together with the segment parameter in (0, 1)
    and the ray parameter k > 0.  Raises DegenerateContact when the segment
    runs along the ray's carrier line or passes through the ray origin:
    those are general-position violations the caller must deal with.
    """
    global _ray_tests
    _ray_tests += 1
    (ax, ay), (bx, by) = m
    (ox, oy), (dx, dy) = r
    ux, uy = bx - ax, by - ay
    # side of each segment endpoint relative to the ray's carrier line
    oa = dx * (ay - oy) - dy * (ax - ox)
    ob = dx * (by - oy) - dy * (bx - ox)
    denom = ux * dy - uy * dx
    if abs(denom) <= EPS_COL:
        if abs(oa) <= EPS_COL:
            raise DegenerateContact(
                f"segment {m} is collinear with ray {r}"
            )
        return None
    sa = 0 if abs(oa) <= EPS_COL else (1 if oa > 0.0 else -1)
    sb = 0 if abs(ob) <= EPS_COL else (1 if ob > 0.0 else -1)
    if sa == 0 or sb == 0 or sa == sb:
        return None
    wx, wy = ox - ax, oy - ay
    k = (wx * uy - wy * ux) / denom
    if abs(k) * math.hypot(dx, dy) <= EPS_COL:
        raise DegenerateContact(
            f"segment {m} passes through the origin of ray {r}"
        )
    if k < 0.0:
        return None
    s = (wx * dy - wy * dx) / denom
    return RayHit(Point(ox + k * dx, oy + k * dy), s, k)


def visible(p: Point, q: Point, obstacles: Sequence[OpenSegment]) -> bool:
    """True iff the open segment p-q properly crosses no obstacle interior.

    Collinear (flush) overlap with an obstacle does not block visibility: a
    taut rope may legitimately lie along a wall.
    """
    seg = OpenSegment(p, q)
    for obs in obstacles:
        if segments_cross(seg, obs):
            return False
    return True


def on_open_segment(p: Point, seg: OpenSegment) -> bool:
    """True iff p lies on the open interior of seg (within EPS_COL)."""
    if orient(seg[0], seg[1], p) != 0:
        return False
    (ax, ay), (bx, by) = seg
    ux, uy = bx - ax, by - ay
    t = ((p[0] - ax) * ux + (p[1] - ay) * uy) / (ux * ux + uy * uy)
    return 0.0 < t < 1.0


def on_closed_segment(p: Point, seg: OpenSegment) -> bool:
    """True iff p lies on seg including its endpoints (within EPS_COL)."""
    if orient(seg[0], seg[1], p) != 0:
        return False
    (ax, ay), (bx, by) = seg
    ux, uy = bx - ax, by - ay
    t = ((p[0] - ax) * ux + (p[1] - ay) * uy) / (ux * ux + uy * uy)
    return -EPS_COL <= t <= 1.0 + EPS_COL


def point_segment_distance(p: Point, seg: OpenSegment) -> float:
    (ax, ay), (bx, by) = seg
    ux, uy = bx - ax, by - ay
    den = ux * ux + uy * uy
    if den == 0.0:
        return dist(p, seg[0])
    t = ((p[0] - ax) * ux + (p[1] - ay) * uy) / den
    t = min(1.0, max(0.0, t))
    return math.hypot(p[0] - (ax + t * ux), p[1] - (ay + t * uy))


def segment_distance(s: OpenSegment, t: OpenSegment) -> float:
    """Euclidean distance between two segments (0 when they cross)."""
    if segments_cross(s, t):
        return 0.0
    return min(
        point_segment_distance(s[0], t),
        point_segment_distance(s[1], t),
        point_segment_distance(t[0], s),
        point_segment_distance(t[1], s),
    )
