"""Per-observer ray fan and move/ray crossing classification.

For an observer point the fan holds one ray per obstacle endpoint, rooted
at the endpoint and directed away from the observer.  A move segment
crossing one of these rays is exactly the event "the sight line from the
observer swept past that endpoint", which is what drives rope wrapping.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional, Sequence

from .geom import (
    EPS_COL,
    DegenerateContact,
    OpenSegment,
    Point,
    Ray,
    dist,
    on_open_segment,
    orient,
    segment_ray_crossing,
)
from .sceneio import Scene


class DegenerateObserver(ValueError):
    """Observer sits on the open interior of an obstacle."""


class NonCollinearGroup(ValueError):
    """resolve_collinear_group was handed rays that do not share a line."""


class RayFan(NamedTuple):
    observer: Point
    rays: tuple[Ray, ...]


class RayCrossing(NamedTuple):
    ray: Ray
    point: Point
    seg_param: float


def fan_rays(scene: Scene, observer: Point) -> RayFan:
    """Build the fan for an observer, in obstacle/endpoint order.

    An endpoint coinciding with the observer contributes no ray, so the
    count is 2n, or 2n - 1 when the observer is itself an obstacle endpoint.
    """
    ox, oy = observer
    rays = []
    for seg in scene.obstacles:
        if on_open_segment(observer, seg):
            raise DegenerateObserver(
                f"observer {observer} lies inside obstacle {seg}"
            )
        for p in seg:
            if dist(p, observer) <= EPS_COL:
                continue
            rays.append(Ray(p, Point(p[0] - ox, p[1] - oy)))
    return RayFan(observer, tuple(rays))


def crossed_rays(
    fan: RayFan, extra: Optional[Ray], move: OpenSegment
) -> list[RayCrossing]:
    """All proper crossings of the move with fan rays plus the extra ray.

    Performs exactly len(fan.rays) + (1 if extra else 0) crossing tests.
    Degenerate contacts propagate to the caller.
    """
    out = []
    rays: tuple[Ray, ...] = fan.rays if extra is None else fan.rays + (extra,)
    for ray in rays:
        hit = segment_ray_crossing(move, ray)
        if hit is not None:
            out.append(RayCrossing(ray, hit.point, hit.seg_param))
    return out


def _rays_share_line(r1: Ray, r2: Ray) -> bool:
    (d1x, d1y) = r1.dir
    (d2x, d2y) = r2.dir
    cross = d1x * d2y - d1y * d2x
    if abs(cross) > EPS_COL * math.hypot(d1x, d1y) * math.hypot(d2x, d2y):
        return False
    head = Point(r1.origin[0] + d1x, r1.origin[1] + d1y)
    return orient(r1.origin, head, r2.origin) == 0


def group_collinear(crossings: Sequence[RayCrossing]) -> list[list[RayCrossing]]:
    """Partition crossings into groups of rays sharing one carrier line."""
    groups: list[list[RayCrossing]] = []
    for c in crossings:
        for g in groups:
            if _rays_share_line(g[0].ray, c.ray):
                g.append(c)
                break
        else:
            groups.append([c])
    return groups


def resolve_collinear_group(
    crossings: Sequence[RayCrossing], reference: Point
) -> RayCrossing:
    """Pick the crossing whose ray source is furthest from the reference.

    This is the tie-break for simultaneous crossings of rays sharing one
    carrier line (collinear obstacle stacks): the furthest source is the
    endpoint the rope actually catches on.
    """
    if not crossings:
        raise NonCollinearGroup("empty crossing group")
    first = crossings[0]
    for c in crossings[1:]:
        if not _rays_share_line(first.ray, c.ray):
            raise NonCollinearGroup(
                f"rays {first.ray} and {c.ray} are not collinear"
            )
    best = first
    best_d = dist(first.ray.origin, reference)
    for c in crossings[1:]:
        d = dist(c.ray.origin, reference)
        if d > best_d:
            best, best_d = c, d
    return best
