"""Rubber-band tightening oracle, independent of the event-driven engine.

The taut shape of a slack path is computed by repeatedly relaxing interior
vertices: a vertex whose neighbor triangle touches no obstacle is deleted,
otherwise it is replaced by the convex chain of obstacle endpoints caught
inside the triangle.  The fixed point is the shortest path in the homotopy
class of the input.  This module shares nothing with the engine beyond the
base geometric predicates; the whole point is that it fails independently.
"""

from __future__ import annotations

from typing import Sequence

from .geom import EPS_COL, OpenSegment, Point, orient
from .sceneio import Scene


class NonConvergence(RuntimeError):
    """Tightening did not reach a fixed point within the iteration cap."""


def paths_equal(p: Sequence[Point], q: Sequence[Point], tol: float) -> bool:
    """Same vertex count and pointwise max-norm distance within tol."""
    if len(p) != len(q):
        return False
    for a, b in zip(p, q):
        if abs(a[0] - b[0]) > tol or abs(a[1] - b[1]) > tol:
            return False
    return True


def taut_path(scene: Scene, anchor: Point, trace: Sequence[Point]) -> list[Point]:
    """Tighten [anchor, trace...] to the shortest homotopic path.

    Interior vertices of the result are obstacle endpoints.  Raises
    NonConvergence past the iteration cap, which signals a degenerate
    input rather than a bug in the caller.
    """
    path = [anchor, *trace]
    cap = 10 * (len(trace) + 2 * len(scene.obstacles)) + 10
    return _fixed_point(path, scene.obstacles, cap)


def extend_taut(scene: Scene, path: Sequence[Point], target: Point) -> list[Point]:
    """Tighten an already-taut path extended by one free-space segment."""
    if path and target == path[-1]:
        return list(path)
    cap = 10 * (len(path) + 1 + 2 * len(scene.obstacles)) + 10
    return _fixed_point([*path, target], scene.obstacles, cap)


def _fixed_point(
    path: list[Point], obstacles: Sequence[OpenSegment], cap: int
) -> list[Point]:
    partner: dict[Point, Point] = {}
    for seg in obstacles:
        partner[seg[0]] = seg[1]
        partner[seg[1]] = seg[0]
    path = _dedupe(path)
    for _ in range(cap):
        if not _sweep(path, obstacles, partner):
            return path
    raise NonConvergence(
        f"no fixed point after {cap} passes; input is degenerate"
    )


def _dedupe(path: list[Point]) -> list[Point]:
    out = [path[0]]
    for p in path[1:]:
        if p != out[-1]:
            out.append(p)
    return out


def _sweep(
    path: list[Point],
    obstacles: Sequence[OpenSegment],
    partner: dict[Point, Point],
) -> bool:
    changed = False
    i = 1
    while i < len(path) - 1:
        if _relax(path, i, obstacles, partner):
            changed = True
            i = max(1, i - 1)
        else:
            i += 1
    return changed


def _relax(
    path: list[Point],
    i: int,
    obstacles: Sequence[OpenSegment],
    partner: dict[Point, Point],
) -> bool:
    u, v, w = path[i - 1], path[i], path[i + 1]
    if v == u or v == w:
        del path[i]
        return True
    if u == w or orient(u, v, w) == 0:
        return _relax_collinear(path, i, obstacles, u, v, w)
    blocked = [seg for seg in obstacles if _interior_blocks(u, v, w, seg)]
    if not blocked:
        del path[i]
        return True
    chain = _repair_chain(blocked, u, v, w)
    if chain == [v]:
        if not _flush_hook_releases(path, i, partner):
            return False
        # the rope slides off the tip; redo the repair without the
        # obstacle that lies flush along the rope edge
        rest = [seg for seg in blocked if v not in seg]
        if not rest:
            del path[i]
            return True
        chain = _repair_chain(rest, u, v, w)
        if chain == [v]:
            return False
    path[i : i + 1] = chain
    return True


def _repair_chain(
    blocked: Sequence[OpenSegment], u: Point, v: Point, w: Point
) -> list[Point]:
    pts = {u, w}
    for seg in blocked:
        for e in seg:
            if _in_closed_tri(u, v, w, e):
                pts.add(e)
    return _hull_chain(sorted(pts), u, w, v)


def _flush_hook_releases(
    path: list[Point], i: int, partner: dict[Point, Point]
) -> bool:
    """Decide whether a rope bend doubled flush over an obstacle tip opens.

    When the edge into (or out of) vertex v runs exactly along v's own
    obstacle, the local triangle cannot tell a held hook from a released
    one; the winding direction does.  The hook holds while the turn at v
    matches the turn with which the rope wound onto the obstacle, and
    opens when the turn has flipped to the opposite side.
    """
    u, v, w = path[i - 1], path[i], path[i + 1]
    mate = partner.get(v)
    if mate is None:
        return False
    s_v = orient(u, v, w)
    if s_v == 0:
        return False
    if mate == u:
        # walk back through the flush run (zero turns, e.g. a doubled
        # spike around the obstacle's far end) to the onset turn
        for j in range(i - 1, 0, -1):
            s = orient(path[j - 1], path[j], path[j + 1])
            if s != 0:
                return s != s_v
        return False
    if mate == w:
        for j in range(i + 1, len(path) - 1):
            s = orient(path[j - 1], path[j], path[j + 1])
            if s != 0:
                return s != s_v
        return False
    return False


def _relax_collinear(
    path: list[Point],
    i: int,
    obstacles: Sequence[OpenSegment],
    u: Point,
    v: Point,
    w: Point,
) -> bool:
    """Relax a vertex whose neighbors are collinear with it.

    A pass-through vertex (v between u and w) never pins anything.  An
    out-and-back spike doubles the rope over the segment beyond the fold;
    it contracts freely unless a collinear obstacle lies under the doubled
    part, in which case the tip retracts to the furthest such obstacle
    endpoint: the rope stays looped over that obstacle's end (winding).
    """
    dx, dy = v[0] - u[0], v[1] - u[1]
    den = dx * dx + dy * dy
    t_w = ((w[0] - u[0]) * dx + (w[1] - u[1]) * dy) / den
    if t_w >= 1.0:
        del path[i]
        return True
    fold = max(0.0, t_w)
    pinned = None
    pinned_t = fold
    for seg in obstacles:
        if orient(u, v, seg[0]) != 0 or orient(u, v, seg[1]) != 0:
            continue
        for e in seg:
            t_e = ((e[0] - u[0]) * dx + (e[1] - u[1]) * dy) / den
            if pinned_t < t_e <= 1.0:
                pinned, pinned_t = e, t_e
    if pinned is None:
        del path[i]
        return True
    if pinned == v:
        return False
    path[i] = pinned
    return True


def _in_closed_tri(u: Point, v: Point, w: Point, p: Point) -> bool:
    s1 = orient(u, v, p)
    s2 = orient(v, w, p)
    s3 = orient(w, u, p)
    return (s1 >= 0 and s2 >= 0 and s3 >= 0) or (s1 <= 0 and s2 <= 0 and s3 <= 0)


def _interior_blocks(u: Point, v: Point, w: Point, seg: OpenSegment) -> bool:
    """True iff the segment's open interior meets the closed triangle u,v,w.

    Contact only at a segment endpoint (e.g. an obstacle hanging off the
    pivot vertex, outside the triangle) does not block: endpoints are free
    space, so the sweep of v onto the u-w chord crosses nothing there.
    Computed by clipping the segment's parameter range against the three
    half-planes and asking for positive overlap with the open interior.
    """
    s = orient(u, v, w)
    (ax, ay), (bx, by) = seg
    dxs, dys = bx - ax, by - ay
    lo, hi = 0.0, 1.0
    for p, q in ((u, v), (v, w), (w, u)):
        ex, ey = q[0] - p[0], q[1] - p[1]
        c0 = ex * (ay - p[1]) - ey * (ax - p[0])
        c1 = ex * dys - ey * dxs
        if s < 0:
            c0, c1 = -c0, -c1
        if abs(c1) <= EPS_COL:
            if c0 < -EPS_COL:
                return False
            continue
        t = -c0 / c1
        if c1 > 0.0:
            lo = max(lo, t)
        else:
            hi = min(hi, t)
    return min(hi, 1.0) - max(lo, 0.0) > 1e-12


def _convex_hull(pts: list[Point]) -> list[Point]:
    """Strict convex hull (no collinear mid-edge vertices), CCW order."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _hull_chain(pts: list[Point], u: Point, w: Point, v: Point) -> list[Point]:
    """Replacement vertices for v: the hull walk from u to w on v's side."""
    hull = _convex_hull(pts)
    if len(hull) <= 2:
        # everything is collinear with the u-w line: keep the points that
        # pin the path between u and w, in walking order
        return _collinear_chain(pts, u, w)
    if u not in hull or w not in hull:
        return [v]  # numerically degenerate; keep the vertex as-is
    iu = hull.index(u)
    iw = hull.index(w)
    forward = _walk(hull, iu, iw)
    backward = list(reversed(_walk(hull, iw, iu)))
    # all caught endpoints lie on v's side of the u-w line, so exactly one
    # of the two walks carries the interior vertices
    longer, shorter = (
        (forward, backward) if len(forward) >= len(backward) else (backward, forward)
    )
    interior = longer[1:-1]
    side = orient(u, w, v)
    if any(orient(u, w, p) * side < 0 for p in interior):
        interior = shorter[1:-1]
    return interior


def _walk(hull: list[Point], i: int, j: int) -> list[Point]:
    out = [hull[i]]
    k = i
    while k != j:
        k = (k + 1) % len(hull)
        out.append(hull[k])
    return out


def _collinear_chain(pts: list[Point], u: Point, w: Point) -> list[Point]:
    ux, uy = w[0] - u[0], w[1] - u[1]
    den = ux * ux + uy * uy
    if den == 0.0:
        return []
    inner = []
    for p in pts:
        t = ((p[0] - u[0]) * ux + (p[1] - u[1]) * uy) / den
        if 0.0 < t < 1.0 and p != u and p != w:
            inner.append((t, p))
    inner.sort()
    return [p for _, p in inner]
