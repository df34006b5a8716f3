"""Deterministic SVG rendering of a scene plus rope state.

Styling: obstacles solid, rope dashed, the current observer's fan rays
dash-dot, the unwrapping ray dotted, anchor a filled circle, the dragged
end a hollow circle.  Output is byte-deterministic: fixed element order and
all coordinates formatted to six decimal places.
"""

from __future__ import annotations

from typing import Optional

from . import engine
from .geom import Point, Ray
from .rayfan import fan_rays
from .sceneio import Scene

_STYLE = {
    "obstacle": 'stroke="#000000" stroke-width="{w}" fill="none"',
    "rope": 'stroke="#d62728" stroke-width="{w}" fill="none" stroke-dasharray="{d4} {d2}"',
    "fan": 'stroke="#888888" stroke-width="{wt}" fill="none" stroke-dasharray="{d4} {d1} {d1} {d1}"',
    "unwrap": 'stroke="#1f77b4" stroke-width="{wt}" fill="none" stroke-dasharray="{d1} {d1}"',
}


def _fmt(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _viewport_of(
    scene: Scene, rope: list[Point], viewport: Optional[tuple[float, float, float, float]]
) -> tuple[float, float, float, float]:
    if viewport is not None:
        return viewport
    xs = [p[0] for seg in scene.obstacles for p in seg] + [p[0] for p in rope]
    ys = [p[1] for seg in scene.obstacles for p in seg] + [p[1] for p in rope]
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    pad_x = 0.1 * (maxx - minx) or 1.0
    pad_y = 0.1 * (maxy - miny) or 1.0
    pad = max(pad_x, pad_y)
    return (minx - pad, miny - pad, maxx + pad, maxy + pad)


def _clip_ray(
    ray: Ray, box: tuple[float, float, float, float]
) -> Optional[tuple[Point, Point]]:
    """Visible portion of a ray inside the viewport rectangle."""
    (ox, oy), (dx, dy) = ray
    minx, miny, maxx, maxy = box
    k_lo, k_hi = 0.0, float("inf")
    for o, d, lo, hi in ((ox, dx, minx, maxx), (oy, dy, miny, maxy)):
        if d == 0.0:
            if o < lo or o > hi:
                return None
            continue
        k1, k2 = (lo - o) / d, (hi - o) / d
        if k1 > k2:
            k1, k2 = k2, k1
        k_lo, k_hi = max(k_lo, k1), min(k_hi, k2)
    if k_hi < k_lo:
        return None
    return (
        Point(ox + k_lo * dx, oy + k_lo * dy),
        Point(ox + k_hi * dx, oy + k_hi * dy),
    )


def render_svg(
    scene: Scene,
    state: engine.RopeState,
    show_gd: bool = True,
    show_unwrap_ray: bool = True,
    viewport: Optional[tuple[float, float, float, float]] = None,
) -> str:
    rope = engine.polyline(state)
    minx, miny, maxx, maxy = _viewport_of(scene, rope, viewport)
    w, h = maxx - minx, maxy - miny

    def sx(x: float) -> str:
        return _fmt(x - minx)

    def sy(y: float) -> str:
        return _fmt(maxy - y)

    def line(p: Point, q: Point, style: str) -> str:
        return (
            f'<line x1="{sx(p[0])}" y1="{sy(p[1])}" '
            f'x2="{sx(q[0])}" y2="{sy(q[1])}" {style}/>'
        )

    dim = max(w, h)
    style = {
        key: tpl.format(
            w=_fmt(dim * 0.008),
            wt=_fmt(dim * 0.004),
            d1=_fmt(dim * 0.01),
            d2=_fmt(dim * 0.02),
            d4=_fmt(dim * 0.04),
        )
        for key, tpl in _STYLE.items()
    }
    r_dot = dim * 0.015

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {_fmt(w)} {_fmt(h)}" width="640" '
        f'height="{_fmt(640.0 * h / w) if w else "640"}">',
    ]
    for seg in scene.obstacles:
        parts.append(line(seg.a, seg.b, style["obstacle"]))
    if show_gd:
        for ray in fan_rays(scene, engine.observer(state)).rays:
            clipped = _clip_ray(ray, (minx, miny, maxx, maxy))
            if clipped:
                parts.append(line(clipped[0], clipped[1], style["fan"]))
    if show_unwrap_ray and state.unwrap_ray is not None:
        clipped = _clip_ray(state.unwrap_ray, (minx, miny, maxx, maxy))
        if clipped:
            parts.append(line(clipped[0], clipped[1], style["unwrap"]))
    points = " ".join(f"{sx(p[0])},{sy(p[1])}" for p in rope)
    parts.append(f'<polyline points="{points}" {style["rope"]}/>')
    parts.append(
        f'<circle cx="{sx(state.anchor[0])}" cy="{sy(state.anchor[1])}" '
        f'r="{_fmt(r_dot)}" fill="#000000"/>'
    )
    parts.append(
        f'<circle cx="{sx(state.a[0])}" cy="{sy(state.a[1])}" '
        f'r="{_fmt(r_dot)}" fill="#ffffff" stroke="#000000" '
        f'stroke-width="{_fmt(dim * 0.004)}"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
