"""Scene documents: obstacle field + anchor + trace, with validation.

Canonical file format is a single JSON object::

    {"obstacles": [[[x,y],[x,y]], ...],
     "anchor": [x,y],
     "trace": [[x,y], ...],
     "allow_collinear": false}

``allow_collinear`` is optional and defaults to false; without it any two
obstacles lying on one carrier line are rejected, because simultaneous ray
crossings would otherwise be ambiguous (the engine's furthest-source
tie-break handles them only when the flag is set).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .geom import (
    EPS_COL,
    OpenSegment,
    Point,
    dist,
    is_finite_point,
    on_open_segment,
    orient,
    segments_cross,
)


class SceneError(ValueError):
    """Scene or trace fails a structural invariant."""


class SceneParseError(ValueError):
    """Document text is not a valid scene document."""


@dataclass(frozen=True)
class Scene:
    obstacles: tuple[OpenSegment, ...]
    allow_collinear: bool = False

    def __post_init__(self) -> None:
        validate_obstacles(self.obstacles, self.allow_collinear)


@dataclass(frozen=True)
class SceneDocument:
    scene: Scene
    anchor: Point
    trace: tuple[Point, ...]


def _lines_coincide(s: OpenSegment, t: OpenSegment) -> bool:
    return orient(s.a, s.b, t.a) == 0 and orient(s.a, s.b, t.b) == 0


def _spans_overlap(s: OpenSegment, t: OpenSegment) -> bool:
    """1D span overlap of two segments known to share a carrier line."""
    (ax, ay), (bx, by) = s
    ux, uy = bx - ax, by - ay
    den = ux * ux + uy * uy
    params = sorted(
        ((p[0] - ax) * ux + (p[1] - ay) * uy) / den for p in t
    )
    return params[1] >= 0.0 and params[0] <= 1.0


def validate_obstacles(
    obstacles: Sequence[OpenSegment], allow_collinear: bool
) -> None:
    for i, seg in enumerate(obstacles):
        if not (is_finite_point(seg.a) and is_finite_point(seg.b)):
            raise SceneError(f"obstacle {i} has a non-finite endpoint")
        if dist(seg.a, seg.b) <= EPS_COL:
            raise SceneError(f"obstacle {i} is degenerate (zero length)")
    for i in range(len(obstacles)):
        for j in range(i + 1, len(obstacles)):
            s, t = obstacles[i], obstacles[j]
            if segments_cross(s, t):
                raise SceneError(f"obstacles {i} and {j} cross")
            for p in s:
                for q in t:
                    if dist(p, q) <= EPS_COL:
                        raise SceneError(
                            f"obstacles {i} and {j} share an endpoint"
                        )
            if _lines_coincide(s, t):
                if not allow_collinear:
                    raise SceneError(
                        f"obstacles {i} and {j} are collinear; "
                        "set allow_collinear to permit this"
                    )
                if _spans_overlap(s, t):
                    raise SceneError(
                        f"collinear obstacles {i} and {j} overlap"
                    )


def validate_trace_points(scene: Scene, points: Sequence[Point]) -> None:
    if len(points) < 1:
        raise SceneError("trace must contain at least one point")
    for i, p in enumerate(points):
        if not is_finite_point(p):
            raise SceneError(f"trace point {i} is not finite")
        for k, seg in enumerate(scene.obstacles):
            if on_open_segment(p, seg):
                raise SceneError(
                    f"trace point {i} lies on the interior of obstacle {k}"
                )


def _as_point(value: object, what: str) -> Point:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in value)
    ):
        raise SceneParseError(f"{what} must be a [x, y] pair, got {value!r}")
    p = Point(float(value[0]), float(value[1]))
    if not is_finite_point(p):
        raise SceneParseError(f"{what} must be finite, got {value!r}")
    return p


def parse_scene(text: str) -> SceneDocument:
    """Parse and validate a scene document from JSON text."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneParseError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return scene_document_from_obj(raw)


def scene_document_from_obj(raw: object) -> SceneDocument:
    if not isinstance(raw, dict):
        raise SceneParseError("document must be a JSON object")
    unknown = set(raw) - {"obstacles", "anchor", "trace", "allow_collinear"}
    if unknown:
        raise SceneParseError(f"unknown keys: {sorted(unknown)}")
    for key in ("obstacles", "anchor", "trace"):
        if key not in raw:
            raise SceneParseError(f"missing key {key!r}")
    if not isinstance(raw["obstacles"], list):
        raise SceneParseError("obstacles must be an array")
    obstacles = []
    for i, pair in enumerate(raw["obstacles"]):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise SceneParseError(f"obstacle {i} must be [[x,y],[x,y]]")
        obstacles.append(
            OpenSegment(
                _as_point(pair[0], f"obstacle {i} endpoint 0"),
                _as_point(pair[1], f"obstacle {i} endpoint 1"),
            )
        )
    allow_collinear = raw.get("allow_collinear", False)
    if not isinstance(allow_collinear, bool):
        raise SceneParseError("allow_collinear must be a boolean")
    anchor = _as_point(raw["anchor"], "anchor")
    if not isinstance(raw["trace"], list) or not raw["trace"]:
        raise SceneParseError("trace must be a non-empty array of points")
    trace = tuple(
        _as_point(p, f"trace point {i}") for i, p in enumerate(raw["trace"])
    )
    scene = Scene(tuple(obstacles), allow_collinear)
    validate_trace_points(scene, trace)
    return SceneDocument(scene, anchor, trace)


def serialize_scene(doc: SceneDocument) -> str:
    """Canonical textual form; numbers use shortest round-trip repr."""
    obj: dict = {
        "obstacles": [
            [[s.a.x, s.a.y], [s.b.x, s.b.y]] for s in doc.scene.obstacles
        ],
        "anchor": [doc.anchor.x, doc.anchor.y],
        "trace": [[p.x, p.y] for p in doc.trace],
    }
    if doc.scene.allow_collinear:
        obj["allow_collinear"] = True
    return json.dumps(obj, separators=(",", ":")) + "\n"


def load_scene(path: str) -> SceneDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_scene(fh.read())
