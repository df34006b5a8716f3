"""Trace validation and coarse-move refinement.

A UI drag or a hand-written trace step may cross several rays at once; the
engine refuses such moves.  ``refine_move`` bisects a move until every
substep carries at most one event, replaying the engine along the way.  A
substep with an event is accepted only if, retested against the post-event
state, the move crosses exactly that event's mirror ray: an event changes
the observer mid-move, and any other crossing either hides a second event
behind the state change or would break the reversed replay.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from . import engine
from .geom import (
    DegenerateContact,
    OpenSegment,
    Point,
    Ray,
    on_open_segment,
    visible,
)
from .rayfan import crossed_rays, fan_rays, group_collinear
from .sceneio import Scene

DEFAULT_MAX_DEPTH = 40


class UnrefinableError(ValueError):
    """Bisection cannot make the move satisfy the step conditions."""


@dataclass(frozen=True)
class Trace:
    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        if len(self.points) < 1:
            raise ValueError("a trace needs at least one point")


@dataclass(frozen=True)
class StepRecord:
    index: int
    small_update_ok: bool
    crossings_current_gd: int
    crossings_all_gds: Optional[int]
    verdict: str


@dataclass(frozen=True)
class ValidationReport:
    mode: str
    records: tuple[StepRecord, ...]
    ok: bool


def validate_trace(
    scene: Scene, anchor: Point, trace: Trace, mode: str = "engine"
) -> ValidationReport:
    """Replay a trace and record, per step, how it fares against the
    small-update and single-cut conditions.

    Engine mode counts logical crossings of the current observer's fan plus
    the unwrapping ray.  Strict mode additionally counts crossings over the
    fans of every obstacle endpoint taken as observer, the literal reading
    of the single-cut condition; it is O(n^2) per step and rejects some
    moves the engine handles fine.  Violations become report records, not
    exceptions; after a failed step the replay advances the endpoint
    without touching the wraps, to keep one record per trace step.
    """
    if mode not in ("engine", "strict"):
        raise ValueError(f"unknown mode {mode!r}")
    state = engine.new_session(scene, anchor, trace.points[0])
    records = []
    for i in range(len(trace.points) - 1):
        a_next = trace.points[i + 1]
        small_ok = _small_update_ok(scene, state.a, a_next)
        current = _logical_crossings(scene, state, a_next)
        all_gds = _all_fan_crossings(scene, state.a, a_next) if mode == "strict" else None
        state, event = engine.step(state, a_next)
        if event.is_error:
            verdict = event.error_code or "error"
            state = replace(state, a=a_next)
        elif mode == "strict" and all_gds is not None and all_gds > 1:
            verdict = "single_cut_violation"
        else:
            verdict = "ok"
        records.append(
            StepRecord(i, small_ok, current, all_gds, verdict)
        )
    ok = all(r.verdict == "ok" for r in records)
    return ValidationReport(mode, tuple(records), ok)


def _small_update_ok(scene: Scene, a: Point, b: Point) -> bool:
    if any(on_open_segment(b, seg) for seg in scene.obstacles):
        return False
    return visible(a, b, scene.obstacles)


def _logical_crossings(scene: Scene, state: engine.RopeState, a_next: Point) -> int:
    if a_next == state.a:
        return 0
    move = OpenSegment(state.a, a_next)
    try:
        fan = fan_rays(scene, engine.observer(state))
        crossings = crossed_rays(fan, state.unwrap_ray, move)
    except (DegenerateContact, ValueError):
        return -1
    unwrap_hits = [c for c in crossings if c.ray == state.unwrap_ray]
    groups = group_collinear([c for c in crossings if c.ray != state.unwrap_ray])
    return len(groups) + (1 if unwrap_hits else 0)


def _all_fan_crossings(scene: Scene, a: Point, a_next: Point) -> int:
    """Raw crossing count over the fans of every obstacle endpoint."""
    if a_next == a:
        return 0
    move = OpenSegment(a, a_next)
    total = 0
    for seg in scene.obstacles:
        for obs_pt in seg:
            try:
                fan = fan_rays(scene, obs_pt)
                total += len(crossed_rays(fan, None, move))
            except (DegenerateContact, ValueError):
                return -1
    return total


def refine_move(
    scene: Scene,
    state: engine.RopeState,
    target: Point,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> list[Point]:
    """Waypoints from state.a to target that the engine accepts step by step.

    Midpoint bisection, replaying engine state along the way.  Raises
    UnrefinableError when the depth budget runs out, which happens when the
    move passes through a genuinely degenerate point (an obstacle endpoint,
    an obstacle interior, or two events at the same spot).
    """
    if target == state.a:
        return []
    if any(on_open_segment(target, seg) for seg in scene.obstacles):
        raise UnrefinableError(f"target {target} lies on an obstacle interior")
    if not visible(state.a, target, scene.obstacles):
        # bisection cannot help a segment that crosses an obstacle
        raise UnrefinableError(f"move {state.a} -> {target} crosses an obstacle")
    waypoints: list[Point] = []

    def go(st: engine.RopeState, frm: Point, to: Point, depth: int) -> engine.RopeState:
        accepted, st_next = _try_substep(scene, st, to)
        if accepted:
            waypoints.append(to)
            return st_next
        if depth <= 0:
            raise UnrefinableError(
                f"move {state.a} -> {target} not refinable within depth budget"
            )
        mid = Point((frm[0] + to[0]) / 2.0, (frm[1] + to[1]) / 2.0)
        if mid == frm or mid == to:
            raise UnrefinableError("bisection interval collapsed")
        st_mid = go(st, frm, mid, depth - 1)
        return go(st_mid, mid, to, depth - 1)

    go(state, state.a, target, max_depth)
    return waypoints


def _try_substep(
    scene: Scene, state: engine.RopeState, to: Point
) -> tuple[bool, engine.RopeState]:
    new_state, event = engine.step(state, to)
    if event.is_error:
        return False, state
    if event.kind in (engine.EVENT_WRAPPED, engine.EVENT_UNWRAPPED):
        if not _mirror_clean(scene, state, new_state, event, to):
            return False, state
    return True, new_state


def _mirror_clean(
    scene: Scene,
    pre: engine.RopeState,
    post: engine.RopeState,
    event: engine.StepEvent,
    to: Point,
) -> bool:
    """The whole move, retested against the post-event fan and unwrapping
    ray, must cross exactly the event's own mirror ray.

    A wrap's mirror is the new unwrapping ray; an unwrap's mirror is the
    ray of the popped point, which reappears in the new observer's fan.
    Any other crossing means a second event hides behind the state change,
    and also that the reversed substep would not undo this one.
    """
    mirror: Optional[Ray] = (
        post.unwrap_ray if event.kind == engine.EVENT_WRAPPED else pre.unwrap_ray
    )
    try:
        fan = fan_rays(scene, engine.observer(post))
        hits = crossed_rays(fan, post.unwrap_ray, OpenSegment(pre.a, to))
    except (DegenerateContact, ValueError):
        return False
    return len(hits) == 1 and hits[0].ray == mirror
