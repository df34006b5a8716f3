"""Wrap/unwrap state machine for a taut rope with one dragged endpoint.

The state holds the fixed anchor, the recency-ordered wrapping points, the
current unwrapping ray and the dragged endpoint position.  A step tests the
move segment against the current observer's ray fan plus the unwrapping
ray: crossing a fan ray appends that ray's source as a new wrapping point,
crossing the unwrapping ray removes the most recent one.

Steps are only meaningful for moves that keep both trace points mutually
visible (small-update) and cross at most one logical ray (single-cut);
violations are reported as error events and leave the state unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .geom import (
    DegenerateContact,
    OpenSegment,
    Point,
    Ray,
    on_open_segment,
    visible,
)
from .rayfan import (
    RayCrossing,
    crossed_rays,
    fan_rays,
    group_collinear,
    resolve_collinear_group,
)
from .sceneio import Scene

EVENT_NONE = "none"
EVENT_WRAPPED = "wrapped"
EVENT_UNWRAPPED = "unwrapped"
EVENT_ERROR = "error"

ERR_SINGLE_CUT = "single_cut_violation"
ERR_SMALL_UPDATE = "small_update_violation"
ERR_DEGENERATE = "degenerate_contact"


class RopeError(ValueError):
    """Session cannot be created from the given placement."""


class NotVisibleError(RopeError):
    """Anchor and start point are not mutually visible."""


class PlacementError(RopeError):
    """Anchor or start point lies on an obstacle interior."""


@dataclass(frozen=True)
class StepEvent:
    kind: str
    point: Optional[Point] = None
    error_code: Optional[str] = None

    @property
    def is_error(self) -> bool:
        return self.kind == EVENT_ERROR


@dataclass(frozen=True)
class RopeState:
    scene: Scene
    anchor: Point
    wraps: tuple[Point, ...]
    unwrap_ray: Optional[Ray]
    a: Point


def observer(state: RopeState) -> Point:
    """The sight point the dragged end is currently attached to."""
    return state.wraps[-1] if state.wraps else state.anchor


def polyline(state: RopeState) -> list[Point]:
    """The rope's realized shape: anchor, wrapping points, dragged end."""
    return [state.anchor, *state.wraps, state.a]


def new_session(scene: Scene, anchor: Point, start: Point) -> RopeState:
    for seg in scene.obstacles:
        if on_open_segment(anchor, seg) or on_open_segment(start, seg):
            raise PlacementError(
                "anchor and start must not lie on an obstacle interior"
            )
    if not visible(anchor, start, scene.obstacles):
        raise NotVisibleError(f"{anchor} and {start} are not mutually visible")
    return RopeState(scene, anchor, wraps=(), unwrap_ray=None, a=start)


def _error(state: RopeState, code: str) -> tuple[RopeState, StepEvent]:
    return state, StepEvent(EVENT_ERROR, error_code=code)


def step(state: RopeState, a_next: Point) -> tuple[RopeState, StepEvent]:
    """Advance the dragged end to a_next, detecting at most one event.

    On any error the returned state is the input state unchanged.  Besides
    the crossing-count check, the new last rope edge must stay visible
    after an event; a blocked edge means the move hid a second event
    behind the state change, which is a single-cut violation as well.
    """
    if a_next == state.a:
        return state, StepEvent(EVENT_NONE)
    obstacles = state.scene.obstacles
    for seg in obstacles:
        if on_open_segment(a_next, seg):
            return _error(state, ERR_SMALL_UPDATE)
    if not visible(state.a, a_next, obstacles):
        return _error(state, ERR_SMALL_UPDATE)

    fan = fan_rays(state.scene, observer(state))
    move = OpenSegment(state.a, a_next)
    try:
        crossings = crossed_rays(fan, state.unwrap_ray, move)
    except DegenerateContact:
        return _error(state, ERR_DEGENERATE)
    if not crossings:
        return replace(state, a=a_next), StepEvent(EVENT_NONE)

    unwrap_hits = [c for c in crossings if c.ray == state.unwrap_ray]
    fan_hits = [c for c in crossings if c.ray != state.unwrap_ray]
    groups = group_collinear(fan_hits)
    if len(groups) + (1 if unwrap_hits else 0) > 1:
        return _error(state, ERR_SINGLE_CUT)

    if unwrap_hits:
        popped = state.wraps[-1]
        new_wraps = state.wraps[:-1]
        if new_wraps:
            tip = new_wraps[-1]
            prev = new_wraps[-2] if len(new_wraps) > 1 else state.anchor
            new_ray: Optional[Ray] = Ray(
                tip, Point(tip[0] - prev[0], tip[1] - prev[1])
            )
        else:
            new_ray = None
        new_state = replace(state, wraps=new_wraps, unwrap_ray=new_ray, a=a_next)
        event = StepEvent(EVENT_UNWRAPPED, point=popped)
    else:
        group = groups[0]
        chosen: RayCrossing = (
            group[0]
            if len(group) == 1
            else resolve_collinear_group(group, observer(state))
        )
        new_state = replace(
            state,
            wraps=state.wraps + (chosen.ray.origin,),
            unwrap_ray=chosen.ray,
            a=a_next,
        )
        event = StepEvent(EVENT_WRAPPED, point=chosen.ray.origin)

    if not visible(observer(new_state), a_next, obstacles):
        return _error(state, ERR_SINGLE_CUT)
    return new_state, event
