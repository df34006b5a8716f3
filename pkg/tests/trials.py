"""Randomized scene/trace generation and engine-vs-oracle trial running.

Scenes are kept in general position: obstacles pairwise non-collinear with
at least MIN_CLEARANCE between any two, and all special points at a small
comfort distance from obstacle interiors, so tolerance-band effects cannot
blur the expected events.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from tautrope import engine, oracle
from tautrope.geom import (
    OpenSegment,
    Point,
    point_segment_distance,
    pt,
    ray_test_count,
    reset_ray_test_count,
    segment_distance,
    visible,
)
from tautrope.sceneio import Scene, SceneError
from tautrope.tracing import UnrefinableError, refine_move

BOX = 10.0
MIN_CLEARANCE = 1e-3
POINT_CLEARANCE = 1e-4


def random_scene(rng: random.Random, max_obstacles: int = 15) -> Scene:
    n = rng.randint(1, max_obstacles)
    while True:
        obstacles: list[OpenSegment] = []
        attempts = 0
        while len(obstacles) < n and attempts < 400:
            attempts += 1
            ax = rng.uniform(-BOX, BOX)
            ay = rng.uniform(-BOX, BOX)
            angle = rng.uniform(0.0, 2.0 * math.pi)
            length = rng.uniform(0.5, 4.0)
            seg = OpenSegment(
                pt(ax, ay),
                pt(ax + length * math.cos(angle), ay + length * math.sin(angle)),
            )
            if all(segment_distance(seg, o) >= MIN_CLEARANCE for o in obstacles):
                obstacles.append(seg)
        try:
            return Scene(tuple(obstacles))
        except SceneError:
            continue  # astronomically unlikely collinear pair; roll again


def random_free_point(rng: random.Random, scene: Scene) -> Point:
    while True:
        p = pt(rng.uniform(-1.2 * BOX, 1.2 * BOX), rng.uniform(-1.2 * BOX, 1.2 * BOX))
        if all(
            point_segment_distance(p, seg) >= POINT_CLEARANCE
            for seg in scene.obstacles
        ):
            return p


def random_visible_pair(rng: random.Random, scene: Scene) -> tuple[Point, Point]:
    while True:
        a = random_free_point(rng, scene)
        b = random_free_point(rng, scene)
        if a != b and visible(a, b, scene.obstacles):
            return a, b


def random_target(rng: random.Random, scene: Scene, current: Point) -> Point:
    while True:
        angle = rng.uniform(0.0, 2.0 * math.pi)
        length = rng.uniform(0.1, 3.0)
        p = pt(
            current[0] + length * math.cos(angle),
            current[1] + length * math.sin(angle),
        )
        if abs(p[0]) > 1.2 * BOX or abs(p[1]) > 1.2 * BOX:
            continue
        if all(
            point_segment_distance(p, seg) >= POINT_CLEARANCE
            for seg in scene.obstacles
        ):
            return p


@dataclass
class TrialResult:
    scene: Scene
    anchor: Point
    steps: list[Point] = field(default_factory=list)
    max_predicate_calls: int = 0
    max_wraps: int = 0
    mismatches: list[int] = field(default_factory=list)


def run_trial(
    rng: random.Random,
    max_obstacles: int = 15,
    max_steps: int = 300,
    compare_oracle: bool = True,
) -> TrialResult:
    """Drive a random refined trace, comparing engine and oracle per step."""
    scene = random_scene(rng, max_obstacles)
    anchor, start = random_visible_pair(rng, scene)
    state = engine.new_session(scene, anchor, start)
    result = TrialResult(scene, anchor, steps=[start])
    taut = [anchor, start]

    while len(result.steps) < max_steps:
        target = random_target(rng, scene, state.a)
        if not visible(state.a, target, scene.obstacles):
            continue
        try:
            waypoints = refine_move(scene, state, target)
        except UnrefinableError:
            continue
        if len(result.steps) + len(waypoints) > max_steps:
            break
        for wp in waypoints:
            reset_ray_test_count()
            state, event = engine.step(state, wp)
            calls = ray_test_count()
            assert not event.is_error, (
                f"refined step unexpectedly failed: {event} at {wp}"
            )
            result.max_predicate_calls = max(result.max_predicate_calls, calls)
            result.max_wraps = max(result.max_wraps, len(state.wraps))
            result.steps.append(wp)
            if compare_oracle:
                taut = oracle.extend_taut(scene, taut, wp)
                if not oracle.paths_equal(engine.polyline(state), taut, 1e-6):
                    result.mismatches.append(len(result.steps) - 1)
    return result
