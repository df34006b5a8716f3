"""Acceptance suite: one test per criterion, one printed line per verdict.

Run with ``pytest tests/test_acceptance.py -s`` to see the verdict lines.
The randomized criteria share one batch of 500 trials (session fixture) so
oracle equivalence and the cost bound are measured on the same replays.
"""

import json
import random
import subprocess
import sys
import time

import pytest

from tautrope import engine, oracle
from tautrope.engine import EVENT_UNWRAPPED, EVENT_WRAPPED
from tautrope.geom import OpenSegment, pt
from tautrope.sceneio import Scene
from tautrope.tracing import refine_move

from trials import run_trial

S1_TEXT = (
    '{"obstacles":[[[0,1],[0,3]]],"anchor":[-2,0],'
    '"trace":[[2,0],[2,4],[-2,4],[-2,0.5]]}\n'
)


def _verdict(num, ok, detail):
    print(f"\nACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, f"criterion {num}: {detail}"


@pytest.fixture(scope="session")
def trial_batch():
    rng = random.Random(0xC0FFEE)
    t0 = time.time()
    results = [
        run_trial(rng, max_obstacles=15, max_steps=300, compare_oracle=True)
        for _ in range(500)
    ]
    elapsed = time.time() - t0
    return results, elapsed


def test_criterion_1_oracle_equivalence(trial_batch):
    results, elapsed = trial_batch
    mismatched = [i for i, r in enumerate(results) if r.mismatches]
    steps = sum(len(r.steps) for r in results)
    _verdict(
        1,
        not mismatched,
        f"500 trials, {steps} steps, engine == oracle at 1e-6 everywhere "
        f"({elapsed:.1f}s)",
    )


def test_criterion_2_worked_sequence():
    scene = Scene((OpenSegment(pt(0, 1), pt(0, 3)),))
    anchor = pt(-2, 0)
    forward = [pt(2, 0), pt(2, 4), pt(-2, 4), pt(-2, 0.5)]
    state = engine.new_session(scene, anchor, forward[0])
    wraps_seen = []
    for target in forward[1:]:
        state, event = engine.step(state, target)
        assert not event.is_error
        wraps_seen.append(state.wraps)
    ok = wraps_seen == [
        (pt(0, 1),),
        (pt(0, 1), pt(0, 3)),
        (pt(0, 1), pt(0, 3)),
    ]
    unwrapped = []
    for target in reversed(forward[:-1]):
        state, event = engine.step(state, target)
        assert not event.is_error
        if event.kind == EVENT_UNWRAPPED:
            unwrapped.append(event.point)
    ok = ok and unwrapped == [pt(0, 3), pt(0, 1)]
    ok = ok and state.wraps == () and state.a == forward[0]
    _verdict(2, ok, "S1 wrap sequence and LIFO unwind reproduce exactly")


def test_criterion_3_reversal():
    rng = random.Random(0xBEEF)
    failures = 0
    for _ in range(200):
        result = run_trial(rng, max_obstacles=10, max_steps=80, compare_oracle=False)
        state = engine.new_session(result.scene, result.anchor, result.steps[0])
        for wp in result.steps[1:]:
            state, event = engine.step(state, wp)
            assert not event.is_error
        for wp in reversed(result.steps[:-1]):
            state, event = engine.step(state, wp)
            assert not event.is_error
        if state.wraps != () or state.a != result.steps[0]:
            failures += 1
    _verdict(
        3,
        failures == 0,
        "200 forward-then-reverse replays end with no wraps at A(0), exactly",
    )


def test_criterion_4_cost_bound(trial_batch):
    results, _ = trial_batch
    worst = 0.0
    over = 0
    for r in results:
        budget = 2 * len(r.scene.obstacles) + 1
        worst = max(worst, r.max_predicate_calls / budget)
        if r.max_predicate_calls > budget:
            over += 1
    _verdict(
        4,
        over == 0,
        f"ray tests per step <= 2n+1 on every step (worst {worst:.2f} of budget)",
    )


def test_criterion_5_collinear_tie_break():
    scene = Scene(
        (
            OpenSegment(pt(0, 1), pt(0, 2)),
            OpenSegment(pt(0, 3), pt(0, 4)),
        ),
        allow_collinear=True,
    )
    state = engine.new_session(scene, pt(0, 0), pt(1, 5))
    state, event = engine.step(state, pt(-1, 5))
    ok = (
        event.kind == EVENT_WRAPPED
        and event.point == pt(0, 4)
        and state.wraps == (pt(0, 4),)
    )
    _verdict(5, ok, "crossing the shared ray line above y=4 wraps exactly (0,4)")


def test_criterion_6_single_cut_detection():
    scene = Scene(
        (
            OpenSegment(pt(0, 1), pt(0, 3)),
            OpenSegment(pt(1, 1), pt(1, 3)),
        )
    )
    anchor = pt(-2, 0)
    state = engine.new_session(scene, anchor, pt(3, 0))
    _, event = engine.step(state, pt(3, 4))
    ok = event.is_error and event.error_code == "single_cut_violation"

    trace = [pt(3, 0)]
    for target in (pt(3, 4), pt(-2, 4)):
        for wp in refine_move(scene, state, target):
            state, event = engine.step(state, wp)
            assert not event.is_error
            trace.append(wp)
        if target == pt(3, 4):
            ok = ok and engine.polyline(state) == [anchor, pt(1, 1), pt(3, 4)]
            ok = ok and oracle.paths_equal(
                engine.polyline(state),
                oracle.taut_path(scene, anchor, trace),
                1e-6,
            )
    ok = ok and engine.polyline(state) == [anchor, pt(1, 1), pt(1, 3), pt(-2, 4)]
    ok = ok and oracle.paths_equal(
        engine.polyline(state), oracle.taut_path(scene, anchor, trace), 1e-6
    )
    _verdict(
        6,
        ok,
        "coarse move rejected; refined replay matches the oracle-confirmed ropes",
    )


def test_criterion_7_determinism(tmp_path):
    s1 = tmp_path / "s1.json"
    s1.write_text(S1_TEXT)
    run_cmd = [sys.executable, "-m", "tautrope.cli", "run", str(s1), "--jsonl"]
    render_cmd = [sys.executable, "-m", "tautrope.cli", "render", str(s1)]
    runs = [
        subprocess.run(run_cmd, capture_output=True, check=True).stdout
        for _ in range(2)
    ]
    renders = [
        subprocess.run(render_cmd, capture_output=True, check=True).stdout
        for _ in range(2)
    ]
    script = "\n".join(
        json.dumps(m)
        for m in [
            {
                "op": "init",
                "scene": {"obstacles": [[[0, 1], [0, 3]]]},
                "anchor": [-2, 0],
                "start": [2, 0],
            },
            {"op": "move", "sid": "s1", "to": [2, 4]},
            {"op": "move", "sid": "s1", "to": [-2, 4]},
            {"op": "undo", "sid": "s1"},
            {"op": "state", "sid": "s1"},
        ]
    ) + "\n"
    serve_cmd = [sys.executable, "-m", "tautrope.cli", "serve", "--stdio"]
    protocol = [
        subprocess.run(
            serve_cmd, input=script.encode(), capture_output=True, check=True
        ).stdout
        for _ in range(2)
    ]
    ok = (
        runs[0] == runs[1]
        and renders[0] == renders[1]
        and protocol[0] == protocol[1]
        and runs[0]
        and renders[0]
        and protocol[0]
    )
    _verdict(7, ok, "run, render and stdio protocol replies are byte-identical")
