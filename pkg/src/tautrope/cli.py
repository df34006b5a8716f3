"""Command-line interface.

Subcommands: ``validate`` checks a trace against the step conditions,
``run`` replays a trace printing one record per step, ``render`` draws the
state after a given step as SVG, ``compare`` checks every step against the
rubber-band oracle, and ``serve`` starts the session protocol.

Exit codes: 0 success, 1 file or parse problems, 2 usage, 3 a condition
violation or oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import engine, oracle, svg
from .geom import Point, ray_test_count, reset_ray_test_count
from .sceneio import SceneDocument, SceneError, SceneParseError, load_scene
from .tracing import Trace, UnrefinableError, refine_move, validate_trace

EXIT_OK = 0
EXIT_FILE = 1
EXIT_USAGE = 2
EXIT_VIOLATION = 3


def _load(path: str) -> SceneDocument:
    try:
        return load_scene(path)
    except OSError as exc:
        raise SystemExit(f"cannot read {path}: {exc}") from exc
    except (SceneParseError, SceneError) as exc:
        raise SystemExit(f"{path}: {exc}") from exc


def _pt_json(p: Point) -> list[float]:
    return [p[0], p[1]]


def _event_json(event: engine.StepEvent) -> dict:
    obj: dict = {"kind": event.kind}
    if event.point is not None:
        obj["point"] = _pt_json(event.point)
    if event.error_code is not None:
        obj["error_code"] = event.error_code
    return obj


def _replay_points(doc: SceneDocument, refine: bool) -> list[Point]:
    """Trace points to feed the engine, optionally refined move by move."""
    if not refine:
        return list(doc.trace)
    state = engine.new_session(doc.scene, doc.anchor, doc.trace[0])
    points = [doc.trace[0]]
    for target in doc.trace[1:]:
        waypoints = refine_move(doc.scene, state, target)
        for wp in waypoints:
            state, event = engine.step(state, wp)
            if event.is_error:
                raise UnrefinableError(f"refined step to {wp} failed")
        points.extend(waypoints)
    return points


def cmd_run(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    try:
        points = _replay_points(doc, args.refine)
    except (engine.RopeError, UnrefinableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    state = engine.new_session(doc.scene, doc.anchor, points[0])
    status = EXIT_OK
    for i, target in enumerate(points[1:], start=1):
        reset_ray_test_count()
        state, event = engine.step(state, target)
        calls = ray_test_count()
        record = {
            "step": i,
            "a": _pt_json(state.a),
            "event": _event_json(event),
            "rope": [_pt_json(p) for p in engine.polyline(state)],
            "predicate_calls": calls,
        }
        if args.jsonl:
            print(json.dumps(record, separators=(",", ":")))
        else:
            rope = " ".join(f"({p[0]:g},{p[1]:g})" for p in engine.polyline(state))
            print(
                f"step {i:4d}  a=({state.a[0]:g},{state.a[1]:g})  "
                f"event={event.kind:<9s}  calls={calls:3d}  rope={rope}"
            )
        if event.is_error:
            print(f"error: step {i}: {event.error_code}", file=sys.stderr)
            return EXIT_VIOLATION
    return status


def cmd_validate(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    mode = "strict" if args.strict else "engine"
    report = validate_trace(doc.scene, doc.anchor, Trace(doc.trace), mode=mode)
    for r in report.records:
        extra = "" if r.crossings_all_gds is None else f"  all_gds={r.crossings_all_gds}"
        print(
            f"step {r.index:4d}  small_update={'ok' if r.small_update_ok else 'VIOLATION'}"
            f"  crossings={r.crossings_current_gd}{extra}  verdict={r.verdict}"
        )
    print(f"result: {'ok' if report.ok else 'VIOLATION'} ({mode} mode)")
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_render(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    steps = len(doc.trace) - 1
    k = steps if args.step is None else args.step
    if k < 0 or k > steps:
        print(f"error: step {k} outside 0..{steps}", file=sys.stderr)
        return EXIT_USAGE
    state = engine.new_session(doc.scene, doc.anchor, doc.trace[0])
    for target in doc.trace[1 : k + 1]:
        state, event = engine.step(state, target)
        if event.is_error:
            print(f"error: {event.error_code}", file=sys.stderr)
            return EXIT_VIOLATION
    text = svg.render_svg(
        doc.scene,
        state,
        show_gd=not args.no_gd,
        show_unwrap_ray=not args.no_unwrap,
    )
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    try:
        points = _replay_points(doc, args.refine)
    except (engine.RopeError, UnrefinableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    state = engine.new_session(doc.scene, doc.anchor, points[0])
    taut = [doc.anchor, points[0]]
    status = EXIT_OK
    for i, target in enumerate(points[1:], start=1):
        state, event = engine.step(state, target)
        if event.is_error:
            print(f"step {i:4d}  FAIL (engine: {event.error_code})")
            return EXIT_VIOLATION
        taut = oracle.extend_taut(doc.scene, taut, target)
        same = oracle.paths_equal(engine.polyline(state), taut, 1e-6)
        print(f"step {i:4d}  {'PASS' if same else 'FAIL'}")
        if not same:
            status = EXIT_VIOLATION
    return status


def cmd_serve(args: argparse.Namespace) -> int:
    from . import service

    if args.stdio:
        service.serve_stdio()
        return EXIT_OK
    if args.port is None:
        print("error: provide --port or --stdio", file=sys.stderr)
        return EXIT_USAGE
    service.serve_socket(args.port, static_dir=args.static)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tautrope",
        description="taut 2D rope simulation among open line-segment obstacles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="replay a trace, one record per step")
    p.add_argument("file")
    p.add_argument("--refine", action="store_true", help="refine coarse moves first")
    p.add_argument("--jsonl", action="store_true", help="one JSON record per line")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("validate", help="check a trace against the step conditions")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true", help="also check all observers' fans")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("render", help="render the state after step K as SVG")
    p.add_argument("file")
    p.add_argument("--step", type=int, default=None, help="default: last step")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--no-gd", action="store_true", help="hide the ray fan")
    p.add_argument("--no-unwrap", action="store_true", help="hide the unwrapping ray")
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("compare", help="check every step against the rubber-band oracle")
    p.add_argument("file")
    p.add_argument("--refine", action="store_true")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("serve", help="serve the session protocol")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--stdio", action="store_true", help="newline-delimited stdio mode")
    p.add_argument("--static", default=None, help="directory of studio assets to serve")
    p.set_defaults(fn=cmd_serve)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(f"error: {exc.code}", file=sys.stderr)
            return EXIT_FILE
        raise
    except engine.RopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
