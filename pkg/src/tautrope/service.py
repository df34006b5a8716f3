"""Stateful session protocol: one JSON object per message, both directions.

Operations: ``init`` creates a session from a scene, ``move`` refines and
applies a drag target, ``state`` snapshots, ``reset`` reinitializes and
``undo`` reverts the last move by replaying history.  Replies are built
with a fixed key order and shortest-round-trip floats, so a fixed message
script yields byte-identical responses.

Transports: newline-delimited JSON on stdin/stdout (headless testing) and
a WebSocket endpoint carrying one message per text frame; payloads are
identical in both modes.

No ``from __future__ import annotations`` here: FastAPI must evaluate the
WebSocket parameter annotation, which is imported lazily in build_app.
"""

import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import engine
from .geom import Point, Ray, visible
from .rayfan import fan_rays
from .sceneio import Scene, SceneError, SceneParseError, scene_document_from_obj
from .tracing import UnrefinableError, refine_move

ERR_UNKNOWN_SESSION = "unknown_session"
ERR_NOT_VISIBLE = "not_visible"
ERR_SINGLE_CUT = "single_cut_violation"
ERR_UNREFINABLE = "unrefinable"
ERR_PARSE = "parse_error"


@dataclass
class Session:
    sid: str
    scene: Scene
    anchor: Point
    start: Point
    state: engine.RopeState
    history: list[tuple[Point, engine.StepEvent]] = field(default_factory=list)
    move_marks: list[int] = field(default_factory=list)


@dataclass
class SessionStore:
    sessions: dict[str, Session] = field(default_factory=dict)
    counter: int = 0

    def new_sid(self) -> str:
        self.counter += 1
        return f"s{self.counter}"


def _pt_json(p: Point) -> list[float]:
    return [p[0], p[1]]


def _ray_json(r: Ray) -> dict:
    return {"origin": _pt_json(r.origin), "dir": _pt_json(r.dir)}


def _rays_payload(state: engine.RopeState) -> dict:
    fan = fan_rays(state.scene, engine.observer(state))
    return {
        "gd": [_ray_json(r) for r in fan.rays],
        "unwrap": _ray_json(state.unwrap_ray) if state.unwrap_ray else None,
    }


def _snapshot(session: Session) -> dict:
    state = session.state
    return {
        "ok": True,
        "sid": session.sid,
        "rope": [_pt_json(p) for p in engine.polyline(state)],
        "a": _pt_json(state.a),
        "rays": _rays_payload(state),
    }


def _fail(code: str) -> dict:
    return {"ok": False, "error": code}


def _parse_point(value: object) -> Optional[Point]:
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in value)
    ):
        return Point(float(value[0]), float(value[1]))
    return None


def handle_message(store: SessionStore, msg: object) -> dict:
    """Process one protocol message; the session is untouched on error."""
    if not isinstance(msg, dict) or "op" not in msg:
        return _fail(ERR_PARSE)
    op = msg["op"]
    if op == "init":
        return _handle_init(store, msg)
    if op in ("move", "state", "reset", "undo"):
        session = store.sessions.get(msg.get("sid"))
        if session is None:
            return _fail(ERR_UNKNOWN_SESSION)
        if op == "move":
            return _handle_move(session, msg)
        if op == "state":
            return _snapshot(session)
        if op == "reset":
            session.state = engine.new_session(
                session.scene, session.anchor, session.start
            )
            session.history.clear()
            session.move_marks.clear()
            return _snapshot(session)
        return _handle_undo(session)
    return _fail(ERR_PARSE)


def _handle_init(store: SessionStore, msg: dict) -> dict:
    scene_obj = msg.get("scene")
    anchor = _parse_point(msg.get("anchor"))
    start = _parse_point(msg.get("start"))
    if not isinstance(scene_obj, dict) or anchor is None or start is None:
        return _fail(ERR_PARSE)
    try:
        doc = scene_document_from_obj(
            {
                "obstacles": scene_obj.get("obstacles", []),
                "allow_collinear": scene_obj.get("allow_collinear", False),
                "anchor": [anchor.x, anchor.y],
                "trace": [[start.x, start.y]],
            }
        )
    except (SceneParseError, SceneError):
        return _fail(ERR_PARSE)
    try:
        state = engine.new_session(doc.scene, anchor, start)
    except engine.RopeError:
        return _fail(ERR_NOT_VISIBLE)
    session = Session(store.new_sid(), doc.scene, anchor, start, state)
    store.sessions[session.sid] = session
    return _snapshot(session)


def _handle_move(session: Session, msg: dict) -> dict:
    target = _parse_point(msg.get("to"))
    if target is None:
        return _fail(ERR_PARSE)
    if target != session.state.a and not visible(
        session.state.a, target, session.scene.obstacles
    ):
        return _fail(ERR_NOT_VISIBLE)
    try:
        waypoints = refine_move(session.scene, session.state, target)
    except UnrefinableError:
        return _fail(ERR_UNREFINABLE)
    state = session.state
    applied: list[tuple[Point, engine.StepEvent]] = []
    events = []
    for wp in waypoints:
        state, event = engine.step(state, wp)
        if event.is_error:
            # refine_move promises this cannot happen; stay safe regardless
            return _fail(event.error_code or ERR_SINGLE_CUT)
        applied.append((wp, event))
        if event.point is not None:
            events.append({"kind": event.kind, "point": _pt_json(event.point)})
    session.state = state
    session.history.extend(applied)
    session.move_marks.append(len(session.history))
    reply = _snapshot(session)
    del reply["sid"]
    reply["events"] = events
    return reply


def _handle_undo(session: Session) -> dict:
    if session.move_marks:
        session.move_marks.pop()
        keep = session.move_marks[-1] if session.move_marks else 0
        replay = session.history[:keep]
        state = engine.new_session(session.scene, session.anchor, session.start)
        for point, _ in replay:
            state, event = engine.step(state, point)
            if event.is_error:
                return _fail(ERR_SINGLE_CUT)
        session.history = replay
        session.state = state
    return _snapshot(session)


def encode_reply(reply: dict) -> str:
    return json.dumps(reply, separators=(",", ":"))


def serve_stdio(stdin=None, stdout=None) -> None:
    """One JSON message per line in, one JSON reply per line out."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    store = SessionStore()
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            msg = json.loads(line)
        except json.JSONDecodeError:
            reply = _fail(ERR_PARSE)
        else:
            reply = handle_message(store, msg)
        stdout.write(encode_reply(reply) + "\n")
        stdout.flush()


def build_app(static_dir: Optional[str] = None):
    """FastAPI app exposing the protocol over a WebSocket at /ws."""
    from fastapi import FastAPI, WebSocket, WebSocketDisconnect
    from fastapi.staticfiles import StaticFiles

    app = FastAPI()
    store = SessionStore()

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket) -> None:
        await ws.accept()
        try:
            while True:
                text = await ws.receive_text()
                try:
                    msg = json.loads(text)
                except json.JSONDecodeError:
                    reply = _fail(ERR_PARSE)
                else:
                    reply = handle_message(store, msg)
                await ws.send_text(encode_reply(reply))
        except WebSocketDisconnect:
            pass

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="studio")
    return app


def serve_socket(port: int, static_dir: Optional[str] = None) -> None:
    import uvicorn

    uvicorn.run(build_app(static_dir), host="127.0.0.1", port=port, log_level="warning")
