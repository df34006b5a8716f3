"""Taut 2D rope simulation among open line-segment obstacles.

The dragged end of an anchored rope is tracked through a field of open
line-segment obstacles; wrap and unwrap events are detected by testing
each move against rays rooted at obstacle endpoints, giving O(n) work per
step.  An independent rubber-band oracle verifies the engine.
"""

from .geom import OpenSegment, Point, Ray
from .engine import RopeState, StepEvent, new_session, polyline, step
from .oracle import paths_equal, taut_path
from .sceneio import Scene, SceneDocument, parse_scene, serialize_scene
from .tracing import Trace, refine_move, validate_trace

__version__ = "0.1.0"

__all__ = [
    "OpenSegment",
    "Point",
    "Ray",
    "RopeState",
    "Scene",
    "SceneDocument",
    "StepEvent",
    "Trace",
    "new_session",
    "parse_scene",
    "paths_equal",
    "polyline",
    "refine_move",
    "serialize_scene",
    "step",
    "taut_path",
    "validate_trace",
]
