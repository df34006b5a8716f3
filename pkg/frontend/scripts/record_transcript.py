"""Record a protocol transcript from the live stdio backend.

The fixture drives the studio tests: a scripted drag that wraps (0,1) and
then (0,3) on the single-wall scene.  Rerun after protocol changes:

    python3 frontend/scripts/record_transcript.py
"""

import json
import pathlib
import subprocess
import sys

SCRIPT = [
    {
        "op": "init",
        "scene": {"obstacles": [[[0, 1], [0, 3]]]},
        "anchor": [-2, 0],
        "start": [2, 0],
    },
    {"op": "move", "sid": "s1", "to": [2, 1.5]},
    {"op": "move", "sid": "s1", "to": [2, 4]},
    {"op": "move", "sid": "s1", "to": [-2, 4]},
    {"op": "state", "sid": "s1"},
]


def main() -> None:
    payload = "\n".join(json.dumps(m) for m in SCRIPT) + "\n"
    proc = subprocess.run(
        [sys.executable, "-m", "tautrope.cli", "serve", "--stdio"],
        input=payload.encode(),
        capture_output=True,
        check=True,
    )
    replies = proc.stdout.decode().splitlines()
    transcript = [
        {"send": msg, "recv": json.loads(reply)}
        for msg, reply in zip(SCRIPT, replies)
    ]
    out = pathlib.Path(__file__).resolve().parent.parent / "test" / "fixtures" / "s1_transcript.json"
    out.write_text(json.dumps(transcript, indent=2) + "\n")
    print(f"wrote {out} ({len(transcript)} exchanges)")


if __name__ == "__main__":
    main()
