// Browser wiring: WebSocket session, pointer-driven drag of the rope's
// free end, scene editing (which re-issues init), overlay toggles.

import {
  OutboundMessage,
  P2,
  SceneSpec,
  decodeReply,
  encodeMessage,
} from "./protocol.js";
import { MoveCoalescer } from "./transport.js";
import { Viewport, renderFrame, screenToWorld } from "./renderer.js";
import { ViewModel, applyReply, createViewModel } from "./viewmodel.js";

type Tool = "drag" | "obstacle" | "anchor" | "start";

const DEFAULT_SCENE: SceneSpec = { obstacles: [[[0, 1], [0, 3]]] };
const DEFAULT_ANCHOR: P2 = [-2, 0];
const DEFAULT_START: P2 = [2, 0];

function main(): void {
  const canvas = document.getElementById("canvas") as HTMLCanvasElement;
  const ctx = canvas.getContext("2d")!;
  const log = document.getElementById("log") as HTMLUListElement;
  const status = document.getElementById("status") as HTMLSpanElement;

  const view: Viewport = {
    cx: 0,
    cy: 2,
    scale: 0.02,
    width: canvas.width,
    height: canvas.height,
  };

  let vm: ViewModel = createViewModel(structuredClone(DEFAULT_SCENE), DEFAULT_ANCHOR);
  let start: P2 = DEFAULT_START;
  let tool: Tool = "drag";
  let dragging = false;
  let pendingObstacleStart: P2 | null = null;
  let pointerWorld: P2 | null = null;
  let frameRequested = false;

  const proto = location.protocol === "https:" ? "wss" : "ws";
  const socket = new WebSocket(`${proto}://${location.host}/ws`);

  const send = (msg: OutboundMessage) => socket.send(encodeMessage(msg));
  const mover = new MoveCoalescer((to) => {
    if (vm.sid) send({ op: "move", sid: vm.sid, to });
  });

  function requestFrame(): void {
    if (frameRequested) return;
    frameRequested = true;
    requestAnimationFrame(() => {
      frameRequested = false;
      renderFrame(ctx, view, vm);
      syncLog();
    });
  }

  function syncLog(): void {
    while (log.children.length < vm.eventLog.length) {
      const li = document.createElement("li");
      li.textContent = vm.eventLog[log.children.length];
      log.appendChild(li);
    }
    status.textContent = vm.lastError ? `error: ${vm.lastError}` : "ok";
  }

  function init(): void {
    vm = createViewModel(vm.scene, vm.anchor);
    log.replaceChildren();
    send({ op: "init", scene: vm.scene, anchor: vm.anchor, start });
  }

  socket.onopen = init;
  socket.onmessage = (event) => {
    const reply = decodeReply(event.data as string);
    applyReply(vm, reply);
    mover.acknowledge();
    requestFrame();
  };
  socket.onclose = () => {
    status.textContent = "disconnected";
  };

  function canvasPoint(event: PointerEvent): P2 {
    const rect = canvas.getBoundingClientRect();
    return screenToWorld(view, [
      event.clientX - rect.left,
      event.clientY - rect.top,
    ]);
  }

  canvas.addEventListener("pointerdown", (event) => {
    const p = canvasPoint(event);
    if (tool === "drag") {
      dragging = true;
      canvas.setPointerCapture(event.pointerId);
    } else if (tool === "obstacle") {
      if (pendingObstacleStart === null) {
        pendingObstacleStart = p;
      } else {
        vm.scene.obstacles.push([pendingObstacleStart, p]);
        pendingObstacleStart = null;
        init();
      }
    } else if (tool === "anchor") {
      vm.anchor = p;
      init();
    } else if (tool === "start") {
      start = p;
      init();
    }
  });

  canvas.addEventListener("pointermove", (event) => {
    if (!dragging) return;
    pointerWorld = canvasPoint(event);
    // coalesce to at most one outbound move per animation frame
    requestAnimationFrame(() => {
      if (dragging && pointerWorld) mover.request(pointerWorld);
    });
  });

  canvas.addEventListener("pointerup", () => {
    if (dragging && pointerWorld) mover.request(pointerWorld);
    dragging = false;
    pointerWorld = null;
  });

  canvas.addEventListener("wheel", (event) => {
    event.preventDefault();
    view.scale *= event.deltaY > 0 ? 1.1 : 1 / 1.1;
    requestFrame();
  });

  for (const name of ["drag", "obstacle", "anchor", "start"] as Tool[]) {
    document.getElementById(`tool-${name}`)!.addEventListener("click", () => {
      tool = name;
      pendingObstacleStart = null;
      document
        .querySelectorAll("#tools button")
        .forEach((b) => b.classList.toggle("active", b.id === `tool-${name}`));
    });
  }

  (document.getElementById("toggle-fan") as HTMLInputElement).addEventListener(
    "change",
    (event) => {
      vm.showFan = (event.target as HTMLInputElement).checked;
      requestFrame();
    }
  );
  (document.getElementById("toggle-unwrap") as HTMLInputElement).addEventListener(
    "change",
    (event) => {
      vm.showUnwrap = (event.target as HTMLInputElement).checked;
      requestFrame();
    }
  );
  document.getElementById("undo")!.addEventListener("click", () => {
    if (vm.sid) send({ op: "undo", sid: vm.sid });
  });
  document.getElementById("reset")!.addEventListener("click", () => {
    if (vm.sid) send({ op: "reset", sid: vm.sid });
  });
  document.getElementById("clear")!.addEventListener("click", () => {
    vm.scene = { obstacles: [] };
    init();
  });
  document.getElementById("export")!.addEventListener("click", () => {
    const doc = {
      obstacles: vm.scene.obstacles,
      anchor: vm.anchor,
      trace: [vm.a ?? start],
    };
    const blob = new Blob([JSON.stringify(doc) + "\n"], {
      type: "application/json",
    });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = "scene.json";
    a.click();
    URL.revokeObjectURL(a.href);
  });

  requestFrame();
}

main();
