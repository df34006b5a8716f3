// View state mirroring the last server reply. All rope geometry comes from
// the server verbatim; this module never computes where the rope lies.

import { P2, RayView, Reply, SceneSpec } from "./protocol.js";

export interface ViewModel {
  scene: SceneSpec;
  anchor: P2;
  sid: string | null;
  rope: P2[];
  a: P2 | null;
  gdRays: RayView[];
  unwrapRay: RayView | null;
  showFan: boolean;
  showUnwrap: boolean;
  eventLog: string[];
  lastError: string | null;
}

export function createViewModel(scene: SceneSpec, anchor: P2): ViewModel {
  return {
    scene,
    anchor,
    sid: null,
    rope: [],
    a: null,
    gdRays: [],
    unwrapRay: null,
    showFan: true,
    showUnwrap: true,
    eventLog: [],
    lastError: null,
  };
}

function fmtPoint(p: P2): string {
  return `(${p[0]}, ${p[1]})`;
}

export function applyReply(vm: ViewModel, reply: Reply): void {
  if (!reply.ok) {
    vm.lastError = reply.error;
    vm.eventLog.push(`error: ${reply.error}`);
    return;
  }
  vm.lastError = null;
  if (reply.sid !== undefined) {
    vm.sid = reply.sid;
  }
  vm.rope = reply.rope;
  vm.a = reply.a;
  vm.gdRays = reply.rays.gd;
  vm.unwrapRay = reply.rays.unwrap;
  for (const ev of reply.events ?? []) {
    vm.eventLog.push(`${ev.kind} ${fmtPoint(ev.point)}`);
  }
}
