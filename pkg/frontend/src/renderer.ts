// Canvas rendering with the same styling as the server-side SVG renderer:
// obstacles solid, rope dashed, fan rays dash-dot, unwrapping ray dotted,
// anchor filled, dragged end hollow.

import { P2, RayView } from "./protocol.js";
import { ViewModel } from "./viewmodel.js";

// The subset of CanvasRenderingContext2D the renderer touches; tests stub it.
export interface Ctx {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  stroke(): void;
  fill(): void;
  setLineDash(segments: number[]): void;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  fillStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
}

export interface Viewport {
  // world coordinates of the canvas center and world units per pixel
  cx: number;
  cy: number;
  scale: number;
  width: number;
  height: number;
}

export function worldToScreen(view: Viewport, p: P2): P2 {
  return [
    view.width / 2 + (p[0] - view.cx) / view.scale,
    view.height / 2 - (p[1] - view.cy) / view.scale,
  ];
}

export function screenToWorld(view: Viewport, p: P2): P2 {
  return [
    view.cx + (p[0] - view.width / 2) * view.scale,
    view.cy - (p[1] - view.height / 2) * view.scale,
  ];
}

function worldBounds(view: Viewport): [number, number, number, number] {
  const hw = (view.width / 2) * view.scale;
  const hh = (view.height / 2) * view.scale;
  return [view.cx - hw, view.cy - hh, view.cx + hw, view.cy + hh];
}

// Visible portion of a ray inside the viewport rectangle, in world coords.
export function clipRay(
  ray: RayView,
  bounds: [number, number, number, number]
): [P2, P2] | null {
  const [ox, oy] = ray.origin;
  const [dx, dy] = ray.dir;
  const [minx, miny, maxx, maxy] = bounds;
  let lo = 0;
  let hi = Infinity;
  for (const [o, d, min, max] of [
    [ox, dx, minx, maxx],
    [oy, dy, miny, maxy],
  ]) {
    if (d === 0) {
      if (o < min || o > max) return null;
      continue;
    }
    let k1 = (min - o) / d;
    let k2 = (max - o) / d;
    if (k1 > k2) [k1, k2] = [k2, k1];
    lo = Math.max(lo, k1);
    hi = Math.min(hi, k2);
  }
  if (hi < lo) return null;
  return [
    [ox + lo * dx, oy + lo * dy],
    [ox + hi * dx, oy + hi * dy],
  ];
}

function strokeSegment(ctx: Ctx, view: Viewport, a: P2, b: P2): void {
  const [x1, y1] = worldToScreen(view, a);
  const [x2, y2] = worldToScreen(view, b);
  ctx.beginPath();
  ctx.moveTo(x1, y1);
  ctx.lineTo(x2, y2);
  ctx.stroke();
}

function circle(ctx: Ctx, view: Viewport, p: P2, r: number, hollow: boolean): void {
  const [x, y] = worldToScreen(view, p);
  ctx.beginPath();
  ctx.arc(x, y, r, 0, 2 * Math.PI);
  if (hollow) {
    ctx.fillStyle = "#ffffff";
    ctx.fill();
    ctx.stroke();
  } else {
    ctx.fill();
  }
}

export function renderFrame(ctx: Ctx, view: Viewport, vm: ViewModel): void {
  ctx.clearRect(0, 0, view.width, view.height);
  const bounds = worldBounds(view);

  ctx.strokeStyle = "#000000";
  ctx.lineWidth = 2.5;
  ctx.setLineDash([]);
  for (const [a, b] of vm.scene.obstacles) {
    strokeSegment(ctx, view, a, b);
  }

  if (vm.showFan) {
    ctx.strokeStyle = "#888888";
    ctx.lineWidth = 1;
    ctx.setLineDash([8, 3, 2, 3]);
    for (const ray of vm.gdRays) {
      const clipped = clipRay(ray, bounds);
      if (clipped) strokeSegment(ctx, view, clipped[0], clipped[1]);
    }
  }

  if (vm.showUnwrap && vm.unwrapRay) {
    ctx.strokeStyle = "#1f77b4";
    ctx.lineWidth = 1.5;
    ctx.setLineDash([2, 4]);
    const clipped = clipRay(vm.unwrapRay, bounds);
    if (clipped) strokeSegment(ctx, view, clipped[0], clipped[1]);
  }

  if (vm.rope.length >= 2) {
    ctx.strokeStyle = "#d62728";
    ctx.lineWidth = 2;
    ctx.setLineDash([8, 5]);
    ctx.beginPath();
    const [x0, y0] = worldToScreen(view, vm.rope[0]);
    ctx.moveTo(x0, y0);
    for (const p of vm.rope.slice(1)) {
      const [x, y] = worldToScreen(view, p);
      ctx.lineTo(x, y);
    }
    ctx.stroke();
  }

  ctx.setLineDash([]);
  ctx.fillStyle = "#000000";
  circle(ctx, view, vm.anchor, 6, false);
  if (vm.a) {
    ctx.strokeStyle = "#000000";
    ctx.lineWidth = 1.5;
    circle(ctx, view, vm.a, 6, true);
  }
}
