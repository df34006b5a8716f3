// Wire types for the rope session protocol: one JSON object per message.

export type P2 = [number, number];

export interface RayView {
  origin: P2;
  dir: P2;
}

export interface RaysPayload {
  gd: RayView[];
  unwrap: RayView | null;
}

export interface RopeEvent {
  kind: "wrapped" | "unwrapped";
  point: P2;
}

export interface SceneSpec {
  obstacles: [P2, P2][];
  allow_collinear?: boolean;
}

export type OutboundMessage =
  | { op: "init"; scene: SceneSpec; anchor: P2; start: P2 }
  | { op: "move"; sid: string; to: P2 }
  | { op: "state"; sid: string }
  | { op: "reset"; sid: string }
  | { op: "undo"; sid: string };

export interface OkReply {
  ok: true;
  sid?: string;
  rope: P2[];
  a: P2;
  rays: RaysPayload;
  events?: RopeEvent[];
}

export interface ErrorReply {
  ok: false;
  error: string;
}

export type Reply = OkReply | ErrorReply;

export function encodeMessage(msg: OutboundMessage): string {
  return JSON.stringify(msg);
}

export function decodeReply(text: string): Reply {
  const obj = JSON.parse(text);
  if (typeof obj !== "object" || obj === null || typeof obj.ok !== "boolean") {
    throw new Error(`malformed reply: ${text}`);
  }
  return obj as Reply;
}
