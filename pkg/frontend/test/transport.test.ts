import { describe, expect, it } from "vitest";

import { P2 } from "../src/protocol.js";
import { MoveCoalescer } from "../src/transport.js";

describe("move coalescing", () => {
  it("keeps one request in flight and drops stale samples", () => {
    const sent: P2[] = [];
    const mover = new MoveCoalescer((to) => sent.push(to));
    mover.request([1, 0]);
    mover.request([2, 0]);
    mover.request([3, 0]);
    expect(sent).toEqual([[1, 0]]);
    mover.acknowledge();
    expect(sent).toEqual([
      [1, 0],
      [3, 0],
    ]);
    mover.acknowledge();
    expect(sent.length).toBe(2);
    expect(mover.busy).toBe(false);
  });

  it("final drag position always reaches the server", () => {
    const sent: P2[] = [];
    const mover = new MoveCoalescer((to) => sent.push(to));
    const samples: P2[] = Array.from({ length: 50 }, (_, i) => [i, i * 2]);
    for (const s of samples) {
      mover.request(s);
      if (Math.random() < 0.3) mover.acknowledge();
    }
    while (mover.busy) mover.acknowledge();
    expect(sent.at(-1)).toEqual(samples.at(-1));
  });

  it("sends immediately when idle", () => {
    const sent: P2[] = [];
    const mover = new MoveCoalescer((to) => sent.push(to));
    mover.request([5, 5]);
    mover.acknowledge();
    mover.request([6, 6]);
    expect(sent).toEqual([
      [5, 5],
      [6, 6],
    ]);
  });
});
