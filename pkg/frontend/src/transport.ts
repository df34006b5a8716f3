// Outbound move scheduling: at most one in-flight move request, with the
// newest pointer sample replacing anything still queued, so a drag's final
// position always reaches the server.

import { P2 } from "./protocol.js";

export class MoveCoalescer {
  private inFlight = false;
  private queued: P2 | null = null;

  constructor(private readonly send: (to: P2) => void) {}

  request(to: P2): void {
    if (this.inFlight) {
      this.queued = to;
      return;
    }
    this.inFlight = true;
    this.send(to);
  }

  acknowledge(): void {
    this.inFlight = false;
    if (this.queued !== null) {
      const next = this.queued;
      this.queued = null;
      this.inFlight = true;
      this.send(next);
    }
  }

  get busy(): boolean {
    return this.inFlight;
  }
}
