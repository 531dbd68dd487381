import { parseServerFrame, ProtocolError } from "./protocol.js";
import type { ClientFrame } from "./protocol.js";
import type { ViewStore } from "./state.js";

// Everything the client needs from a socket; satisfied by the browser
// WebSocket and by the `ws` package in tests.
export interface SocketLike {
  send(data: string): void;
  close(): void;
  addEventListener(type: "message", fn: (ev: { data: unknown }) => void): void;
  addEventListener(type: "close", fn: () => void): void;
}

type QueueItem = { kind: "server"; raw: string } | { kind: "input"; frame: ClientFrame };

/**
 * One live session over one socket.  Server messages and local input all
 * pass through a single FIFO so the store only ever sees them in arrival
 * order, whatever the page was doing when they landed.
 */
export class SessionClient {
  private queue: QueueItem[] = [];
  private draining = false;
  private open = true;

  constructor(
    private socket: SocketLike,
    private store: ViewStore,
    private onClosed: () => void = () => {},
  ) {
    socket.addEventListener("message", (ev) => {
      this.enqueue({ kind: "server", raw: String(ev.data) });
    });
    socket.addEventListener("close", () => {
      this.open = false;
      this.onClosed();
    });
  }

  get connected(): boolean {
    return this.open;
  }

  /** Queue one input frame for sending; drops it if the socket is gone. */
  sendInput(frame: ClientFrame): void {
    this.enqueue({ kind: "input", frame });
  }

  close(): void {
    this.socket.close();
  }

  private enqueue(item: QueueItem): void {
    this.queue.push(item);
    this.drain();
  }

  private drain(): void {
    if (this.draining) return; // re-entrant enqueue keeps FIFO order
    this.draining = true;
    try {
      let item: QueueItem | undefined;
      while ((item = this.queue.shift()) !== undefined) {
        if (item.kind === "input") {
          if (this.open) this.socket.send(JSON.stringify(item.frame));
          continue;
        }
        try {
          const frame = parseServerFrame(item.raw);
          if (frame.type === "snapshot") {
            this.store.apply(frame);
          } else {
            this.store.fail(frame.message);
          }
        } catch (err) {
          if (!(err instanceof ProtocolError)) throw err;
          this.store.fail(err.message);
        }
      }
    } finally {
      this.draining = false;
    }
  }
}
