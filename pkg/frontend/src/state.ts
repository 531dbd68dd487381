import type { Snapshot } from "./protocol.js";

export interface ViewState {
  snapshot: Snapshot | null; // last good frame, never replaced by a stale or bad one
  banner: string | null; // error banner text, cleared by the next applied frame
  applied: number;
  dropped: number; // stale frames discarded (seq not above the rendered one)
}

type Listener = (view: ViewState) => void;

/**
 * Holds what the page renders.  Frames only ever move the view forward:
 * the rendered snapshot is the highest seq received so far, anything at or
 * below it is dropped, and a malformed message raises a banner while the
 * last good snapshot stays on screen.
 */
export class ViewStore {
  private view: ViewState = { snapshot: null, banner: null, applied: 0, dropped: 0 };
  private listeners: Listener[] = [];

  get current(): ViewState {
    return this.view;
  }

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  /** Apply one snapshot; returns false when it was stale and discarded. */
  apply(frame: Snapshot): boolean {
    const shown = this.view.snapshot;
    if (shown !== null && frame.seq <= shown.seq) {
      this.view = { ...this.view, dropped: this.view.dropped + 1 };
      return false;
    }
    this.view = {
      snapshot: frame,
      banner: null,
      applied: this.view.applied + 1,
      dropped: this.view.dropped,
    };
    this.notify();
    return true;
  }

  /** Raise the error banner; the last good snapshot stays rendered. */
  fail(message: string): void {
    this.view = { ...this.view, banner: message };
    this.notify();
  }

  private notify(): void {
    for (const fn of this.listeners) fn(this.view);
  }
}
