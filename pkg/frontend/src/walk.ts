/** Step-through walk between two chains in the same range, one box move per step. */

import type { SessionView } from "./state.js";

export type WalkStatus = "idle" | "walking" | "done" | "aborted";

export class WalkController {
  private view: SessionView;
  private plan: number[] = [];
  private applied: number[] = [];
  private state: WalkStatus = "idle";
  target = "";

  constructor(view: SessionView) {
    this.view = view;
  }

  get status(): WalkStatus {
    return this.state;
  }

  get remaining(): number {
    return this.plan.length - this.applied.length;
  }

  /** Fetch the move plan; a range mismatch surfaces as a thrown ApiRequestError. */
  async start(target: string): Promise<number> {
    const payload = await this.view.connectPlan(target);
    this.plan = payload.plan;
    this.applied = [];
    this.target = `${payload.target.start}:${payload.target.pattern}`;
    this.state = this.plan.length === 0 ? "done" : "walking";
    return this.plan.length;
  }

  /** Apply the next planned move; returns false once the walk is finished. */
  async advance(): Promise<boolean> {
    if (this.state !== "walking") return false;
    const s = this.plan[this.applied.length];
    if (s === undefined) {
      this.state = "done";
      return false;
    }
    await this.view.applyBoxMove(s);
    this.applied.push(s);
    if (this.applied.length === this.plan.length) this.state = "done";
    return true;
  }

  /** Undo the applied prefix; each move is an involution, so replay in reverse. */
  async abort(): Promise<void> {
    while (this.applied.length > 0) {
      const s = this.applied.pop();
      if (s !== undefined) await this.view.applyBoxMove(s);
    }
    this.plan = [];
    this.state = "aborted";
  }
}
