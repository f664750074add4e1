/** Client-side session state: server payload mirror plus replayable history. */

import { ApiClient, ApiRequestError, type SeedQuery } from "./api.js";
import type { ConnectPayload, HistoryOp, SessionPayload } from "./types.js";

/** JSON text with recursively sorted keys, matching the server's encoder. */
export function canonicalJson(value: unknown): string {
  if (Array.isArray(value)) {
    return `[${value.map(canonicalJson).join(", ")}]`;
  }
  if (value !== null && typeof value === "object") {
    const entries = Object.entries(value as Record<string, unknown>)
      .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0))
      .map(([key, inner]) => `${JSON.stringify(key)}: ${canonicalJson(inner)}`);
    return `{${entries.join(", ")}}`;
  }
  return JSON.stringify(value);
}

export class SessionView {
  private constructor(
    readonly api: ApiClient,
    readonly query: SeedQuery,
    public payload: SessionPayload,
    public lastError: string | null = null,
  ) {}

  static async open(api: ApiClient, query: SeedQuery): Promise<SessionView> {
    return new SessionView(api, query, await api.seed(query));
  }

  get history(): HistoryOp[] {
    return this.payload.history;
  }

  /** Vertices the UI may offer for mutation; pre-filters frozen ones. */
  mutableVertices(): number[] {
    return this.payload.seed.ex.filter((k) => !this.payload.seed.vertices[k]?.frozen);
  }

  movableMoves(): number[] {
    return this.payload.chain.movable;
  }

  async applyMutation(k: number): Promise<SessionPayload> {
    if (!this.mutableVertices().includes(k)) {
      throw new ApiRequestError(409, `vertex ${k} is not exchangeable`);
    }
    return this.reconcile(this.api.mutate(this.payload.session, k));
  }

  async applyBoxMove(s: number): Promise<SessionPayload> {
    if (!this.movableMoves().includes(s)) {
      throw new ApiRequestError(409, `box move ${s} does not apply`);
    }
    return this.reconcile(this.api.boxmove(this.payload.session, s));
  }

  /** Move plan toward another chain; the plan is not applied server-side. */
  async connectPlan(target: string): Promise<ConnectPayload> {
    return this.api.connectPlan(this.payload.session, target);
  }

  private async reconcile(pending: Promise<SessionPayload>): Promise<SessionPayload> {
    try {
      this.payload = await pending;
      this.lastError = null;
      return this.payload;
    } catch (err) {
      if (err instanceof ApiRequestError) {
        this.lastError = err.message;
      }
      throw err;
    }
  }

  /** Run this view's history against a brand-new session. */
  async replayOnFreshSession(): Promise<SessionView> {
    const fresh = await SessionView.open(this.api, this.query);
    for (const op of this.history) {
      if (op.op === "mutate") {
        await fresh.applyMutation(op.k as number);
      } else {
        await fresh.applyBoxMove(op.s as number);
      }
    }
    return fresh;
  }

  /** Byte form of the seed, for replay and involution comparisons. */
  seedBytes(): string {
    return canonicalJson(this.payload.seed);
  }

  chainBytes(): string {
    return canonicalJson(this.payload.chain);
  }
}
