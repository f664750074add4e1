/** Thin fetch client for the session API; one request in flight at a time. */

import type { ConnectPayload, SessionPayload, TypeInfo } from "./types.js";

export class ApiRequestError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export interface SeedQuery {
  type: string;
  range?: string;
  chain?: string;
  orientation?: string;
}

export class ApiClient {
  private queue: Promise<unknown> = Promise.resolve();

  constructor(readonly baseUrl: string) {}

  /** Serialize calls so at most one operation is in flight. */
  private enqueue<T>(job: () => Promise<T>): Promise<T> {
    const next = this.queue.then(job, job);
    this.queue = next.catch(() => undefined);
    return next;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    return this.enqueue(async () => {
      const reply = await fetch(this.baseUrl + path, {
        method,
        headers: body === undefined ? undefined : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
      const payload = await reply.json();
      if (!reply.ok) {
        const message =
          typeof payload === "object" && payload !== null && "error" in payload
            ? String((payload as { error: unknown }).error)
            : reply.statusText;
        throw new ApiRequestError(reply.status, message);
      }
      return payload as T;
    });
  }

  async types(): Promise<TypeInfo[]> {
    const payload = await this.request<{ types: TypeInfo[] }>("GET", "/types");
    return payload.types;
  }

  seed(query: SeedQuery): Promise<SessionPayload> {
    const params = new URLSearchParams();
    for (const [key, value] of Object.entries(query)) {
      if (value !== undefined) params.set(key, value);
    }
    return this.request("GET", `/seed?${params.toString()}`);
  }

  mutate(session: string, k: number): Promise<SessionPayload> {
    return this.request("POST", "/mutate", { session, k });
  }

  boxmove(session: string, s: number): Promise<SessionPayload> {
    return this.request("POST", "/boxmove", { session, s });
  }

  connectPlan(session: string, target: string): Promise<ConnectPayload> {
    return this.request("POST", "/connect", { session, target });
  }
}
