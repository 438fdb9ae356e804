/** Thin client for the versecraft HTTP API.
 *
 * At most one suggest request is in flight: a newer call aborts the
 * previous one. The fetch implementation is injectable for tests. */

import type {
  FeedbackRecord,
  GenerateResponseLine,
  SuggestResponse,
} from "./types.js";

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  private suggestController: AbortController | null = null;

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) =>
      fetch(input, init),
  ) {}

  private async post(path: string, body: unknown, signal?: AbortSignal) {
    const resp = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    if (!resp.ok) {
      let detail = `${resp.status}`;
      try {
        const payload = await resp.json();
        detail = payload.detail ?? detail;
      } catch {
        // non-JSON error body; keep the status code
      }
      throw new ApiError(resp.status, detail);
    }
    return resp.json();
  }

  /** Request next-line suggestions; cancels any in-flight request. */
  async suggest(
    context: string[],
    tier: string,
    count = 20,
  ): Promise<SuggestResponse> {
    this.suggestController?.abort();
    const controller = new AbortController();
    this.suggestController = controller;
    try {
      return await this.post(
        "/api/suggest",
        { context, tier, count },
        controller.signal,
      );
    } finally {
      if (this.suggestController === controller) {
        this.suggestController = null;
      }
    }
  }

  async generate(options: {
    seed_line?: string;
    num_lines: number;
    keywords?: string[];
    tier: string;
    rhyme_block?: number;
  }): Promise<{ lines: GenerateResponseLine[] }> {
    return this.post("/api/generate", options);
  }

  /** One POST per accepted suggestion; dismissals never call this. */
  async sendFeedback(record: FeedbackRecord): Promise<{ ok: boolean }> {
    return this.post("/api/feedback", record);
  }

  async health(): Promise<{
    version: string;
    corpus_digest: string;
    tiers_available: string[];
  }> {
    const resp = await this.fetchImpl(this.baseUrl + "/api/health");
    if (!resp.ok) {
      throw new ApiError(resp.status, "health check failed");
    }
    return resp.json();
  }
}
