// Thin fetch wrapper with a request sequence number: at most one analysis
// is in flight logically; stale responses are discarded by the caller
// comparing sequence numbers (latest edit wins).

import type { AnalyzeResponse, ClassifyResponse, HealthResponse } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function postJson<T>(url: string, body: unknown): Promise<T> {
  const response = await fetch(url, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  const data = await response.json().catch(() => ({}));
  if (!response.ok) {
    const detail =
      typeof data?.detail === "string" ? data.detail : `HTTP ${response.status}`;
    throw new ApiError(response.status, detail);
  }
  return data as T;
}

export class ApiClient {
  private seq = 0;

  constructor(public baseUrl: string = "") {}

  nextSeq(): number {
    return ++this.seq;
  }

  currentSeq(): number {
    return this.seq;
  }

  async health(): Promise<HealthResponse> {
    const response = await fetch(`${this.baseUrl}/health`);
    if (!response.ok) {
      throw new ApiError(response.status, "health check failed");
    }
    return (await response.json()) as HealthResponse;
  }

  async analyze(text: string, lang?: string): Promise<AnalyzeResponse> {
    return postJson(`${this.baseUrl}/analyze`, lang ? { text, lang } : { text });
  }

  async classify(text: string): Promise<ClassifyResponse> {
    return postJson(`${this.baseUrl}/classify`, { text });
  }
}
