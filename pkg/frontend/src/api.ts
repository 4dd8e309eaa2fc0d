import type {
  AssignmentsView,
  JudgmentAck,
  JudgmentPayload,
  NextResponse,
  SearchResponse,
} from "./types";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

/** Thin client for the assessor-role endpoints; a session token rides in
 * the auth header on every request. */
export class ServiceClient {
  constructor(
    private readonly base: string,
    private readonly token: string | null = null,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private headers(json: boolean): Record<string, string> {
    const h: Record<string, string> = {};
    if (json) h["Content-Type"] = "application/json";
    if (this.token) h["X-Auth-Token"] = this.token;
    return h;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(this.base + path, init);
    const body = await resp.json().catch(() => ({}));
    if (!resp.ok) {
      throw new ServiceError(resp.status, (body as { error?: string }).error ?? `HTTP ${resp.status}`);
    }
    return body as T;
  }

  assignments(assessor: string): Promise<AssignmentsView> {
    return this.request(`/assignments/${encodeURIComponent(assessor)}`, {
      headers: this.headers(false),
    });
  }

  next(assessor: string, topic: string): Promise<NextResponse> {
    return this.request(
      `/assignments/${encodeURIComponent(assessor)}/${encodeURIComponent(topic)}/next`,
      { headers: this.headers(false) },
    );
  }

  submit(payload: JudgmentPayload): Promise<JudgmentAck> {
    return this.request("/judgments", {
      method: "POST",
      headers: this.headers(true),
      body: JSON.stringify(payload),
    });
  }

  search(docId: string, query: string): Promise<SearchResponse> {
    return this.request(
      `/documents/${encodeURIComponent(docId)}/search?q=${encodeURIComponent(query)}`,
      { headers: this.headers(false) },
    );
  }
}
