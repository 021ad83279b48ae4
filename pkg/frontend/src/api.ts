import type {
  EntryKind,
  HistoryResponse,
  QueryEventResponse,
  ShotPage,
  ShotResponse,
  SimilarResponse,
  SuggestResponse,
  TemporalPage,
  VideoPage,
  VideoResponse,
  VideoShotsResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly offset?: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** Thin typed client for the retrieval service. Network failures surface as
 * plain TypeError from fetch; HTTP errors become ApiError with the service's
 * structured code/message. */
export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, init);
    let body: unknown = null;
    try {
      body = await response.json();
    } catch {
      body = null;
    }
    if (!response.ok) {
      const err = (body as { error?: { code?: string; message?: string; offset?: number } } | null)?.error;
      throw new ApiError(
        response.status,
        err?.code ?? "unknown",
        err?.message ?? `HTTP ${response.status}`,
        err?.offset,
      );
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  queryShots(query: string, limit?: number): Promise<ShotPage> {
    return this.post("/query/shots", limit === undefined ? { query } : { query, limit });
  }

  queryVideos(query: string, matcher?: string): Promise<VideoPage> {
    return this.post("/query/videos", matcher === undefined ? { query } : { query, matcher });
  }

  queryTemporal(query: string, windowS?: number): Promise<TemporalPage> {
    return this.post(
      "/query/temporal",
      windowS === undefined ? { query } : { query, window_s: windowS },
    );
  }

  autocomplete(fragment: string, limit = 10): Promise<SuggestResponse> {
    const params = new URLSearchParams({ q: fragment, limit: String(limit) });
    return this.request(`/autocomplete?${params}`);
  }

  video(videoId: string): Promise<VideoResponse> {
    return this.request(`/videos/${encodeURIComponent(videoId)}`);
  }

  videoShots(videoId: string): Promise<VideoShotsResponse> {
    return this.request(`/videos/${encodeURIComponent(videoId)}/shots`);
  }

  similar(videoId: string, k: number): Promise<SimilarResponse> {
    return this.request(`/videos/${encodeURIComponent(videoId)}/similar?k=${k}`);
  }

  shot(shotId: string): Promise<ShotResponse> {
    return this.request(`/shots/${encodeURIComponent(shotId)}`);
  }

  recordQuery(sessionId: string, kind: EntryKind, canonicalQuery: string): Promise<QueryEventResponse> {
    return this.post(`/sessions/${encodeURIComponent(sessionId)}/events`, {
      type: "query",
      kind,
      canonical_query: canonicalQuery,
    });
  }

  recordInspection(
    sessionId: string,
    entryId: number,
    shotId: string,
    startedAtMs: number,
    dwellMs: number,
  ): Promise<unknown> {
    return this.post(`/sessions/${encodeURIComponent(sessionId)}/events`, {
      type: "inspection",
      entry_id: entryId,
      shot_id: shotId,
      started_at_ms: Math.round(startedAtMs),
      dwell_ms: Math.round(dwellMs),
    });
  }

  history(sessionId: string): Promise<HistoryResponse> {
    return this.request(`/sessions/${encodeURIComponent(sessionId)}/history`);
  }

  assetUrl(ref: string): string {
    return `${this.baseUrl}/assets/${ref}`;
  }
}

/** Per-mode monotonic sequence numbers; a response is applied only when its
 * number is still the latest for that mode, so stale answers are dropped. */
export class QuerySequencer {
  private latest = new Map<string, number>();

  next(mode: string): number {
    const n = (this.latest.get(mode) ?? 0) + 1;
    this.latest.set(mode, n);
    return n;
  }

  isCurrent(mode: string, n: number): boolean {
    return this.latest.get(mode) === n;
  }
}
