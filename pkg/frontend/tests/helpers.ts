import type {
  Echo,
  HistoryEntry,
  ShotHit,
  ShotInfo,
  Suggestion,
  VideoHit,
} from "../src/types.js";

export const BASE = "http://fake.test";

export function echo(canonical: string | null = null, matcher: string | null = null): Echo {
  return { canonical_query: canonical, matcher, took_ms: 0.1 };
}

export function jsonResponse(body: unknown, status = 200): Response {
  return {
    ok: status < 400,
    status,
    statusText: String(status),
    json: async () => body,
  } as unknown as Response;
}

export interface RecordedCall {
  method: string;
  path: string;
  body?: unknown;
}

type RouteResult = { status?: number; body: unknown } | Promise<{ status?: number; body: unknown }>;
type Handler = (path: string, body: unknown) => RouteResult | undefined;

/** Programmable fetch stub: handlers are tried in order against the decoded
 * path (with query string); unmatched requests 404 with a service-style
 * error envelope. Every request is recorded. */
export class FakeBackend {
  calls: RecordedCall[] = [];

  constructor(private handlers: Handler[] = []) {}

  add(handler: Handler): void {
    this.handlers.push(handler);
  }

  fetch = async (input: unknown, init?: RequestInit): Promise<Response> => {
    const url = new URL(String(input));
    const path = decodeURIComponent(url.pathname) + url.search;
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    this.calls.push({ method, path, body });
    for (const handler of this.handlers) {
      const result = handler(path, body);
      if (result !== undefined) {
        const { status = 200, body: payload } = await result;
        return jsonResponse(payload, status);
      }
    }
    return jsonResponse({ error: { code: "not_found", message: `no route ${path}` } }, 404);
  };

  callsTo(pathPrefix: string): RecordedCall[] {
    return this.calls.filter((c) => c.path.startsWith(pathPrefix));
  }
}

export function deferred<T>(): { promise: Promise<T>; resolve: (value: T) => void } {
  let resolve!: (value: T) => void;
  const promise = new Promise<T>((r) => {
    resolve = r;
  });
  return { promise, resolve };
}

export function tick(ms = 0): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

/** Poll until the condition holds; fails loudly instead of hanging. */
export async function until(condition: () => boolean, timeoutMs = 5000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (!condition()) {
    if (Date.now() > deadline) throw new Error("condition not reached in time");
    await tick(10);
  }
}

// -- canned demo payloads, mirroring the service's demo dataset --------------

export const SUGGESTIONS_CAR: Suggestion[] = [
  { label: "car", category: "objects", shot_frequency: 3, example_shot_ids: ["v1#0", "v1#1", "v2#0"] },
  { label: "sports_car", category: "concepts", shot_frequency: 1, example_shot_ids: ["v2#1"] },
];

export function demoShots(videoId: string, count: number): ShotInfo[] {
  return Array.from({ length: count }, (_, k) => ({
    shot_id: `${videoId}#${k}`,
    video_id: videoId,
    index: k,
    start_s: k,
    end_s: k + 1,
    keyframe_ref: `${videoId}/${k}.svg`,
  }));
}

export const SHOT_HITS_CAR_08: ShotHit[] = [
  {
    shot_id: "v1#0",
    video_id: "v1",
    start_s: 0,
    score: 0.9,
    matched: [{ category: "objects", label: "car", confidence: 0.9 }],
  },
  {
    shot_id: "v1#1",
    video_id: "v1",
    start_s: 1,
    score: 0.85,
    matched: [{ category: "objects", label: "car", confidence: 0.85 }],
  },
];

export const VIDEO_HITS_CAR: VideoHit[] = [
  { video_id: "v1", score: 2.0, per_term_counts: [{ term: "--objects car", count: 2 }] },
  { video_id: "v2", score: 1.0, per_term_counts: [{ term: "--objects car", count: 1 }] },
];

export function historyEntry(overrides: Partial<HistoryEntry> = {}): HistoryEntry {
  return {
    entry_id: 1,
    timestamp_ms: 1000,
    kind: "shot-query",
    canonical_query: "--objects car (0.80)",
    browsed: { first_shot: null, last_shot: null, longest_shot: null },
    ...overrides,
  };
}

/** Routes shared by most app-level tests: demo video shot lists, the two demo
 * videos, autocomplete for "car", and an initially empty history. */
export function demoHandlers(backend: FakeBackend, sessionId: string): { entries: HistoryEntry[] } {
  const state = { entries: [] as HistoryEntry[] };
  backend.add((path) => {
    const m = /^\/videos\/(v\d)\/shots$/.exec(path);
    if (!m) return undefined;
    const vid = m[1] ?? "";
    return { body: { echo: echo(), video_id: vid, shots: demoShots(vid, vid === "v1" ? 5 : 3) } };
  });
  backend.add((path) => {
    const m = /^\/videos\/(v\d)$/.exec(path);
    if (!m) return undefined;
    const vid = m[1] ?? "";
    return {
      body: {
        echo: echo(),
        video: {
          video_id: vid,
          title: vid === "v1" ? "trackside finale" : "victory lap recap",
          description: "demo",
          tags: ["motorsport"],
          duration_s: vid === "v1" ? 5.0 : 3.0,
        },
      },
    };
  });
  backend.add((path) =>
    path.startsWith("/autocomplete?q=car")
      ? { body: { echo: echo(), fragment: "car", suggestions: SUGGESTIONS_CAR } }
      : undefined,
  );
  backend.add((path) => {
    const m = /^\/shots\/(v\d)#(\d+)$/.exec(path);
    if (!m) return undefined;
    const vid = m[1] ?? "";
    const shot = demoShots(vid, vid === "v1" ? 5 : 3)[Number(m[2])];
    if (!shot) return { status: 404, body: { error: { code: "not_found", message: "no such shot" } } };
    return {
      body: {
        echo: echo(),
        shot,
        profile: {
          concepts: [],
          objects: [
            { label: "car", confidence: 0.85 },
            { label: "person", confidence: 0.6 },
          ],
          events: [],
          places: [],
          ocr: [],
          stt: [],
        },
      },
    };
  });
  backend.add((path, body) => {
    if (path !== `/sessions/${sessionId}/events`) return undefined;
    const event = body as Record<string, unknown>;
    if (event["type"] === "query") {
      const entry = historyEntry({
        entry_id: state.entries.length + 1,
        kind: event["kind"] as HistoryEntry["kind"],
        canonical_query: String(event["canonical_query"]),
      });
      state.entries.push(entry);
      return { body: { echo: echo(), entry_id: entry.entry_id } };
    }
    const entry = state.entries.find((e) => e.entry_id === event["entry_id"]);
    if (!entry) return { status: 404, body: { error: { code: "not_found", message: "no entry" } } };
    const browsed = {
      shot_id: String(event["shot_id"]),
      started_at_ms: Number(event["started_at_ms"]),
      dwell_ms: Number(event["dwell_ms"]),
    };
    entry.browsed = { first_shot: browsed, last_shot: browsed, longest_shot: browsed };
    return { body: { echo: echo(), entry: entry } };
  });
  backend.add((path) =>
    path === `/sessions/${sessionId}/history`
      ? { body: { echo: echo(), session_id: sessionId, entries: state.entries } }
      : undefined,
  );
  return state;
}
