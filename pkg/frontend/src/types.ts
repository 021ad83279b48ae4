export interface Echo {
  canonical_query: string | null;
  matcher: string | null;
  took_ms?: number;
}

export interface MatchedFeature {
  category: string;
  label: string;
  confidence: number;
}

export interface ShotHit {
  shot_id: string;
  video_id: string;
  start_s: number;
  score: number;
  matched: MatchedFeature[];
}

export interface ShotPage {
  echo: Echo;
  total: number;
  results: ShotHit[];
}

export interface TermCount {
  term: string;
  count: number;
}

export interface VideoHit {
  video_id: string;
  score: number;
  per_term_counts: TermCount[];
}

export interface VideoPage {
  echo: Echo;
  total: number;
  results: VideoHit[];
}

export interface SequenceHit {
  video_id: string;
  hits: ShotHit[];
  score: number;
}

export interface TemporalPage {
  echo: Echo;
  total: number;
  results: SequenceHit[];
}

export interface Suggestion {
  label: string;
  category: string;
  shot_frequency: number;
  example_shot_ids: string[];
}

export interface SuggestResponse {
  echo: Echo;
  fragment: string;
  suggestions: Suggestion[];
}

export interface VideoMeta {
  video_id: string;
  title: string;
  description: string;
  tags: string[];
  duration_s: number;
}

export interface VideoResponse {
  echo: Echo;
  video: VideoMeta;
}

export interface ShotInfo {
  shot_id: string;
  video_id: string;
  index: number;
  start_s: number;
  end_s: number;
  keyframe_ref: string | null;
}

export interface VideoShotsResponse {
  echo: Echo;
  video_id: string;
  shots: ShotInfo[];
}

export type ShotProfile = Record<string, { label: string; confidence: number }[]>;

export interface ShotResponse {
  echo: Echo;
  shot: ShotInfo;
  profile: ShotProfile;
}

export interface SimilarNeighbor {
  video_id: string;
  cosine: number;
}

export interface SimilarResponse {
  echo: Echo;
  video_id: string;
  results: SimilarNeighbor[];
}

export type EntryKind = "shot-query" | "map-query" | "temporal-query";

export interface BrowsedShot {
  shot_id: string;
  started_at_ms: number;
  dwell_ms: number;
}

export interface HistoryEntry {
  entry_id: number;
  timestamp_ms: number;
  kind: EntryKind;
  canonical_query: string;
  browsed: {
    first_shot: BrowsedShot | null;
    last_shot: BrowsedShot | null;
    longest_shot: BrowsedShot | null;
  };
}

export interface HistoryResponse {
  echo: Echo;
  session_id: string;
  entries: HistoryEntry[];
}

export interface QueryEventResponse {
  echo: Echo;
  entry_id: number;
}

/** UI result modes; "map" queries the whole-video endpoint. */
export type Mode = "shots" | "map" | "temporal";

export const MODE_KINDS: Record<Mode, EntryKind> = {
  shots: "shot-query",
  map: "map-query",
  temporal: "temporal-query",
};

export const KIND_MODES: Record<EntryKind, Mode> = {
  "shot-query": "shots",
  "map-query": "map",
  "temporal-query": "temporal",
};
