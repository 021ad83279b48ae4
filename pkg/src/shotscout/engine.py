"""Engine facade: one object the service and CLI talk to.

Wraps a FeatureStore with query parsing, mode dispatch, limit clamping, and
session history, and shapes every operation's result as the JSON-ready dict
the HTTP layer returns (minus the timing field it stamps on).
"""
from __future__ import annotations

import math

from . import maps, shots, suggest, temporal
from .errors import InvalidArgument
from .history import SessionHistory
from .queries import canonicalize, parse

DEFAULT_LIMIT = 100
MAX_LIMIT = 1000
DEFAULT_SIMILAR_K = 10


def _echo(canonical_query: str | None = None, matcher: str | None = None) -> dict:
    return {"echo": {"canonical_query": canonical_query, "matcher": matcher}}


def _as_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidArgument(f"{name} must be an integer, got {value!r}")
    if isinstance(value, float):
        if not value.is_integer():
            raise InvalidArgument(f"{name} must be an integer, got {value!r}")
        value = int(value)
    return value


class SearchEngine:
    def __init__(
        self,
        store,
        history: SessionHistory | None = None,
        default_window_s: float = temporal.DEFAULT_WINDOW_S,
        default_limit: int = DEFAULT_LIMIT,
        max_limit: int = MAX_LIMIT,
    ):
        self.store = store
        self.history = history if history is not None else SessionHistory()
        self.default_window_s = default_window_s
        self.default_limit = default_limit
        self.max_limit = max_limit

    # -- plumbing ------------------------------------------------------------

    def _clamp_limit(self, limit) -> int:
        """Default when omitted; values beyond the hard cap are capped."""
        if limit is None:
            return self.default_limit
        limit = _as_int(limit, "limit")
        if limit < 1:
            raise InvalidArgument(f"limit must be >= 1, got {limit}")
        return min(limit, self.max_limit)

    def _single_segment(self, ast, mode: str):
        if len(ast.segments) != 1:
            raise InvalidArgument(
                f"{mode} search takes a single-segment query; use temporal mode for '-->' sequences"
            )
        return ast.segments[0]

    # -- query modes ---------------------------------------------------------

    def query_shots(self, query: str, limit: int | None = None, offset: int = 0) -> dict:
        ast = parse(query)
        segment = self._single_segment(ast, "shot")
        limit = self._clamp_limit(limit)
        offset = _as_int(offset, "offset")
        total, results = shots.search_shots(self.store, segment, limit, offset)
        return {
            **_echo(canonicalize(ast)),
            "total": total,
            "results": [r.to_dict() for r in results],
        }

    def query_videos(
        self,
        query: str,
        matcher: str = "frequency",
        limit: int | None = None,
        offset: int = 0,
    ) -> dict:
        ast = parse(query)
        segment = self._single_segment(ast, "map")
        limit = self._clamp_limit(limit)
        offset = _as_int(offset, "offset")
        total, results = maps.search_videos(self.store, segment, matcher, limit, offset)
        return {
            **_echo(canonicalize(ast), matcher),
            "total": total,
            "results": [r.to_dict() for r in results],
        }

    def query_temporal(self, query: str, window_s: float | None = None, limit: int | None = None) -> dict:
        ast = parse(query)
        if window_s is not None and not (
            isinstance(window_s, (int, float)) and math.isfinite(window_s) and window_s > 0
        ):
            raise InvalidArgument(f"window_s must be a positive number, got {window_s!r}")
        limit = self._clamp_limit(limit)
        # The query's own --window wins over the request parameter, so a
        # canonical query replayed from history reproduces the same search.
        effective = ast.window_s if ast.window_s is not None else (
            window_s if window_s is not None else self.default_window_s
        )
        total, matches = temporal.search_temporal(self.store, ast.segments, effective, limit)
        return {
            **_echo(canonicalize(ast)),
            "window_s": effective,
            "total": total,
            "results": [m.to_dict() for m in matches],
        }

    def query(self, query: str, mode: str = "shots", **kwargs) -> dict:
        if mode == "shots":
            return self.query_shots(query, **kwargs)
        if mode == "videos":
            return self.query_videos(query, **kwargs)
        if mode == "temporal":
            return self.query_temporal(query, **kwargs)
        raise InvalidArgument(f"unknown mode {mode!r}; expected shots, videos, or temporal")

    # -- navigation / metadata ------------------------------------------------

    def autocomplete(self, fragment: str, limit: int | None = None, category: str | None = None) -> dict:
        entries = suggest.suggest(self.store, fragment, self._clamp_limit(limit), category)
        return {**_echo(), "suggestions": [e.to_dict() for e in entries]}

    def video(self, video_id: str) -> dict:
        return {**_echo(), "video": self.store.get_video(video_id).to_dict()}

    def video_shots(self, video_id: str) -> dict:
        return {
            **_echo(),
            "video_id": video_id,
            "shots": [s.to_dict() for s in self.store.video_shots(video_id)],
        }

    def shot(self, shot_id: str) -> dict:
        """Shot metadata plus its per-category top features (overlay data)."""
        shot = self.store.get_shot(shot_id)
        profile = self.store.shot_profile(shot_id)
        return {
            **_echo(),
            "shot": shot.to_dict(),
            "profile": {
                category: [{"label": label, "confidence": conf} for label, conf in rows]
                for category, rows in profile.items()
            },
        }

    def similar(self, video_id: str, k: int | None = None) -> dict:
        k = DEFAULT_SIMILAR_K if k is None else self._clamp_limit(k)
        neighbors = maps.similar_videos(self.store, video_id, k)
        return {
            **_echo(),
            "video_id": video_id,
            "results": [{"video_id": vid, "cosine": value} for vid, value in neighbors],
        }

    def shots_like(self, shot_id: str, limit: int | None = None) -> dict:
        total, results = shots.shots_like(self.store, shot_id, self._clamp_limit(limit))
        return {
            **_echo(),
            "source_shot_id": shot_id,
            "total": total,
            "results": [r.to_dict() for r in results],
        }

    # -- sessions -------------------------------------------------------------

    def record_event(self, session_id: str, event: dict) -> dict:
        if not isinstance(event, dict):
            raise InvalidArgument("event body must be an object")
        kind = event.get("type")
        if kind == "query":
            entry_id = self.history.record_query(
                session_id,
                event.get("kind"),
                event.get("canonical_query"),
            )
            return {**_echo(), "entry_id": entry_id}
        if kind == "inspection":
            entry = self.history.record_inspection(
                session_id,
                _as_int(event.get("entry_id"), "entry_id"),
                event.get("shot_id"),
                _as_int(event.get("started_at_ms"), "started_at_ms"),
                _as_int(event.get("dwell_ms"), "dwell_ms"),
            )
            return {**_echo(), "entry": entry}
        raise InvalidArgument(f"unknown event type {kind!r}; expected 'query' or 'inspection'")

    def session_history(self, session_id: str) -> dict:
        return {
            **_echo(),
            "session_id": session_id,
            "entries": self.history.get_history(session_id),
        }
