"""Per-session query history with browsed-shot derivations.

Each session holds an ordered list of query entries; inspection events update
an entry's first / last / longest browsed shot. Sessions are kept in memory,
expire after an idle timeout, and can optionally be mirrored to an
append-only JSONL file that is replayed on startup.
"""
from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass, field

from .errors import InvalidArgument, NotFound
from .queries import parse

ENTRY_KINDS = ("shot-query", "map-query", "temporal-query")
DEFAULT_TTL_S = 6 * 3600.0


@dataclass(slots=True)
class _Inspection:
    shot_id: str
    started_at_ms: int
    dwell_ms: int

    def to_dict(self) -> dict:
        return {
            "shot_id": self.shot_id,
            "started_at_ms": self.started_at_ms,
            "dwell_ms": self.dwell_ms,
        }


@dataclass(slots=True)
class HistoryEntry:
    entry_id: int
    timestamp_ms: int
    kind: str
    canonical_query: str
    first: _Inspection | None = None
    last: _Inspection | None = None
    longest: _Inspection | None = None

    def apply(self, inspection: _Inspection) -> None:
        # first: minimum started_at (earlier recording wins a tie);
        # last: maximum started_at (earlier recording wins a tie);
        # longest: maximum dwell, ties to the earlier started_at.
        if self.first is None:
            self.first = self.last = self.longest = inspection
            return
        if inspection.started_at_ms < self.first.started_at_ms:
            self.first = inspection
        if inspection.started_at_ms > self.last.started_at_ms:
            self.last = inspection
        if inspection.dwell_ms > self.longest.dwell_ms or (
            inspection.dwell_ms == self.longest.dwell_ms
            and inspection.started_at_ms < self.longest.started_at_ms
        ):
            self.longest = inspection

    def to_dict(self) -> dict:
        return {
            "entry_id": self.entry_id,
            "timestamp_ms": self.timestamp_ms,
            "kind": self.kind,
            "canonical_query": self.canonical_query,
            "browsed": {
                "first_shot": self.first.to_dict() if self.first else None,
                "last_shot": self.last.to_dict() if self.last else None,
                "longest_shot": self.longest.to_dict() if self.longest else None,
            },
        }


@dataclass(slots=True)
class _Session:
    lock: threading.Lock = field(default_factory=threading.Lock)
    entries: dict[int, HistoryEntry] = field(default_factory=dict)
    next_id: int = 1
    last_touch_s: float = 0.0


class SessionHistory:
    """Thread-safe session store: distinct sessions never block each other."""

    def __init__(
        self,
        ttl_s: float = DEFAULT_TTL_S,
        persist_path: str | os.PathLike | None = None,
        clock=time.time,
    ):
        if not ttl_s > 0:
            raise InvalidArgument(f"ttl_s must be positive, got {ttl_s!r}")
        self.ttl_s = float(ttl_s)
        self._clock = clock
        self._lock = threading.Lock()  # guards the session map only
        self._sessions: dict[str, _Session] = {}
        self._persist_path = os.fspath(persist_path) if persist_path is not None else None
        self._persist_lock = threading.Lock()
        if self._persist_path and os.path.exists(self._persist_path):
            self._replay(self._persist_path)

    # -- internals -----------------------------------------------------------

    def _session(self, session_id: str, create: bool) -> _Session | None:
        if not session_id or not isinstance(session_id, str):
            raise InvalidArgument("session id must be a non-empty string")
        now = self._clock()
        with self._lock:
            expired = [
                sid
                for sid, s in self._sessions.items()
                if now - s.last_touch_s > self.ttl_s
            ]
            for sid in expired:
                del self._sessions[sid]
            session = self._sessions.get(session_id)
            if session is None and create:
                session = self._sessions[session_id] = _Session()
            if session is not None:
                session.last_touch_s = now
            return session

    def _persist(self, record: dict) -> None:
        if self._persist_path is None:
            return
        line = json.dumps(record, separators=(",", ":"))
        with self._persist_lock:
            with open(self._persist_path, "a", encoding="utf-8") as f:
                f.write(line + "\n")

    def _replay(self, path: str) -> None:
        with open(path, encoding="utf-8") as f:
            for raw in f:
                raw = raw.strip()
                if not raw:
                    continue
                try:
                    record = json.loads(raw)
                    if record["event"] == "query":
                        self._apply_query(
                            record["session_id"],
                            record["entry_id"],
                            record["timestamp_ms"],
                            record["kind"],
                            record["canonical_query"],
                        )
                    elif record["event"] == "inspection":
                        self._apply_inspection(
                            record["session_id"],
                            record["entry_id"],
                            _Inspection(record["shot_id"], record["started_at_ms"], record["dwell_ms"]),
                        )
                except (KeyError, TypeError, ValueError, NotFound):
                    continue  # crash-recovery file: skip torn or stale lines

    def _apply_query(self, session_id, entry_id, timestamp_ms, kind, canonical_query) -> None:
        session = self._session(session_id, create=True)
        with session.lock:
            session.entries[entry_id] = HistoryEntry(entry_id, timestamp_ms, kind, canonical_query)
            session.next_id = max(session.next_id, entry_id + 1)

    def _apply_inspection(self, session_id, entry_id, inspection: _Inspection) -> dict:
        session = self._session(session_id, create=False)
        if session is None:
            raise NotFound(f"unknown session {session_id!r}")
        with session.lock:
            entry = session.entries.get(entry_id)
            if entry is None:
                raise NotFound(f"unknown history entry {entry_id!r}")
            entry.apply(inspection)
            return entry.to_dict()

    # -- operations ----------------------------------------------------------

    def record_query(self, session_id: str, kind: str, canonical_query: str) -> int:
        """Append a query entry; returns its entry id."""
        if kind not in ENTRY_KINDS:
            raise InvalidArgument(f"unknown history kind {kind!r}; expected one of {', '.join(ENTRY_KINDS)}")
        parse(canonical_query)  # raises on an unparsable query
        session = self._session(session_id, create=True)
        timestamp_ms = int(self._clock() * 1000)
        with session.lock:
            entry_id = session.next_id
            session.next_id += 1
            session.entries[entry_id] = HistoryEntry(entry_id, timestamp_ms, kind, canonical_query)
        self._persist(
            {
                "event": "query",
                "session_id": session_id,
                "entry_id": entry_id,
                "timestamp_ms": timestamp_ms,
                "kind": kind,
                "canonical_query": canonical_query,
            }
        )
        return entry_id

    def record_inspection(
        self,
        session_id: str,
        entry_id: int,
        shot_id: str,
        started_at_ms: int,
        dwell_ms: int,
    ) -> dict:
        """Fold one browsed-shot event into an entry; returns the entry dict."""
        if not isinstance(entry_id, int):
            raise InvalidArgument(f"entry_id must be an integer, got {entry_id!r}")
        if not shot_id or not isinstance(shot_id, str):
            raise InvalidArgument("shot_id must be a non-empty string")
        if not isinstance(started_at_ms, int):
            raise InvalidArgument(f"started_at_ms must be an integer, got {started_at_ms!r}")
        if not isinstance(dwell_ms, int) or dwell_ms < 0:
            raise InvalidArgument(f"dwell_ms must be a non-negative integer, got {dwell_ms!r}")
        entry = self._apply_inspection(session_id, entry_id, _Inspection(shot_id, started_at_ms, dwell_ms))
        self._persist(
            {
                "event": "inspection",
                "session_id": session_id,
                "entry_id": entry_id,
                "shot_id": shot_id,
                "started_at_ms": started_at_ms,
                "dwell_ms": dwell_ms,
            }
        )
        return entry

    def get_history(self, session_id: str) -> list[dict]:
        """Chronological entries of a session; unknown sessions are empty."""
        session = self._session(session_id, create=False)
        if session is None:
            return []
        with session.lock:
            entries = sorted(session.entries.values(), key=lambda e: (e.timestamp_ms, e.entry_id))
            return [e.to_dict() for e in entries]
