"""Feature store: uniform shot segmentation, ingestion, and read-only lookups.

Ingestion is a single-writer phase done through :class:`DatasetBuilder`;
``build()`` freezes everything into a :class:`FeatureStore`, which is
immutable and safe to read from any number of concurrent request handlers.

Postings are kept as one pair of aligned numpy arrays per (category, label):
shot ordinals sorted ascending plus confidences. A CSR layout by shot backs
per-shot profiles. At desk scale (a few million postings) this keeps both
ingestion and query latency comfortably inside the performance targets.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InvalidArgument, NotFound
from .models import CATEGORIES, Shot, VideoMeta, VocabularyEntry

DEFAULT_INTERVAL_S = 1.0
TEXT_SOURCES = ("ocr", "stt")

_TOKEN_RE = re.compile(r"[^\W_]+")  # alphanumeric runs, underscore excluded


def tokenize_text(text: str) -> list[str]:
    """Lowercase and split on any non-alphanumeric run."""
    return _TOKEN_RE.findall(text.lower())


def shot_count(duration_s: float, interval_s: float) -> int:
    """Number of uniform shots: ceil(duration / interval), computed exactly.

    The ceiling is taken over the exact rational values of the two floats so
    that boundary cases (duration a hair above a multiple of the interval)
    never gain or lose a shot to division rounding.
    """
    count = math.ceil(Fraction(duration_s) / Fraction(interval_s))
    # Float multiplication may land the last shot's start on/after the video
    # end when duration sits within an ulp of a multiple of the interval;
    # never emit an empty shot.
    while count > 1 and (count - 1) * interval_s >= duration_s:
        count -= 1
    return count


def segment_video(
    duration_s: float,
    interval_s: float,
    video_id: str = "",
    keyframe_pattern: str | None = None,
) -> list[Shot]:
    """Uniformly segment ``[0, duration_s)`` into fixed-interval shots.

    The last shot may be shorter. Shot bounds are computed as multiples of
    the interval so consecutive start/end values match bit-for-bit.
    """
    if not (isinstance(duration_s, (int, float)) and math.isfinite(duration_s) and duration_s > 0):
        raise InvalidArgument(f"duration_s must be a positive number, got {duration_s!r}")
    if not (isinstance(interval_s, (int, float)) and math.isfinite(interval_s) and interval_s > 0):
        raise InvalidArgument(f"interval_s must be a positive number, got {interval_s!r}")
    shots = []
    for k in range(shot_count(duration_s, interval_s)):
        start = k * interval_s
        end = min((k + 1) * interval_s, duration_s)
        ref = None
        if keyframe_pattern is not None:
            ref = keyframe_pattern.format(video_id=video_id, index=k)
        shots.append(Shot(f"{video_id}#{k}", video_id, k, start, end, ref))
    return shots


@dataclass(frozen=True, slots=True)
class Rejection:
    """One ingested record the builder refused, with its location."""

    source: str
    line: int | None
    reason: str

    def to_dict(self) -> dict:
        return {"source": self.source, "line": self.line, "reason": self.reason}


@dataclass(slots=True)
class DatasetSummary:
    videos: int = 0
    shots: int = 0
    detections: int = 0  # accepted detection records, text tokens included
    postings: int = 0  # distinct (category, label, shot) entries
    vocabulary_size: int = 0
    rejections: list[Rejection] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "videos": self.videos,
            "shots": self.shots,
            "detections": self.detections,
            "postings": self.postings,
            "vocabulary_size": self.vocabulary_size,
            "rejections": [r.to_dict() for r in self.rejections],
        }


class DatasetBuilder:
    """Single-writer accumulation of videos, detections, vectors, and text.

    Bad records are recorded as rejections and skipped; ingestion continues.
    """

    def __init__(self, interval_s: float = DEFAULT_INTERVAL_S, keyframe_pattern: str | None = None):
        if not (math.isfinite(interval_s) and interval_s > 0):
            raise InvalidArgument(f"interval_s must be a positive number, got {interval_s!r}")
        self.interval_s = float(interval_s)
        self.keyframe_pattern = keyframe_pattern
        self.rejections: list[Rejection] = []
        self._videos: dict[str, VideoMeta] = {}
        self._video_ids: list[str] = []
        self._shots: list[Shot] = []
        self._video_span: dict[str, tuple[int, int]] = {}  # video_id -> (first ordinal, count)
        # (category, label) -> parallel lists of shot ordinals / confidences
        self._acc: dict[tuple[str, str], tuple[list[int], list[float]]] = {}
        self._vectors: dict[str, np.ndarray] = {}
        self._dim: int | None = None
        self._detections = 0

    def reject(self, where: tuple[str, int] | None, reason: str) -> bool:
        """Record one refused record (file readers use this for bad lines)."""
        source, line = where if where is not None else ("<records>", None)
        self.rejections.append(Rejection(source, line, reason))
        return False

    _reject = reject

    def add_video(
        self,
        video_id: str,
        duration_s: float,
        title: str = "",
        description: str = "",
        tags: tuple[str, ...] = (),
        where: tuple[str, int] | None = None,
    ) -> bool:
        if not video_id or not isinstance(video_id, str):
            return self._reject(where, "video id must be a non-empty string")
        if video_id in self._videos:
            return self._reject(where, f"duplicate video id {video_id!r}")
        if not (isinstance(duration_s, (int, float)) and math.isfinite(duration_s) and duration_s > 0):
            return self._reject(where, f"video {video_id!r}: duration_s must be positive")
        meta = VideoMeta(video_id, str(title), str(description), tuple(str(t) for t in tags), float(duration_s))
        shots = segment_video(meta.duration_s, self.interval_s, video_id, self.keyframe_pattern)
        self._video_span[video_id] = (len(self._shots), len(shots))
        self._shots.extend(shots)
        self._videos[video_id] = meta
        self._video_ids.append(video_id)
        return True

    def add_detection(
        self,
        video_id: str,
        category: str,
        label: str,
        confidence: float,
        start_s: float,
        end_s: float,
        where: tuple[str, int] | None = None,
    ) -> bool:
        """Validate one detection and expand it onto every overlapped shot."""
        if video_id not in self._videos:
            return self._reject(where, f"detection references unknown video {video_id!r}")
        if category not in CATEGORIES:
            return self._reject(where, f"unknown category {category!r}")
        label = str(label).strip().lower()
        if not label:
            return self._reject(where, "empty label")
        if not (isinstance(confidence, (int, float)) and math.isfinite(confidence)):
            return self._reject(where, f"confidence {confidence!r} is not a number")
        if not 0.0 <= confidence <= 1.0:
            return self._reject(where, f"confidence {confidence} outside [0, 1]")
        if not (
            isinstance(start_s, (int, float))
            and isinstance(end_s, (int, float))
            and math.isfinite(start_s)
            and math.isfinite(end_s)
            and start_s < end_s
        ):
            return self._reject(where, f"bad interval [{start_s!r}, {end_s!r})")

        first, count = self._video_span[video_id]
        duration = self._videos[video_id].duration_s
        interval = self.interval_s
        # Candidate range padded by one shot each side, then filtered by the
        # exact strict-overlap rule, so boundary rounding can't misassign.
        k_lo = max(0, int(math.floor(start_s / interval)) - 1)
        k_hi = min(count, int(math.ceil(end_s / interval)) + 1)
        hit = False
        for k in range(k_lo, k_hi):
            shot_start = k * interval
            shot_end = min((k + 1) * interval, duration)
            if min(shot_end, float(end_s)) - max(shot_start, float(start_s)) > 0:
                ords, confs = self._acc.setdefault((category, label), ([], []))
                ords.append(first + k)
                confs.append(float(confidence))
                hit = True
        self._detections += 1
        return hit

    def add_text(
        self,
        video_id: str,
        source: str,
        start_s: float,
        end_s: float,
        text: str,
        where: tuple[str, int] | None = None,
    ) -> int:
        """Tokenize a transcript record into per-token detections (confidence 1.0).

        Returns the number of tokens ingested; a text with no alphanumeric
        content contributes nothing but is not an error.
        """
        if source not in TEXT_SOURCES:
            self._reject(where, f"unknown text source {source!r}")
            return 0
        if video_id not in self._videos:
            self._reject(where, f"text references unknown video {video_id!r}")
            return 0
        if not (
            isinstance(start_s, (int, float))
            and isinstance(end_s, (int, float))
            and math.isfinite(start_s)
            and math.isfinite(end_s)
            and start_s < end_s
        ):
            self._reject(where, f"bad interval [{start_s!r}, {end_s!r})")
            return 0
        tokens = tokenize_text(str(text))
        n = 0
        for token in tokens:
            if self.add_detection(video_id, source, token, 1.0, start_s, end_s, where):
                n += 1
        return len(tokens)

    def add_map_vector(
        self,
        video_id: str,
        vector,
        where: tuple[str, int] | None = None,
    ) -> bool:
        if video_id not in self._videos:
            return self._reject(where, f"map vector references unknown video {video_id!r}")
        if video_id in self._vectors:
            return self._reject(where, f"duplicate map vector for video {video_id!r}")
        try:
            arr = np.asarray(vector, dtype=np.float64)
        except (TypeError, ValueError):
            return self._reject(where, f"map vector for {video_id!r} is not numeric")
        if arr.ndim != 1 or arr.size == 0 or not np.all(np.isfinite(arr)):
            return self._reject(where, f"map vector for {video_id!r} must be a non-empty finite 1-d array")
        if self._dim is None:
            self._dim = int(arr.size)
        elif arr.size != self._dim:
            return self._reject(
                where,
                f"map vector for {video_id!r} has dimension {arr.size}, dataset uses {self._dim}",
            )
        self._vectors[video_id] = arr
        return True

    def build(self) -> "FeatureStore":
        return FeatureStore(self)


class FeatureStore:
    """Immutable index over ingested videos, shots, postings, and map vectors."""

    def __init__(self, builder: DatasetBuilder):
        self.interval_s = builder.interval_s
        self.videos: dict[str, VideoMeta] = dict(builder._videos)
        self.video_ids: list[str] = list(builder._video_ids)
        self.shots: list[Shot] = list(builder._shots)
        self._video_span = dict(builder._video_span)
        self._shot_ord = {s.shot_id: o for o, s in enumerate(self.shots)}

        n_shots = len(self.shots)
        n_videos = len(self.video_ids)
        video_ord = {vid: o for o, vid in enumerate(self.video_ids)}

        # Lexicographic ranks drive the deterministic tie order everywhere:
        # results tie-break by (video_id, shot index) ascending.
        self.video_rank = np.empty(n_videos, dtype=np.int64)
        for rank, vid in enumerate(sorted(self.video_ids)):
            self.video_rank[video_ord[vid]] = rank

        self.shot_video_ord = np.empty(n_shots, dtype=np.int64)
        shot_index = np.empty(n_shots, dtype=np.int64)
        for o, s in enumerate(self.shots):
            self.shot_video_ord[o] = video_ord[s.video_id]
            shot_index[o] = s.index
        # (video rank, index) packed into one sortable int64 key
        self.shot_rank = self.video_rank[self.shot_video_ord] * (1 << 32) + shot_index

        self.shots_per_video = np.zeros(n_videos, dtype=np.int64)
        for vid, (_, count) in self._video_span.items():
            self.shots_per_video[video_ord[vid]] = count

        # Merge accumulated postings: per (category, label), unique shot
        # ordinals with max confidence over contributing detections.
        self._postings: dict[tuple[str, str], tuple[np.ndarray, np.ndarray]] = {}
        for key in sorted(builder._acc):
            ord_list, conf_list = builder._acc[key]
            ords = np.asarray(ord_list, dtype=np.int64)
            confs = np.asarray(conf_list, dtype=np.float64)
            order = np.argsort(ords, kind="stable")
            ords = ords[order]
            confs = confs[order]
            starts = np.flatnonzero(np.concatenate(([True], ords[1:] != ords[:-1])))
            self._postings[key] = (ords[starts], np.maximum.reduceat(confs, starts))

        # CSR by shot for profiles: label table + per-shot slices.
        self.label_table: list[tuple[str, str]] = list(self._postings)
        total = sum(len(o) for o, _ in self._postings.values())
        all_shots = np.empty(total, dtype=np.int64)
        all_labels = np.empty(total, dtype=np.int64)
        all_confs = np.empty(total, dtype=np.float64)
        pos = 0
        for label_ord, key in enumerate(self.label_table):
            ords, confs = self._postings[key]
            n = len(ords)
            all_shots[pos : pos + n] = ords
            all_labels[pos : pos + n] = label_ord
            all_confs[pos : pos + n] = confs
            pos += n
        order = np.argsort(all_shots, kind="stable")
        shots_sorted = all_shots[order]
        self._csr_labels = all_labels[order]
        self._csr_confs = all_confs[order]
        self._csr_offsets = np.searchsorted(shots_sorted, np.arange(n_shots + 1))

        self._vocab: list[VocabularyEntry] = []
        for (category, label), (ords, confs) in self._postings.items():
            top = np.lexsort((self.shot_rank[ords], -confs))[:3]
            self._vocab.append(
                VocabularyEntry(
                    label=label,
                    category=category,
                    shot_frequency=len(ords),
                    example_shot_ids=tuple(self.shots[ords[i]].shot_id for i in top),
                )
            )

        self._vec_ids = sorted(builder._vectors)
        self._vec_row = {vid: i for i, vid in enumerate(self._vec_ids)}
        self.vector_dim = builder._dim
        if self._vec_ids:
            self._vec = np.stack([builder._vectors[v] for v in self._vec_ids])
        else:
            self._vec = np.zeros((0, 0), dtype=np.float64)

        self.summary = DatasetSummary(
            videos=len(self.videos),
            shots=n_shots,
            detections=builder._detections,
            postings=total,
            vocabulary_size=len(self._postings),
            rejections=list(builder.rejections),
        )

    # -- lookups -----------------------------------------------------------

    def get_video(self, video_id: str) -> VideoMeta:
        try:
            return self.videos[video_id]
        except KeyError:
            raise NotFound(f"unknown video {video_id!r}") from None

    def video_shots(self, video_id: str) -> list[Shot]:
        self.get_video(video_id)
        first, count = self._video_span[video_id]
        return self.shots[first : first + count]

    def get_shot(self, shot_id: str) -> Shot:
        try:
            return self.shots[self._shot_ord[shot_id]]
        except KeyError:
            raise NotFound(f"unknown shot {shot_id!r}") from None

    def shot_ordinal(self, shot_id: str) -> int:
        try:
            return self._shot_ord[shot_id]
        except KeyError:
            raise NotFound(f"unknown shot {shot_id!r}") from None

    def shot_postings(self, shot_id: str) -> list[tuple[str, str, float]]:
        """All (category, label, confidence) postings of one shot, sorted by
        confidence descending (ties: category, then label ascending)."""
        ord_ = self.shot_ordinal(shot_id)
        lo, hi = self._csr_offsets[ord_], self._csr_offsets[ord_ + 1]
        rows = [
            (*self.label_table[self._csr_labels[i]], float(self._csr_confs[i]))
            for i in range(lo, hi)
        ]
        rows.sort(key=lambda r: (-r[2], r[0], r[1]))
        return rows

    def shot_profile(self, shot_id: str, k: int = 5) -> dict[str, list[tuple[str, float]]]:
        """Per-category top-k (label, confidence) lists for one shot."""
        if k < 1:
            raise InvalidArgument(f"k must be >= 1, got {k}")
        profile: dict[str, list[tuple[str, float]]] = {c: [] for c in CATEGORIES}
        for category, label, conf in self.shot_postings(shot_id):
            bucket = profile[category]
            if len(bucket) < k:
                bucket.append((label, conf))
        return profile

    def vocabulary(self, category: str | None = None) -> list[VocabularyEntry]:
        """One entry per distinct (category, label), ordered by (category, label)."""
        if category is not None and category not in CATEGORIES:
            raise InvalidArgument(f"unknown category {category!r}")
        if category is None:
            return list(self._vocab)
        return [e for e in self._vocab if e.category == category]

    def postings(self, category: str, label: str) -> tuple[np.ndarray, np.ndarray]:
        """Sorted shot ordinals and aligned max confidences for one label."""
        empty = (np.empty(0, dtype=np.int64), np.empty(0, dtype=np.float64))
        return self._postings.get((category, label), empty)

    def video_span(self, video_id: str) -> tuple[int, int]:
        return self._video_span[video_id]

    # -- map vectors --------------------------------------------------------

    @property
    def vector_video_ids(self) -> list[str]:
        return list(self._vec_ids)

    def map_vector(self, video_id: str) -> np.ndarray | None:
        row = self._vec_row.get(video_id)
        return None if row is None else self._vec[row]
