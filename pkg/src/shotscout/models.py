"""Domain types: dataset records, index entries, and ranked results.

All types are immutable; the store hands out the same objects to every
concurrent reader. ``to_dict`` methods define the wire field names used by
the HTTP service and the CLI (lowercase snake_case everywhere).
"""
from __future__ import annotations

from dataclasses import dataclass

CATEGORIES = ("concepts", "objects", "events", "places", "ocr", "stt")

# Deep-feature categories; what a --all term expands to (text categories have
# degenerate confidences and are excluded).
FEATURE_CATEGORIES = ("concepts", "objects", "events", "places")

ALL_CATEGORY = "all"


@dataclass(frozen=True, slots=True)
class VideoMeta:
    video_id: str
    title: str
    description: str
    tags: tuple[str, ...]
    duration_s: float

    def to_dict(self) -> dict:
        return {
            "video_id": self.video_id,
            "title": self.title,
            "description": self.description,
            "tags": list(self.tags),
            "duration_s": self.duration_s,
        }


@dataclass(frozen=True, slots=True)
class Shot:
    """One uniform fixed-interval segment of a video."""

    shot_id: str  # "<video_id>#<index>"
    video_id: str
    index: int
    start_s: float
    end_s: float
    keyframe_ref: str | None = None

    def to_dict(self) -> dict:
        return {
            "shot_id": self.shot_id,
            "video_id": self.video_id,
            "index": self.index,
            "start_s": self.start_s,
            "end_s": self.end_s,
            "keyframe_ref": self.keyframe_ref,
        }


@dataclass(frozen=True, slots=True)
class Detection:
    """One feature observation over a time interval of a video."""

    video_id: str
    category: str
    label: str
    confidence: float
    start_s: float
    end_s: float


@dataclass(frozen=True, slots=True)
class VocabularyEntry:
    label: str
    category: str
    shot_frequency: int
    example_shot_ids: tuple[str, ...]  # up to 3, highest confidence first

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "category": self.category,
            "shot_frequency": self.shot_frequency,
            "example_shot_ids": list(self.example_shot_ids),
        }


@dataclass(frozen=True, slots=True)
class RankedShot:
    shot_id: str
    video_id: str
    start_s: float
    score: float
    matched: tuple[tuple[str, str, float], ...]  # (category, label, confidence)

    def to_dict(self) -> dict:
        return {
            "shot_id": self.shot_id,
            "video_id": self.video_id,
            "start_s": self.start_s,
            "score": self.score,
            "matched": [
                {"category": c, "label": l, "confidence": conf}
                for c, l, conf in self.matched
            ],
        }


@dataclass(frozen=True, slots=True)
class RankedVideo:
    video_id: str
    score: float
    per_term_counts: tuple[tuple[str, int], ...]  # (canonical term, matching-shot count)

    def to_dict(self) -> dict:
        return {
            "video_id": self.video_id,
            "score": self.score,
            "per_term_counts": [
                {"term": t, "count": n} for t, n in self.per_term_counts
            ],
        }


@dataclass(frozen=True, slots=True)
class SequenceMatch:
    """Best ordered multi-segment match within one video."""

    video_id: str
    hits: tuple[RankedShot, ...]  # one per query segment, shot indices increasing
    score: float

    def to_dict(self) -> dict:
        return {
            "video_id": self.video_id,
            "hits": [h.to_dict() for h in self.hits],
            "score": self.score,
        }
