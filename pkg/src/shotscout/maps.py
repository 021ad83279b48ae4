"""Video-level retrieval: frequency / tf-idf ranking and vector similarity.

A video qualifies for a segment iff every term matches at least one of its
shots. The frequency matcher scores by total matching-shot count; the tf-idf
matcher normalizes by video length and discounts ubiquitous terms. Vector
similarity (cosine over per-video map vectors) drives vertical navigation.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import InvalidArgument, NotFound, SimilarityUndefined
from .models import RankedVideo
from .queries import term_text
from .shots import _resolve_atom, check_paging

MATCHERS = ("frequency", "tfidf")


def _term_shot_ordinals(store, term) -> np.ndarray:
    """Sorted ordinals of shots matching every token of one term."""
    ordinals = None
    for category, token, threshold in term.atoms():
        atom = _resolve_atom(store, category, token, threshold)
        if ordinals is None:
            ordinals = atom.ordinals
        else:
            ordinals = ordinals[np.isin(ordinals, atom.ordinals, assume_unique=True)]
        if ordinals.size == 0:
            break
    return ordinals


def search_videos(
    store,
    segment,
    matcher: str = "frequency",
    limit: int | None = None,
    offset: int = 0,
) -> tuple[int, list[RankedVideo]]:
    """Ranked videos for a conjunctive segment; returns (total, page).

    frequency: score = sum over terms of the video's matching-shot count.
    tfidf: score = sum over terms of (count / |shots of video|) * ln(1 +
    N_videos / df(term)), df = number of videos matching that term alone.
    Order: score descending, then video_id ascending. Both matchers return
    the same video set.
    """
    if matcher not in MATCHERS:
        raise InvalidArgument(f"unknown matcher {matcher!r}; expected one of {', '.join(MATCHERS)}")
    if not segment:
        raise InvalidArgument("segment must contain at least one term")
    check_paging(limit, offset)

    n_videos = len(store.video_ids)
    per_term_counts = []
    for term in segment:
        ordinals = _term_shot_ordinals(store, term)
        counts = np.bincount(store.shot_video_ord[ordinals], minlength=n_videos)
        if not counts.any():
            return 0, []
        per_term_counts.append(counts)

    qualifies = per_term_counts[0] >= 1
    for counts in per_term_counts[1:]:
        qualifies &= counts >= 1
    video_ords = np.flatnonzero(qualifies)
    if video_ords.size == 0:
        return 0, []

    scores = np.zeros(video_ords.size, dtype=np.float64)
    if matcher == "frequency":
        for counts in per_term_counts:
            scores = scores + counts[video_ords]
    else:
        length = store.shots_per_video[video_ords]
        for counts in per_term_counts:
            df = int(np.count_nonzero(counts))
            idf = math.log(1 + n_videos / df)
            scores = scores + (counts[video_ords] / length) * idf

    order = np.lexsort((store.video_rank[video_ords], -scores))
    total = int(order.size)
    stop = total if limit is None else min(total, offset + limit)
    page = []
    for i in order[offset:stop]:
        ord_ = int(video_ords[i])
        terms = tuple(
            (term_text(t.category, t.tokens, t.threshold), int(per_term_counts[j][ord_]))
            for j, t in enumerate(segment)
        )
        page.append(RankedVideo(store.video_ids[ord_], float(scores[i]), terms))
    return total, page


def cosine(u, v) -> float:
    """Cosine similarity of two equal-dimension non-zero vectors, in [-1, 1]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.ndim != 1 or v.ndim != 1:
        raise InvalidArgument("cosine expects 1-d vectors")
    if u.size != v.size:
        raise InvalidArgument(f"dimension mismatch: {u.size} vs {v.size}")
    if u.size == 0:
        raise InvalidArgument("cosine expects non-empty vectors")
    norm_u = float(np.linalg.norm(u))
    norm_v = float(np.linalg.norm(v))
    if norm_u == 0.0 or norm_v == 0.0:
        raise SimilarityUndefined("cosine similarity is undefined for a zero vector")
    value = float(np.dot(u, v)) / (norm_u * norm_v)
    return max(-1.0, min(1.0, value))


def similar_videos(store, video_id: str, k: int) -> list[tuple[str, float]]:
    """The k most cosine-similar vectored videos, the video itself excluded.

    Order: cosine descending, then video_id ascending. Videos without a map
    vector are skipped, as are zero vectors (their similarity is undefined).
    """
    if not isinstance(k, int) or k < 1:
        raise InvalidArgument(f"k must be a positive integer, got {k!r}")
    store.get_video(video_id)
    source = store.map_vector(video_id)
    if source is None:
        raise NotFound(f"video {video_id!r} has no map vector")
    if not np.any(source):
        raise SimilarityUndefined(f"video {video_id!r} has a zero map vector")
    neighbors = []
    for other_id in store.vector_video_ids:
        if other_id == video_id:
            continue
        other = store.map_vector(other_id)
        if not np.any(other):
            continue
        neighbors.append((other_id, cosine(source, other)))
    neighbors.sort(key=lambda n: (-n[1], n[0]))
    return neighbors[:k]
