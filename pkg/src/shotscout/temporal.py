"""Multi-segment temporal search: ordered matches within one video.

Each query segment is evaluated with shot-search semantics; a sequence match
assigns one hit per segment such that shot indices strictly increase and
consecutive hits start at most ``window_s`` seconds apart (start-to-start).
Per video only the maximum-score assignment survives, ties resolved by the
lexicographically smallest tuple of shot indices (earliest first hit).
"""
from __future__ import annotations

import math

from .errors import InvalidArgument
from .models import SequenceMatch
from .shots import check_paging, evaluate_segment

DEFAULT_WINDOW_S = 30.0


def search_temporal(store, segments, window_s: float = DEFAULT_WINDOW_S, limit: int | None = None) -> tuple[int, list[SequenceMatch]]:
    """Best ordered per-video matches for >= 2 segments; returns (total, page).

    Global order: score descending, then video_id ascending.
    """
    if len(segments) < 2:
        raise InvalidArgument("temporal search needs at least 2 segments; use shot search for one")
    if not (isinstance(window_s, (int, float)) and math.isfinite(window_s) and window_s > 0):
        raise InvalidArgument(f"window_s must be a positive number, got {window_s!r}")
    check_paging(limit, 0)

    seg_hits = [evaluate_segment(store, segment) for segment in segments]
    if any(h.ordinals.size == 0 for h in seg_hits):
        return 0, []

    # Bucket hit positions by video; a video is viable only if every segment
    # hits it at least once.
    per_video: dict[int, list[list[int]]] = {}
    for k, hits in enumerate(seg_hits):
        for pos, ordinal in enumerate(hits.ordinals):
            buckets = per_video.setdefault(int(store.shot_video_ord[ordinal]), [[] for _ in segments])
            buckets[k].append(pos)

    matches = []
    for video_ord, buckets in per_video.items():
        if any(not bucket for bucket in buckets):
            continue
        # Chains over segments: (score, shot index tuple, hit position tuple,
        # last start_s). Keeping the lexicographically smallest index tuple
        # per score realizes the tie rule.
        chains = []
        for pos in buckets[0]:
            shot = store.shots[seg_hits[0].ordinals[pos]]
            chains.append((float(seg_hits[0].scores[pos]), (shot.index,), (pos,), shot.start_s))
        for k in range(1, len(segments)):
            extended = []
            for pos in buckets[k]:
                shot = store.shots[seg_hits[k].ordinals[pos]]
                best = None
                for score, indices, positions, last_start in chains:
                    if indices[-1] >= shot.index or shot.start_s - last_start > window_s:
                        continue
                    cand_score = score + float(seg_hits[k].scores[pos])
                    cand_indices = indices + (shot.index,)
                    if best is None or cand_score > best[0] or (cand_score == best[0] and cand_indices < best[1]):
                        best = (cand_score, cand_indices, positions + (pos,), shot.start_s)
                if best is not None:
                    extended.append(best)
            chains = extended
            if not chains:
                break
        if not chains:
            continue
        score, _, positions, _ = min(chains, key=lambda c: (-c[0], c[1]))
        hits = tuple(seg_hits[k].ranked(store, positions[k]) for k in range(len(segments)))
        matches.append(SequenceMatch(store.video_ids[video_ord], hits, score))

    matches.sort(key=lambda m: (-m.score, m.video_id))
    total = len(matches)
    stop = total if limit is None else min(total, limit)
    return total, matches[:stop]
