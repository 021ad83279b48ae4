"""Shot-level ranked search over the inverted index.

A query segment is a conjunction: a shot qualifies iff every term has a
posting with matching (category, label) and confidence >= the term's
threshold. Phrase terms expand to one atomic term per token, all of which
must match within the shot. Score = sum of matched confidences, accumulated
in term order; ties order by (video_id, shot index) ascending.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument
from .models import ALL_CATEGORY, FEATURE_CATEGORIES, RankedShot
from .queries import Term

# Alphabetical, so the max-confidence tie in a --all term resolves to the
# first category by name.
_ALL_SOURCES = tuple(sorted(FEATURE_CATEGORIES))


def check_paging(limit: int | None, offset: int) -> None:
    if limit is not None and (not isinstance(limit, int) or limit < 1):
        raise InvalidArgument(f"limit must be a positive integer, got {limit!r}")
    if not isinstance(offset, int) or offset < 0:
        raise InvalidArgument(f"offset must be a non-negative integer, got {offset!r}")


@dataclass(frozen=True, slots=True)
class _Atom:
    """One atomic term resolved against the index."""

    category: str  # as queried; may be "all"
    token: str
    ordinals: np.ndarray  # sorted shot ordinals with confidence >= threshold
    confidences: np.ndarray
    sources: np.ndarray | None  # for "all": index into _ALL_SOURCES per posting


def _resolve_atom(store, category: str, token: str, threshold: float) -> _Atom:
    if category == ALL_CATEGORY:
        parts = []
        for src, name in enumerate(_ALL_SOURCES):
            ords, confs = store.postings(name, token)
            if ords.size:
                parts.append((ords, confs, np.full(ords.size, src, dtype=np.int64)))
        if not parts:
            ords = np.empty(0, dtype=np.int64)
            confs = np.empty(0, dtype=np.float64)
            sources = np.empty(0, dtype=np.int64)
        else:
            ords = np.concatenate([p[0] for p in parts])
            confs = np.concatenate([p[1] for p in parts])
            sources = np.concatenate([p[2] for p in parts])
            # Per shot keep the max confidence; tie goes to the first
            # category in alphabetical order.
            order = np.lexsort((sources, -confs, ords))
            ords, confs, sources = ords[order], confs[order], sources[order]
            keep = np.ones(ords.size, dtype=bool)
            keep[1:] = ords[1:] != ords[:-1]
            ords, confs, sources = ords[keep], confs[keep], sources[keep]
    else:
        ords, confs = store.postings(category, token)
        sources = None
    if threshold > 0.0:
        keep = confs >= threshold
        ords, confs = ords[keep], confs[keep]
        if sources is not None:
            sources = sources[keep]
    return _Atom(category, token, ords, confs, sources)


class SegmentHits:
    """All shots matching a segment, with per-atom confidences.

    ``ordinals`` is sorted ascending (store order, not rank order); ``scores``
    aligns with it. ``ranked(store, i)`` materializes one hit.
    """

    def __init__(self, ordinals: np.ndarray, scores: np.ndarray, atoms: list[tuple[_Atom, np.ndarray, np.ndarray]]):
        self.ordinals = ordinals
        self.scores = scores
        self._atoms = atoms  # (atom, confidence per hit, matched mask per hit)

    def ranked(self, store, i: int) -> RankedShot:
        shot = store.shots[self.ordinals[i]]
        matched = []
        for atom, confs, mask in self._atoms:
            if not mask[i]:
                continue
            category = atom.category
            if atom.sources is not None:
                idx = np.searchsorted(atom.ordinals, self.ordinals[i])
                category = _ALL_SOURCES[atom.sources[idx]]
            matched.append((category, atom.token, float(confs[i])))
        return RankedShot(shot.shot_id, shot.video_id, shot.start_s, float(self.scores[i]), tuple(matched))


def _resolve_segment(store, segment) -> list[_Atom]:
    if not segment:
        raise InvalidArgument("segment must contain at least one term")
    return [
        _resolve_atom(store, category, token, threshold)
        for term in segment
        for category, token, threshold in term.atoms()
    ]


def _aligned(atom: _Atom, ordinals: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Confidence of ``atom`` at each of ``ordinals`` (0 where absent) and a
    presence mask."""
    if atom.ordinals.size == 0:
        zero = np.zeros(ordinals.size, dtype=np.float64)
        return zero, np.zeros(ordinals.size, dtype=bool)
    idx = np.searchsorted(atom.ordinals, ordinals)
    idx_safe = np.minimum(idx, atom.ordinals.size - 1)
    mask = atom.ordinals[idx_safe] == ordinals
    confs = np.where(mask, atom.confidences[idx_safe], 0.0)
    return confs, mask


def evaluate_segment(store, segment, require_all: bool = True) -> SegmentHits:
    """Match a segment against every shot.

    ``require_all`` True is the conjunction used by queries; False relaxes to
    "at least one term matches" (used by similar-shot search), with absent
    terms contributing nothing to the score.
    """
    atoms = _resolve_segment(store, segment)
    if require_all:
        candidates = None
        for atom in sorted(atoms, key=lambda a: a.ordinals.size):
            if candidates is None:
                candidates = atom.ordinals
            else:
                candidates = candidates[np.isin(candidates, atom.ordinals, assume_unique=True)]
            if candidates.size == 0:
                break
        candidates = np.unique(candidates) if candidates is not None and candidates.size else np.empty(0, dtype=np.int64)
    else:
        present = [a.ordinals for a in atoms if a.ordinals.size]
        candidates = np.unique(np.concatenate(present)) if present else np.empty(0, dtype=np.int64)

    scores = np.zeros(candidates.size, dtype=np.float64)
    rows = []
    # Accumulate in term order so the floating-point addition sequence is
    # exactly the oracle's.
    for atom in atoms:
        confs, mask = _aligned(atom, candidates)
        scores = scores + confs
        rows.append((atom, confs, mask))
    return SegmentHits(candidates, scores, rows)


def rank_order(store, hits: SegmentHits) -> np.ndarray:
    """Indices into ``hits`` ordered by score descending, then (video_id,
    shot index) ascending."""
    return np.lexsort((store.shot_rank[hits.ordinals], -hits.scores))


def search_shots(store, segment, limit: int | None = None, offset: int = 0) -> tuple[int, list[RankedShot]]:
    """Ranked shots matching a conjunctive segment; returns (total, page)."""
    check_paging(limit, offset)
    hits = evaluate_segment(store, segment)
    order = rank_order(store, hits)
    total = int(order.size)
    stop = total if limit is None else min(total, offset + limit)
    return total, [hits.ranked(store, int(i)) for i in order[offset:stop]]


def shots_like(store, shot_id: str, limit: int | None = None) -> tuple[int, list[RankedShot]]:
    """Shots sharing labels with the given shot, the shot itself excluded.

    The source shot's top-5 postings (by confidence) become a segment
    evaluated with relaxed conjunction: one shared label suffices, score is
    the sum of the confidences of whichever labels match.
    """
    check_paging(limit, 0)
    top = store.shot_postings(shot_id)[:5]
    if not top:
        return 0, []
    segment = [Term(category, (label,)) for category, label, _ in top]
    hits = evaluate_segment(store, segment, require_all=False)
    keep = hits.ordinals != store.shot_ordinal(shot_id)
    hits = SegmentHits(
        hits.ordinals[keep],
        hits.scores[keep],
        [(atom, confs[keep], mask[keep]) for atom, confs, mask in hits._atoms],
    )
    order = rank_order(store, hits)
    total = int(order.size)
    stop = total if limit is None else min(total, limit)
    return total, [hits.ranked(store, int(i)) for i in order[:stop]]
