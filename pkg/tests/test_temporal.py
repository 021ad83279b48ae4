"""Ordered multi-segment (temporal sequence) search."""
import math
import random

import pytest

from shotscout.errors import InvalidArgument
from shotscout.queries import parse
from shotscout.temporal import DEFAULT_WINDOW_S, search_temporal

from oracles import (
    assert_matches_equal,
    oracle_search_temporal,
    random_dataset,
    random_segment,
)


def segs(query: str):
    return parse(query).segments


def test_sequence_example(store):
    total, matches = search_temporal(store, segs("--objects car --> --events racing"), 30.0)
    assert total == 1
    (m,) = matches
    assert m.video_id == "v2"
    assert [h.shot_id for h in m.hits] == ["v2#0", "v2#2"]
    assert m.score == pytest.approx(1.2)
    assert m.hits[0].matched == (("objects", "car", 0.3),)
    assert m.hits[1].matched == (("events", "racing", 0.9),)


def test_window_excludes_distant_pairs(store):
    assert search_temporal(store, segs("--objects car --> --events racing"), 1.0) == (0, [])


def test_window_boundary_inclusive(store):
    total, matches = search_temporal(store, segs("--objects car --> --events racing"), 2.0)
    assert total == 1 and matches[0].video_id == "v2"


def test_order_must_increase_within_video(store):
    # racing is at v2#2, car at v2#0: no car after racing anywhere
    assert search_temporal(store, segs("--events racing --> --objects car"), 30.0) == (0, [])


def test_same_label_twice_needs_two_shots(store):
    total, matches = search_temporal(store, segs("--objects car --> --objects car"), 30.0)
    assert total == 1
    (m,) = matches
    assert m.video_id == "v1"
    assert [h.shot_id for h in m.hits] == ["v1#0", "v1#1"]
    assert m.score == pytest.approx(1.75)


def test_best_assignment_prefers_score_then_earliest(store):
    # "the" hits all three v2 shots at 1.0; the best chain is the earliest
    total, matches = search_temporal(store, segs("--stt the --> --stt the --> --stt the"), 30.0)
    assert [h.shot_id for h in matches[0].hits] == ["v2#0", "v2#1", "v2#2"]
    assert matches[0].score == 3.0


def test_single_segment_rejected(store):
    with pytest.raises(InvalidArgument):
        search_temporal(store, segs("--objects car"), 30.0)


def test_window_validation(store):
    for bad in (0.0, -1.0, math.nan, math.inf):
        with pytest.raises(InvalidArgument):
            search_temporal(store, segs("--objects car --> --objects car"), bad)


def test_limit_and_score_ties():
    from shotscout.store import DatasetBuilder

    b = DatasetBuilder()
    for vid, gap_shot in (("b", 2), ("a", 1)):
        b.add_video(vid, 3.0)
        b.add_detection(vid, "objects", "x", 0.5, 0.0, 1.0)
        b.add_detection(vid, "objects", "y", 0.5, float(gap_shot), gap_shot + 1.0)
    store = b.build()
    total, matches = search_temporal(store, segs("--objects x --> --objects y"), 30.0)
    assert total == 2
    assert [m.video_id for m in matches] == ["a", "b"]  # equal scores: id order
    total, matches = search_temporal(store, segs("--objects x --> --objects y"), 30.0, limit=1)
    assert total == 2 and [m.video_id for m in matches] == ["a"]
    with pytest.raises(InvalidArgument):
        search_temporal(store, segs("--objects x --> --objects y"), 30.0, limit=0)


def test_default_window():
    assert DEFAULT_WINDOW_S == 30.0


def test_matches_brute_force():
    rng = random.Random(163)
    for _ in range(50):
        store, truth = random_dataset(rng)
        n_segments = rng.randint(2, 3)
        segments = [random_segment(rng, truth, max_terms=2) for _ in range(n_segments)]
        window = rng.choice((0.5, 1.0, 2.0, 5.0, 30.0))
        total, matches = search_temporal(store, segments, window)
        want = oracle_search_temporal(truth, segments, window)
        assert total == len(want)
        assert_matches_equal(want, matches)


def test_widening_window_never_loses_videos():
    rng = random.Random(167)
    for _ in range(30):
        store, truth = random_dataset(rng)
        segments = [random_segment(rng, truth, max_terms=2) for _ in range(2)]
        _, narrow = search_temporal(store, segments, 1.0)
        _, wide = search_temporal(store, segments, 50.0)
        narrow_ids = {m.video_id for m in narrow}
        wide_ids = {m.video_id for m in wide}
        assert narrow_ids <= wide_ids
        wide_scores = {m.video_id: m.score for m in wide}
        for m in narrow:
            assert wide_scores[m.video_id] >= m.score


def test_hits_strictly_increase():
    rng = random.Random(173)
    for _ in range(30):
        store, truth = random_dataset(rng)
        segments = [random_segment(rng, truth, max_terms=2) for _ in range(rng.randint(2, 3))]
        _, matches = search_temporal(store, segments, 10.0)
        for m in matches:
            indices = [int(h.shot_id.rsplit("#", 1)[1]) for h in m.hits]
            assert indices == sorted(indices) and len(set(indices)) == len(indices)
            starts = [h.start_s for h in m.hits]
            for a, b in zip(starts, starts[1:]):
                assert b - a <= 10.0
            assert len(m.hits) == len(segments)
