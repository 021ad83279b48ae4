"""Brute-force reference implementations and random data generators.

Every oracle here is a straight linear scan over a plain-python "truth"
table built independently of the engine's index structures: detections are
assigned to shots by checking every shot of the video, postings merge by
max in a dict, and searches enumerate everything.

Confidences and thresholds are drawn from a dyadic grid (multiples of
1/128), so every score is an exact float sum: oracle and engine agree
bit-for-bit and comparisons can use plain equality. Where a formula mixes
in irrational factors (tf-idf), both sides evaluate the identical
expression, which again makes results comparable exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from shotscout.maps import cosine
from shotscout.queries import Term
from shotscout.store import DatasetBuilder, tokenize_text

FEATURE_CATEGORIES = ("concepts", "objects", "events", "places")
ALL_SOURCES = tuple(sorted(FEATURE_CATEGORIES))

LABEL_POOL = {
    "concepts": ("anthem", "braid", "copper", "drizzle", "ember"),
    "objects": ("fir", "gable", "hinge", "ivory", "jug"),
    "events": ("kiln", "lagoon", "marble", "nectar"),
    "places": ("orchard", "pylon", "quarry", "ridge"),
}
TEXT_POOL = ("alder", "basalt", "cairn", "delta", "edge", "flume")


def grid_conf(rng) -> float:
    return rng.randrange(1, 129) / 128.0


def grid_threshold(rng) -> float:
    return rng.randrange(0, 129) / 128.0


@dataclass
class TruthShot:
    shot_id: str
    video_id: str
    index: int
    start_s: float
    end_s: float


@dataclass
class Truth:
    """Plain-python mirror of a dataset, built without the engine's index."""

    interval_s: float
    videos: list[tuple[str, float]] = field(default_factory=list)  # (id, duration)
    shots: list[TruthShot] = field(default_factory=list)
    # (category, label) -> {shot_id: max confidence}
    postings: dict[tuple[str, str], dict[str, float]] = field(default_factory=dict)
    vectors: dict[str, list[float]] = field(default_factory=dict)

    def video_shots(self, video_id: str) -> list[TruthShot]:
        return [s for s in self.shots if s.video_id == video_id]

    def confidence(self, category: str, token: str, shot_id: str) -> tuple[float, str] | None:
        """Best posting for an atomic term on one shot: (confidence, category).

        For the pseudo-category "all", the max over the four feature
        categories, ties to the alphabetically first category.
        """
        if category != "all":
            conf = self.postings.get((category, token), {}).get(shot_id)
            return None if conf is None else (conf, category)
        best = None
        for source in ALL_SOURCES:
            conf = self.postings.get((source, token), {}).get(shot_id)
            if conf is not None and (best is None or conf > best[0]):
                best = (conf, source)
        return best


def _truth_add_detection(truth: Truth, video_id: str, duration: float, category: str,
                         label: str, conf: float, start_s: float, end_s: float) -> None:
    # Scan every shot of the video; strict-positive overlap assigns.
    for shot in truth.shots:
        if shot.video_id != video_id:
            continue
        if min(shot.end_s, end_s) - max(shot.start_s, start_s) > 0:
            key = (category, label)
            bucket = truth.postings.setdefault(key, {})
            if conf > bucket.get(shot.shot_id, -1.0):
                bucket[shot.shot_id] = conf


def truth_from_records(records: dict, interval_s: float = 1.0) -> Truth:
    """Build a truth table from a records dict (as in fixtures.demo_records),
    sharing none of the engine's index machinery."""
    truth = Truth(interval_s)
    for v in records["videos"]:
        duration = v["duration_s"]
        truth.videos.append((v["id"], duration))
        count = 1
        while count * interval_s < duration:
            count += 1
        if (count - 1) * interval_s >= duration:
            count -= 1
        for k in range(count):
            truth.shots.append(
                TruthShot(
                    f"{v['id']}#{k}", v["id"], k,
                    k * interval_s, min((k + 1) * interval_s, duration),
                )
            )
    durations = dict(truth.videos)
    for d in records.get("detections", ()):
        _truth_add_detection(
            truth, d["video_id"], durations[d["video_id"]], d["category"],
            d["label"], d["confidence"], d["start_s"], d["end_s"],
        )
    for t in records.get("text", ()):
        for token in tokenize_text(t["text"]):
            _truth_add_detection(
                truth, t["video_id"], durations[t["video_id"]], t["source"],
                token, 1.0, t["start_s"], t["end_s"],
            )
    for m in records.get("mapvectors", ()):
        truth.vectors[m["video_id"]] = list(m["vector"])
    return truth


def random_dataset(rng, max_videos=6, max_shots=10, max_detections=60,
                   with_text=True, with_vectors=False, vector_dim=3):
    """A random store plus its independently built truth table."""
    interval = rng.choice((0.5, 1.0, 2.0))
    builder = DatasetBuilder(interval)
    truth = Truth(interval)

    n_videos = rng.randint(1, max_videos)
    for i in range(n_videos):
        video_id = f"{rng.choice('qrstuvwz')}{rng.randrange(100):02d}v{i}"
        if rng.random() < 0.3:
            duration = rng.randint(1, max_shots) * interval
        else:
            duration = round(rng.uniform(0.25, max_shots * interval), 2)
        builder.add_video(video_id, duration)
        truth.videos.append((video_id, duration))
        # Independent segmentation: count by linear scan, bounds by formula.
        count = 1
        while count * interval < duration:
            count += 1
        if (count - 1) * interval >= duration:
            count -= 1
        for k in range(count):
            truth.shots.append(
                TruthShot(
                    f"{video_id}#{k}",
                    video_id,
                    k,
                    k * interval,
                    min((k + 1) * interval, duration),
                )
            )

    for _ in range(rng.randint(0, max_detections)):
        video_id, duration = rng.choice(truth.videos)
        category = rng.choice(FEATURE_CATEGORIES)
        label = rng.choice(LABEL_POOL[category])
        conf = grid_conf(rng)
        a = round(rng.uniform(-0.5, duration), 2)
        b = round(a + rng.uniform(0.05, 3 * interval), 2)
        if builder.add_detection(video_id, category, label, conf, a, b):
            pass
        _truth_add_detection(truth, video_id, duration, category, label, conf, a, b)

    if with_text:
        for _ in range(rng.randint(0, 4)):
            video_id, duration = rng.choice(truth.videos)
            source = rng.choice(("ocr", "stt"))
            words = [rng.choice(TEXT_POOL) for _ in range(rng.randint(1, 4))]
            a = round(rng.uniform(0, max(duration - 0.1, 0.05)), 2)
            b = round(a + rng.uniform(0.1, duration), 2)
            text = " ".join(words)
            builder.add_text(video_id, source, a, b, text)
            for token in tokenize_text(text):
                _truth_add_detection(truth, video_id, duration, source, token, 1.0, a, b)

    if with_vectors:
        for video_id, _ in truth.videos:
            if rng.random() < 0.8:
                vec = [rng.randrange(-8, 9) / 4.0 for _ in range(vector_dim)]
                if builder.add_map_vector(video_id, vec):
                    truth.vectors[video_id] = vec

    return builder.build(), truth


def random_segment(rng, truth: Truth, max_terms=3) -> list[Term]:
    """Terms biased toward labels that exist in the truth table."""
    terms = []
    present = sorted(truth.postings)
    for _ in range(rng.randint(1, max_terms)):
        roll = rng.random()
        if present and roll < 0.75:
            category, label = rng.choice(present)
            if category in ("ocr", "stt") and rng.random() < 0.4:
                # phrase over known text tokens
                pool = sorted({l for c, l in present if c == category})
                tokens = tuple(rng.choice(pool) for _ in range(rng.randint(1, 3)))
                terms.append(Term(category, tokens, rng.choice((0.0, grid_threshold(rng)))))
                continue
            if rng.random() < 0.15:
                category = "all"
        else:
            category = rng.choice(FEATURE_CATEGORIES + ("ocr", "stt", "all"))
            label = rng.choice(LABEL_POOL[rng.choice(FEATURE_CATEGORIES)] + TEXT_POOL)
        threshold = 0.0 if rng.random() < 0.5 else grid_threshold(rng)
        terms.append(Term(category, (label,), threshold))
    return terms


# -- searches ----------------------------------------------------------------


def oracle_shot_hits(truth: Truth, segment, require_all: bool = True) -> list[dict]:
    """Unordered matches with scores and matched lists.

    Strict mode needs every atom; relaxed mode keeps a shot when any atom
    matches and scores only the atoms that do.
    """
    hits = []
    for shot in truth.shots:
        score = 0.0
        matched = []
        ok = True
        for term in segment:
            for category, token, threshold in term.atoms():
                best = truth.confidence(category, token, shot.shot_id)
                if best is None or best[0] < threshold:
                    if require_all:
                        ok = False
                        break
                    continue
                conf, source = best
                score += conf
                matched.append((source, token, conf))
            if not ok:
                break
        if not require_all:
            ok = bool(matched)
        if ok:
            hits.append(
                {
                    "shot_id": shot.shot_id,
                    "video_id": shot.video_id,
                    "index": shot.index,
                    "start_s": shot.start_s,
                    "score": score,
                    "matched": matched,
                }
            )
    return hits


def oracle_search_shots(truth: Truth, segment, require_all: bool = True) -> list[dict]:
    hits = oracle_shot_hits(truth, segment, require_all)
    hits.sort(key=lambda h: (-h["score"], h["video_id"], h["index"]))
    return hits


def oracle_search_videos(truth: Truth, segment, matcher="frequency") -> list[dict]:
    def term_matches(term, shot_id):
        for category, token, threshold in term.atoms():
            best = truth.confidence(category, token, shot_id)
            if best is None or best[0] < threshold:
                return False
        return True

    counts = {}
    for video_id, _ in truth.videos:
        shots = truth.video_shots(video_id)
        counts[video_id] = [
            sum(1 for s in shots if term_matches(term, s.shot_id)) for term in segment
        ]
    n_videos = len(truth.videos)
    results = []
    for video_id, _ in truth.videos:
        per_term = counts[video_id]
        if any(c == 0 for c in per_term):
            continue
        score = 0.0
        if matcher == "frequency":
            for c in per_term:
                score += c
        else:
            n_shots = len(truth.video_shots(video_id))
            for j, c in enumerate(per_term):
                df = sum(1 for v, _ in truth.videos if counts[v][j] > 0)
                score += (c / n_shots) * math.log(1 + n_videos / df)
        results.append({"video_id": video_id, "score": score, "per_term_counts": per_term})
    results.sort(key=lambda r: (-r["score"], r["video_id"]))
    return results


def oracle_search_temporal(truth: Truth, segments, window_s) -> list[dict]:
    """Exhaustive enumeration of all shot tuples per video."""
    per_segment = [oracle_shot_hits(truth, segment) for segment in segments]
    results = []
    for video_id, _ in truth.videos:
        lists = [[h for h in hits if h["video_id"] == video_id] for hits in per_segment]
        if any(not l for l in lists):
            continue
        best = None
        for combo in product(*lists):
            indices = tuple(h["index"] for h in combo)
            if any(indices[i + 1] <= indices[i] for i in range(len(indices) - 1)):
                continue
            if any(
                combo[i + 1]["start_s"] - combo[i]["start_s"] > window_s
                for i in range(len(combo) - 1)
            ):
                continue
            score = 0.0
            for h in combo:
                score += h["score"]
            key = (-score, indices)
            if best is None or key < best[0]:
                best = (key, combo, score)
        if best is not None:
            results.append(
                {
                    "video_id": video_id,
                    "score": best[2],
                    "shot_ids": [h["shot_id"] for h in best[1]],
                }
            )
    results.sort(key=lambda r: (-r["score"], r["video_id"]))
    return results


def oracle_similar_videos(truth: Truth, video_id: str, k: int) -> list[tuple[str, float]]:
    source = truth.vectors[video_id]
    rows = []
    for other_id in sorted(truth.vectors):
        if other_id == video_id:
            continue
        other = truth.vectors[other_id]
        if not any(other):
            continue
        rows.append((other_id, cosine(source, other)))
    rows.sort(key=lambda r: (-r[1], r[0]))
    return rows[:k]


# -- comparisons ---------------------------------------------------------------


def assert_shots_equal(expected: list[dict], actual_results: list) -> None:
    assert len(expected) == len(actual_results)
    for want, got in zip(expected, actual_results):
        assert got.shot_id == want["shot_id"]
        assert got.video_id == want["video_id"]
        assert got.score == want["score"]
        assert list(got.matched) == want["matched"]


def assert_videos_equal(expected: list[dict], actual_results: list) -> None:
    assert len(expected) == len(actual_results)
    for want, got in zip(expected, actual_results):
        assert got.video_id == want["video_id"]
        assert got.score == want["score"]
        assert [n for _, n in got.per_term_counts] == want["per_term_counts"]


def assert_matches_equal(expected: list[dict], actual_results: list) -> None:
    assert len(expected) == len(actual_results)
    for want, got in zip(expected, actual_results):
        assert got.video_id == want["video_id"]
        assert got.score == want["score"]
        assert [h.shot_id for h in got.hits] == want["shot_ids"]
