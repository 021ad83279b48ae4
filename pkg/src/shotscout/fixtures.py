"""Built-in datasets: a tiny racing demo and a synthetic load generator.

The demo is small enough to hand-check every search result against; the
synthetic generator streams arbitrarily large datasets to disk for
performance work. Both emit the standard manifest + JSONL layout.
"""
from __future__ import annotations

import json
import os
import random

from .store import DatasetBuilder, FeatureStore

_SVG_COLORS = ("#1f6f8b", "#99a8b2", "#e2b04a", "#cb5b45", "#5d576b", "#3a7d44")


def demo_records() -> dict:
    """The two-video racing dataset used across tests and the quickstart."""
    return {
        "videos": [
            {
                "id": "v1",
                "title": "trackside finale",
                "description": "final laps and pit action from the main straight",
                "tags": ["motorsport"],
                "duration_s": 5.0,
            },
            {
                "id": "v2",
                "title": "victory lap recap",
                "description": "celebrations after the chequered flag",
                "tags": ["motorsport", "recap"],
                "duration_s": 3.0,
            },
        ],
        "detections": [
            {"video_id": "v1", "category": "objects", "label": "car", "confidence": 0.9, "start_s": 0.0, "end_s": 1.0},
            {"video_id": "v1", "category": "places", "label": "raceway", "confidence": 0.7, "start_s": 0.0, "end_s": 1.0},
            {"video_id": "v1", "category": "objects", "label": "car", "confidence": 0.85, "start_s": 1.0, "end_s": 2.0},
            {"video_id": "v1", "category": "objects", "label": "person", "confidence": 0.6, "start_s": 1.0, "end_s": 2.0},
            {"video_id": "v1", "category": "objects", "label": "person", "confidence": 0.95, "start_s": 2.0, "end_s": 3.0},
            {"video_id": "v2", "category": "objects", "label": "car", "confidence": 0.3, "start_s": 0.0, "end_s": 1.0},
            {"video_id": "v2", "category": "concepts", "label": "sports_car", "confidence": 0.8, "start_s": 1.0, "end_s": 2.0},
            {"video_id": "v2", "category": "events", "label": "racing", "confidence": 0.9, "start_s": 2.0, "end_s": 3.0},
        ],
        "text": [
            {"video_id": "v2", "source": "stt", "start_s": 0.0, "end_s": 3.0, "text": "The race ends."},
        ],
        "mapvectors": [
            {"video_id": "v1", "vector": [1.0, 0.0]},
            {"video_id": "v2", "vector": [0.6, 0.8]},
        ],
    }


def demo_store(interval_s: float = 1.0, keyframe_pattern: str | None = None) -> FeatureStore:
    """The demo dataset ingested in-process (no files)."""
    records = demo_records()
    builder = DatasetBuilder(interval_s, keyframe_pattern)
    for v in records["videos"]:
        builder.add_video(v["id"], v["duration_s"], v["title"], v["description"], tuple(v["tags"]))
    for d in records["detections"]:
        builder.add_detection(
            d["video_id"], d["category"], d["label"], d["confidence"], d["start_s"], d["end_s"]
        )
    for t in records["text"]:
        builder.add_text(t["video_id"], t["source"], t["start_s"], t["end_s"], t["text"])
    for m in records["mapvectors"]:
        builder.add_map_vector(m["video_id"], m["vector"])
    return builder.build()


def _write_jsonl(path: str, records: list[dict]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(json.dumps(record, separators=(",", ":")) + "\n")


def _write_keyframe(path: str, label: str, index: int) -> None:
    color = _SVG_COLORS[index % len(_SVG_COLORS)]
    svg = (
        '<svg xmlns="http://www.w3.org/2000/svg" width="160" height="90">'
        f'<rect width="160" height="90" fill="{color}"/>'
        f'<text x="10" y="52" font-family="monospace" font-size="16" fill="#ffffff">{label}</text>'
        "</svg>"
    )
    with open(path, "w", encoding="utf-8") as f:
        f.write(svg)


def write_demo_dataset(out_dir: str, interval_s: float = 1.0, keyframes: bool = True) -> str:
    """Write the demo dataset (files + manifest); returns the manifest path."""
    os.makedirs(out_dir, exist_ok=True)
    records = demo_records()
    manifest = {
        "videos": "videos.jsonl",
        "detections": "detections.jsonl",
        "text": "text.jsonl",
        "mapvectors": "mapvectors.jsonl",
        "interval_s": interval_s,
    }
    for key in ("videos", "detections", "text", "mapvectors"):
        _write_jsonl(os.path.join(out_dir, f"{key}.jsonl"), records[key])
    if keyframes:
        manifest["assets_dir"] = "assets"
        manifest["keyframe_pattern"] = "{video_id}/{index}.svg"
        from .store import shot_count

        for video in records["videos"]:
            video_dir = os.path.join(out_dir, "assets", video["id"])
            os.makedirs(video_dir, exist_ok=True)
            for k in range(shot_count(video["duration_s"], interval_s)):
                _write_keyframe(os.path.join(video_dir, f"{k}.svg"), f"{video['id']}#{k}", k)
    manifest_path = os.path.join(out_dir, "manifest.json")
    with open(manifest_path, "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2)
    return manifest_path


# Per-category label pool sizes, loosely shaped like real detector vocabularies.
_POOLS = (("concepts", 400), ("objects", 80), ("events", 300), ("places", 365))


def write_synthetic_dataset(
    out_dir: str,
    videos: int = 1000,
    shots_per_video: int = 100,
    postings_per_shot: int = 20,
    seed: int = 7,
    vector_dim: int = 8,
    interval_s: float = 1.0,
) -> str:
    """Stream a synthetic dataset of the requested size; returns the manifest path.

    Labels are drawn with a power-law bias so a few labels accumulate long
    posting lists (the interesting case for query latency). Confidences sit
    on a two-decimal grid.
    """
    if min(videos, shots_per_video, postings_per_shot) < 1:
        raise ValueError("videos, shots_per_video, and postings_per_shot must all be >= 1")
    os.makedirs(out_dir, exist_ok=True)
    rng = random.Random(seed)
    duration = shots_per_video * interval_s

    with open(os.path.join(out_dir, "videos.jsonl"), "w", encoding="utf-8") as f:
        for v in range(videos):
            f.write(f'{{"id":"g{v:05d}","title":"clip {v}","description":"","tags":[],"duration_s":{duration!r}}}\n')

    with open(os.path.join(out_dir, "detections.jsonl"), "w", encoding="utf-8") as f:
        for v in range(videos):
            vid = f"g{v:05d}"
            for k in range(shots_per_video):
                start = k * interval_s
                end = min(start + interval_s, duration)
                for _ in range(postings_per_shot):
                    category, pool = _POOLS[int(len(_POOLS) * rng.random())]
                    label_ord = int(pool * rng.random() ** 3)
                    conf = round(0.05 + 0.95 * rng.random(), 2)
                    f.write(
                        f'{{"video_id":"{vid}","category":"{category}","label":"{category[:-1]}_{label_ord:03d}",'
                        f'"confidence":{conf!r},"start_s":{start!r},"end_s":{end!r}}}\n'
                    )

    with open(os.path.join(out_dir, "mapvectors.jsonl"), "w", encoding="utf-8") as f:
        for v in range(videos):
            vec = [round(rng.gauss(0.0, 1.0), 3) for _ in range(vector_dim)]
            if not any(vec):
                vec[0] = 1.0
            f.write(f'{{"video_id":"g{v:05d}","vector":{json.dumps(vec)}}}\n')

    manifest = {
        "videos": "videos.jsonl",
        "detections": "detections.jsonl",
        "mapvectors": "mapvectors.jsonl",
        "interval_s": interval_s,
    }
    manifest_path = os.path.join(out_dir, "manifest.json")
    with open(manifest_path, "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2)
    return manifest_path
