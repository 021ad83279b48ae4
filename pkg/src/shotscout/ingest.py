"""Manifest-driven dataset loading from line-delimited JSON files.

A manifest is a JSON object naming the dataset files (paths relative to the
manifest itself) plus the segmentation interval::

    {
      "videos": "videos.jsonl",        required
      "detections": "detections.jsonl",
      "text": "text.jsonl",            optional
      "mapvectors": "mapvectors.jsonl",optional
      "interval_s": 1.0,
      "assets_dir": "assets",          optional, served under /assets
      "keyframe_pattern": "{video_id}/{index}.svg"   optional
    }

Malformed lines and invalid records become rejections in the dataset
summary; ingestion always continues.
"""
from __future__ import annotations

import json
import os

from .errors import InvalidArgument
from .store import DEFAULT_INTERVAL_S, DatasetBuilder, FeatureStore

_MISSING = object()


def load_manifest(path: str | os.PathLike) -> dict:
    path = os.fspath(path)
    if os.path.isdir(path):
        path = os.path.join(path, "manifest.json")
    if not os.path.isfile(path):
        raise InvalidArgument(f"manifest not found: {path}")
    with open(path, encoding="utf-8") as f:
        try:
            manifest = json.load(f)
        except ValueError as exc:
            raise InvalidArgument(f"manifest {path} is not valid JSON: {exc}") from None
    if not isinstance(manifest, dict):
        raise InvalidArgument(f"manifest {path} must be a JSON object")
    if "videos" not in manifest:
        raise InvalidArgument(f"manifest {path} names no videos file")
    manifest["_dir"] = os.path.dirname(os.path.abspath(path))
    return manifest


def _records(builder: DatasetBuilder, path: str):
    """Yield ((source, line_no), record) per well-formed JSON object line."""
    name = os.path.basename(path)
    with open(path, encoding="utf-8") as f:
        for line_no, raw in enumerate(f, start=1):
            raw = raw.strip()
            if not raw:
                continue
            where = (name, line_no)
            try:
                record = json.loads(raw)
            except ValueError:
                builder.reject(where, "malformed line: not valid JSON")
                continue
            if not isinstance(record, dict):
                builder.reject(where, "malformed line: not a JSON object")
                continue
            yield where, record


def _fields(builder: DatasetBuilder, where, record: dict, names: tuple[str, ...]):
    values = []
    for name in names:
        value = record.get(name, _MISSING)
        if value is _MISSING:
            builder.reject(where, f"missing field {name!r}")
            return None
        values.append(value)
    return values


def _resolve(manifest: dict, key: str) -> str | None:
    value = manifest.get(key)
    if value is None:
        return None
    path = os.path.join(manifest["_dir"], value)
    if not os.path.isfile(path):
        raise InvalidArgument(f"manifest names missing file for {key!r}: {path}")
    return path


def ingest_dataset(manifest: dict | str | os.PathLike) -> FeatureStore:
    """Build an immutable store from a manifest (path or loaded dict)."""
    if not isinstance(manifest, dict):
        manifest = load_manifest(manifest)
    if "_dir" not in manifest:
        manifest = {**manifest, "_dir": os.getcwd()}
    interval_s = manifest.get("interval_s", DEFAULT_INTERVAL_S)
    if not isinstance(interval_s, (int, float)):
        raise InvalidArgument(f"interval_s must be a number, got {interval_s!r}")
    builder = DatasetBuilder(interval_s, manifest.get("keyframe_pattern"))

    for where, record in _records(builder, _resolve(manifest, "videos")):
        values = _fields(builder, where, record, ("id", "duration_s"))
        if values is None:
            continue
        video_id, duration_s = values
        tags = record.get("tags", [])
        if not isinstance(tags, (list, tuple)):
            builder.reject(where, f"tags must be a list, got {tags!r}")
            continue
        builder.add_video(
            video_id,
            duration_s,
            title=str(record.get("title", "")),
            description=str(record.get("description", "")),
            tags=tuple(str(t) for t in tags),
            where=where,
        )

    detections = _resolve(manifest, "detections")
    if detections is not None:
        names = ("video_id", "category", "label", "confidence", "start_s", "end_s")
        for where, record in _records(builder, detections):
            values = _fields(builder, where, record, names)
            if values is not None:
                builder.add_detection(*values, where=where)

    text = _resolve(manifest, "text")
    if text is not None:
        names = ("video_id", "source", "start_s", "end_s", "text")
        for where, record in _records(builder, text):
            values = _fields(builder, where, record, names)
            if values is not None:
                builder.add_text(*values, where=where)

    vectors = _resolve(manifest, "mapvectors")
    if vectors is not None:
        for where, record in _records(builder, vectors):
            values = _fields(builder, where, record, ("video_id", "vector"))
            if values is not None:
                builder.add_map_vector(*values, where=where)

    return builder.build()


def assets_path(manifest: dict) -> str | None:
    """Absolute assets directory named by the manifest, if any."""
    assets = manifest.get("assets_dir")
    if assets is None:
        return None
    return os.path.join(manifest["_dir"], assets)
