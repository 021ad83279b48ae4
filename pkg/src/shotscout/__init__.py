"""shotscout: interactive video retrieval over pre-extracted per-shot features.

Shot-level and video-level ranked search with a bash-flag query language,
cosine-similarity navigation, temporal sequence search, autocomplete, and
session history, served over a JSON HTTP API.
"""
from .engine import SearchEngine
from .errors import EngineError, InvalidArgument, NotFound, ParseError, SimilarityUndefined
from .fixtures import demo_store, write_demo_dataset, write_synthetic_dataset
from .history import SessionHistory
from .ingest import ingest_dataset, load_manifest
from .maps import cosine, search_videos, similar_videos
from .queries import QueryAst, Term, canonicalize, parse
from .service import create_app
from .shots import search_shots, shots_like
from .store import DatasetBuilder, FeatureStore, segment_video, shot_count
from .suggest import suggest
from .temporal import search_temporal

__version__ = "0.1.0"

__all__ = [
    "SearchEngine",
    "EngineError",
    "InvalidArgument",
    "NotFound",
    "ParseError",
    "SimilarityUndefined",
    "demo_store",
    "write_demo_dataset",
    "write_synthetic_dataset",
    "SessionHistory",
    "ingest_dataset",
    "load_manifest",
    "cosine",
    "search_videos",
    "similar_videos",
    "QueryAst",
    "Term",
    "canonicalize",
    "parse",
    "create_app",
    "search_shots",
    "shots_like",
    "DatasetBuilder",
    "FeatureStore",
    "segment_video",
    "shot_count",
    "suggest",
    "search_temporal",
    "__version__",
]
