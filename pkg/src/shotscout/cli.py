"""Command line entry points: ingest, serve, query, generate-fixture."""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

from .engine import SearchEngine
from .errors import EngineError, InvalidArgument
from .fixtures import write_demo_dataset, write_synthetic_dataset
from .ingest import assets_path, ingest_dataset, load_manifest


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shotscout",
        description="Interactive video retrieval over pre-extracted per-shot features.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="load a dataset and print its summary")
    ingest.add_argument("manifest", help="manifest file, or a directory containing manifest.json")

    serve = sub.add_parser("serve", help="ingest a dataset and run the HTTP service")
    serve.add_argument(
        "--addr",
        default=os.environ.get("SHOTSCOUT_ADDR", "127.0.0.1:8000"),
        help="host:port to bind (env SHOTSCOUT_ADDR)",
    )
    serve.add_argument(
        "--data",
        default=os.environ.get("SHOTSCOUT_DATA"),
        help="manifest file or dataset directory (env SHOTSCOUT_DATA)",
    )

    query = sub.add_parser("query", help="run one query against a dataset, no server")
    query.add_argument("query", help='query string, e.g. "--objects car (0.8), person"')
    query.add_argument("--mode", choices=("shots", "videos", "temporal"), default="shots")
    query.add_argument(
        "--data",
        default=os.environ.get("SHOTSCOUT_DATA"),
        help="manifest file or dataset directory (env SHOTSCOUT_DATA)",
    )
    query.add_argument("--matcher", choices=("frequency", "tfidf"), default="frequency")
    query.add_argument("--limit", type=int, default=None)
    query.add_argument("--offset", type=int, default=0)
    query.add_argument("--window", type=float, default=None, help="temporal gap bound in seconds")
    query.add_argument(
        "--repeat",
        type=int,
        default=1,
        help="run the search N times and print latency stats instead of results",
    )

    gen = sub.add_parser("generate-fixture", help="write a dataset to a directory")
    gen.add_argument("out_dir")
    gen.add_argument("--videos", type=int, default=None, help="video count; omit for the demo dataset")
    gen.add_argument("--shots", type=int, default=100, help="shots per video (synthetic)")
    gen.add_argument("--postings", type=int, default=20, help="postings per shot (synthetic)")
    gen.add_argument("--seed", type=int, default=7)
    gen.add_argument("--interval", type=float, default=1.0, help="shot interval in seconds")
    gen.add_argument("--vector-dim", type=int, default=8, help="map vector dimension (synthetic)")
    return parser


def _require_data(value: str | None) -> str:
    if not value:
        raise InvalidArgument("no dataset given: pass --data or set SHOTSCOUT_DATA")
    return value


def cmd_ingest(args) -> int:
    store = ingest_dataset(args.manifest)
    print(json.dumps(store.summary.to_dict(), indent=2))
    return 0


def cmd_serve(args) -> int:
    from .service import run_server

    manifest = load_manifest(_require_data(args.data))
    store = ingest_dataset(manifest)
    engine = SearchEngine(store)
    summary = store.summary
    print(
        f"serving {summary.videos} videos / {summary.shots} shots / "
        f"{summary.postings} postings on http://{args.addr}",
        flush=True,
    )
    run_server(engine, args.addr, assets_path(manifest))
    return 0


def _percentile(sorted_ms: list[float], q: float) -> float:
    index = max(0, math.ceil(q * len(sorted_ms)) - 1)
    return sorted_ms[index]


def cmd_query(args) -> int:
    store = ingest_dataset(load_manifest(_require_data(args.data)))
    engine = SearchEngine(store)
    kwargs: dict = {"limit": args.limit}
    if args.mode == "shots":
        kwargs["offset"] = args.offset
    elif args.mode == "videos":
        kwargs.update(matcher=args.matcher, offset=args.offset)
    else:
        kwargs["window_s"] = args.window
    if args.repeat <= 1:
        print(json.dumps(engine.query(args.query, args.mode, **kwargs), indent=2))
        return 0
    timings_ms = []
    result = None
    for _ in range(args.repeat):
        t0 = time.perf_counter()
        result = engine.query(args.query, args.mode, **kwargs)
        timings_ms.append((time.perf_counter() - t0) * 1000)
    timings_ms.sort()
    stats = {
        "repetitions": args.repeat,
        "total_results": result["total"],
        "p50_ms": round(_percentile(timings_ms, 0.50), 3),
        "p95_ms": round(_percentile(timings_ms, 0.95), 3),
        "mean_ms": round(sum(timings_ms) / len(timings_ms), 3),
        "max_ms": round(timings_ms[-1], 3),
    }
    print(json.dumps(stats, indent=2))
    return 0


def cmd_generate_fixture(args) -> int:
    if args.videos is None:
        manifest = write_demo_dataset(args.out_dir, interval_s=args.interval)
    else:
        manifest = write_synthetic_dataset(
            args.out_dir,
            videos=args.videos,
            shots_per_video=args.shots,
            postings_per_shot=args.postings,
            seed=args.seed,
            vector_dim=args.vector_dim,
            interval_s=args.interval,
        )
    print(manifest)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    commands = {
        "ingest": cmd_ingest,
        "serve": cmd_serve,
        "query": cmd_query,
        "generate-fixture": cmd_generate_fixture,
    }
    try:
        return commands[args.command](args)
    except EngineError as exc:
        print(json.dumps({"error": {"code": exc.code, "message": str(exc)}}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
