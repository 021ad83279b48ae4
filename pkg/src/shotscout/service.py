"""JSON-over-HTTP boundary: one endpoint per engine operation.

Every successful response carries an echo block (canonical query, matcher,
took_ms); every deliberate failure is a structured
``{"error": {"code", "message", "offset"?}}`` body with a 4xx status, never
a stack trace.
"""
from __future__ import annotations

import os
import time

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from .engine import SearchEngine
from .errors import EngineError, InvalidArgument, ParseError


class ShotQueryBody(BaseModel):
    query: str
    limit: int | None = None
    offset: int = 0


class VideoQueryBody(BaseModel):
    query: str
    matcher: str = "frequency"
    limit: int | None = None
    offset: int = 0


class TemporalQueryBody(BaseModel):
    query: str
    window_s: float | None = None
    limit: int | None = None


def _error_body(code: str, message: str, offset: int | None = None) -> dict:
    error: dict = {"code": code, "message": message}
    if offset is not None:
        error["offset"] = offset
    return {"error": error}


def create_app(engine: SearchEngine, assets_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="shotscout")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(EngineError)
    async def engine_error(request: Request, exc: EngineError):
        offset = exc.offset if isinstance(exc, ParseError) else None
        return JSONResponse(
            status_code=exc.http_status,
            content=_error_body(exc.code, str(exc), offset),
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first.get("loc", ()))
        return JSONResponse(
            status_code=400,
            content=_error_body("invalid_argument", f"{where}: {first.get('msg', 'invalid value')}"),
        )

    @app.exception_handler(StarletteHTTPException)
    async def http_error(request: Request, exc: StarletteHTTPException):
        code = {404: "not_found", 405: "method_not_allowed"}.get(exc.status_code, "http_error")
        return JSONResponse(status_code=exc.status_code, content=_error_body(code, str(exc.detail)))

    def timed(build) -> dict:
        t0 = time.perf_counter()
        payload = build()
        payload["echo"]["took_ms"] = round((time.perf_counter() - t0) * 1000, 3)
        return payload

    @app.post("/query/shots")
    def query_shots(body: ShotQueryBody):
        return timed(lambda: engine.query_shots(body.query, body.limit, body.offset))

    @app.post("/query/videos")
    def query_videos(body: VideoQueryBody):
        return timed(lambda: engine.query_videos(body.query, body.matcher, body.limit, body.offset))

    @app.post("/query/temporal")
    def query_temporal(body: TemporalQueryBody):
        return timed(lambda: engine.query_temporal(body.query, body.window_s, body.limit))

    @app.get("/autocomplete")
    def autocomplete(q: str = "", limit: int | None = None, category: str | None = None):
        return timed(lambda: engine.autocomplete(q, limit, category))

    @app.get("/videos/{video_id}")
    def video(video_id: str):
        return timed(lambda: engine.video(video_id))

    @app.get("/videos/{video_id}/shots")
    def video_shots(video_id: str):
        return timed(lambda: engine.video_shots(video_id))

    @app.get("/videos/{video_id}/similar")
    def similar(video_id: str, k: int | None = None):
        return timed(lambda: engine.similar(video_id, k))

    @app.get("/shots/{shot_id}")
    def shot(shot_id: str):
        return timed(lambda: engine.shot(shot_id))

    @app.post("/sessions/{session_id}/events")
    def record_event(session_id: str, event: dict):
        return timed(lambda: engine.record_event(session_id, event))

    @app.get("/sessions/{session_id}/history")
    def session_history(session_id: str):
        return timed(lambda: engine.session_history(session_id))

    if assets_dir is not None and os.path.isdir(assets_dir):
        app.mount("/assets", StaticFiles(directory=assets_dir), name="assets")

    return app


def run_server(engine: SearchEngine, addr: str = "127.0.0.1:8000", assets_dir: str | None = None) -> None:
    import uvicorn

    host, _, port = addr.rpartition(":")
    if not host or not port.isdigit():
        raise InvalidArgument(f"addr must look like host:port, got {addr!r}")
    uvicorn.run(create_app(engine, assets_dir), host=host, port=int(port))
