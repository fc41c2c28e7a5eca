"""HTTP surface of the learning engine.

Every response is built from the engine's whitelisted projections, so the
wire never carries comments, ratings, recommendations, channel promotion, or
ad markers. Replay mode is fully deterministic: an identical request sequence
produces byte-identical bodies.
"""

from __future__ import annotations

import json
import logging
import time

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from ..annotate import AnnotatorUnavailable
from ..cleanview import view_to_json
from ..errors import (
    AuthFailure,
    NetworkFailure,
    NoCaptionTrack,
    QuotaExceeded,
    ReplayMiss,
)
from ..graph import graph_to_dict
from ..subtitles import SubtitleError
from .config import SessionConfig
from .engine import Engine, SafetyExcluded, UnknownSegment, UnknownVideo
from .notes import NoteTooLarge

request_logger = logging.getLogger("evl.requests")


def _error(status: int, code: str, **extra) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": code, **extra})


def create_app(config: SessionConfig | None = None, engine: Engine | None = None) -> FastAPI:
    if engine is None:
        if config is None:
            raise ValueError("create_app needs a config or an engine")
        engine = Engine(config)
    app = FastAPI(title="evl", docs_url=None, redoc_url=None)
    app.state.engine = engine

    log_handler: logging.Handler | None = None
    if engine.config.request_log_path:
        log_handler = logging.FileHandler(engine.config.request_log_path)
        log_handler.setFormatter(logging.Formatter("%(message)s"))
        request_logger.addHandler(log_handler)
        request_logger.setLevel(logging.INFO)

    @app.middleware("http")
    async def log_requests(request: Request, call_next):
        started = time.monotonic()
        response: Response = await call_next(request)
        request_logger.info(
            json.dumps(
                {
                    "method": request.method,
                    "path": request.url.path,
                    "query": str(request.url.query),
                    "status": response.status_code,
                    "ms": round((time.monotonic() - started) * 1000, 2),
                },
                sort_keys=True,
            )
        )
        return response

    @app.get("/search")
    def search_endpoint(q: str = "", n: int | None = None):
        if not q.strip():
            return _error(400, "blank_keyword")
        limit = n or engine.config.default_max_results
        if not 1 <= limit <= 50:
            return _error(400, "bad_max_results")
        try:
            metas = engine.search_videos(q, max_results=limit)
        except QuotaExceeded:
            return _error(429, "quota_exceeded")
        except (AuthFailure, NetworkFailure, ReplayMiss):
            return _error(502, "upstream_failure")
        return [
            {
                "video_id": m.video_id,
                "title": m.title,
                "duration_ms": m.duration_ms,
                "thumbnail_ref": m.thumbnail_ref,
            }
            for m in metas
        ]

    def _view_or_error(video_id: str):
        try:
            return engine.get_view(video_id), None
        except UnknownVideo:
            return None, _error(404, "unknown_video")
        except ReplayMiss:
            return None, _error(404, "unknown_video")
        except NoCaptionTrack:
            return None, _error(422, "no_caption_track")
        except SafetyExcluded as exc:
            return None, _error(451, "safety_excluded", category=exc.category)
        except SubtitleError:
            return None, _error(502, "bad_caption_document")
        except (AuthFailure, NetworkFailure):
            return None, _error(502, "upstream_failure")
        except QuotaExceeded:
            return None, _error(429, "quota_exceeded")

    @app.get("/video/{video_id}")
    def video_endpoint(video_id: str):
        result, err = _view_or_error(video_id)
        if err is not None:
            return err
        view, relevance = result
        body = view_to_json(view)
        body["relevance"] = round(relevance, 4)
        body["low_relevance"] = relevance < engine.config.relevance_threshold
        return body

    @app.get("/video/{video_id}/segment/{segment_index}/graph")
    def graph_endpoint(video_id: str, segment_index: int):
        result, err = _view_or_error(video_id)
        if err is not None:
            return err
        try:
            graph = engine.get_graph(video_id, segment_index)
        except UnknownSegment:
            return _error(404, "unknown_segment")
        except AnnotatorUnavailable:
            return JSONResponse(
                status_code=503,
                content={"error": "annotator_unavailable"},
                headers={"Retry-After": "30"},
            )
        except QuotaExceeded:
            return _error(429, "quota_exceeded")
        return graph_to_dict(graph)

    @app.get("/video/{video_id}/cue_at")
    def cue_at_endpoint(video_id: str, t: int):
        result, err = _view_or_error(video_id)
        if err is not None:
            return err
        view, _ = result
        index = engine.cue_index_at(video_id, t)
        return {"cue_index": index}

    @app.get("/video/{video_id}/notes")
    def list_notes_endpoint(video_id: str):
        return engine.list_notes(video_id)

    @app.post("/video/{video_id}/notes")
    async def add_note_endpoint(video_id: str, request: Request):
        try:
            payload = json.loads(await request.body())
        except ValueError:
            return _error(400, "malformed_body")
        if not isinstance(payload, dict):
            return _error(400, "malformed_body")
        t_ms = payload.get("t_ms")
        text = payload.get("text")
        try:
            note = engine.add_note(video_id, t_ms, text)
        except NoteTooLarge:
            return _error(413, "note_too_large")
        except (ValueError, TypeError):
            return _error(400, "malformed_body")
        return JSONResponse(status_code=201, content=note)

    return app
