"""FastAPI application exposing the service handlers over HTTP JSON."""

from __future__ import annotations

import asyncio
import os
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.concurrency import run_in_threadpool
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..errors import (
    CapabilityError,
    ConfigError,
    CsvValidationError,
    DatasetNotFoundError,
    InvalidRequestError,
    MeasureNotFoundError,
    UncmapError,
)
from . import core
from .schemas import (
    DatasetSummaryModel,
    HealthModel,
    HeatmapRequest,
    HeatmapResponse,
    MeasureInfoModel,
    ModelInfoModel,
)

DEFAULT_TIMEOUT_S = 30.0

_STATUS_BY_ERROR = {
    DatasetNotFoundError: 404,
    MeasureNotFoundError: 404,
    CapabilityError: 422,
    InvalidRequestError: 422,
    CsvValidationError: 422,
    ConfigError: 500,
}


def _status_for(exc: UncmapError) -> int:
    for cls, status in _STATUS_BY_ERROR.items():
        if isinstance(exc, cls):
            return status
    return 500


def create_app(data_dir: str | Path, ui_dir: str | Path | None = None,
               cors_origins: list[str] | None = None,
               timeout_s: float | None = None,
               workers: int | None = None) -> FastAPI:
    """Build the service around a dataset folder.

    ``ui_dir`` mounts a static bundle at ``/``; CORS origins and the
    compute timeout fall back to UNCMAP_CORS_ORIGINS / UNCMAP_TIMEOUT_S.
    """
    if not Path(data_dir).is_dir():
        raise ConfigError(f"dataset folder does not exist: {data_dir}")
    if timeout_s is None:
        timeout_s = float(os.environ.get("UNCMAP_TIMEOUT_S", DEFAULT_TIMEOUT_S))
    if cors_origins is None:
        raw = os.environ.get("UNCMAP_CORS_ORIGINS", "*")
        cors_origins = [o.strip() for o in raw.split(",") if o.strip()]

    state = core.ServiceState(Path(data_dir), workers=workers)
    app = FastAPI(title="uncmap", version="0.1.0")
    app.state.service = state

    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(UncmapError)
    async def uncmap_error_handler(request: Request, exc: UncmapError):
        return JSONResponse(status_code=_status_for(exc),
                            content={"code": exc.code, "message": exc.message})

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request,
                                       exc: RequestValidationError):
        # keep the error-body contract: machine code + human message
        parts = []
        for err in exc.errors():
            loc = ".".join(str(p) for p in err.get("loc", []) if p != "body")
            parts.append(f"{loc}: {err.get('msg', 'invalid')}" if loc
                         else err.get("msg", "invalid"))
        return JSONResponse(status_code=422,
                            content={"code": "invalid_request",
                                     "message": "; ".join(parts)})

    @app.get("/api/health", response_model=HealthModel)
    def health():
        return HealthModel(status="ok")

    @app.get("/api/datasets", response_model=list[DatasetSummaryModel])
    def datasets():
        return core.list_datasets(state)

    @app.post("/api/datasets/refresh", response_model=list[DatasetSummaryModel])
    def refresh():
        return core.refresh_datasets(state)

    @app.get("/api/models", response_model=list[ModelInfoModel])
    def models():
        return core.list_models()

    @app.get("/api/measures", response_model=list[MeasureInfoModel])
    def measures():
        return core.list_measures()

    @app.post("/api/heatmap", response_model=HeatmapResponse)
    async def heatmap(req: HeatmapRequest):
        try:
            return await asyncio.wait_for(
                run_in_threadpool(core.compute_heatmap, state, req),
                timeout=timeout_s)
        except asyncio.TimeoutError:
            return JSONResponse(
                status_code=504,
                content={"code": "timeout",
                         "message": f"heatmap not ready within {timeout_s}s"})

    if ui_dir is not None:
        if not Path(ui_dir).is_dir():
            raise ConfigError(f"ui folder does not exist: {ui_dir}")
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
