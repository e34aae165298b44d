"""FastAPI application exposing the interferometry toolkit over HTTP."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import handlers, schemas
from .handlers import ServiceError

# HTTP status per domain error code; everything is a client-resolvable 4xx
_STATUS = {
    "usage": 400,
    "numerical": 422,
    "inversion": 422,
    "calibration": 422,
    "geometry": 422,
}


def create_app() -> FastAPI:
    app = FastAPI(
        title="groversim",
        description="Two-photon interferometry with Grover four-ports: "
        "HOM scans, coincidence rates, phase retrieval, rotation sensing.",
        version=handlers.health().version,
    )

    @app.exception_handler(ServiceError)
    async def service_error_handler(_: Request, exc: ServiceError) -> JSONResponse:
        return JSONResponse(
            status_code=_STATUS.get(exc.code, 422),
            content={"code": exc.code, "message": exc.message},
        )

    @app.get("/health", response_model=schemas.HealthResponse)
    async def health() -> schemas.HealthResponse:
        return handlers.health()

    @app.post("/hom-scan", response_model=schemas.HomScanResponse)
    async def hom_scan(request: schemas.HomScanRequest) -> schemas.HomScanResponse:
        return handlers.run_hom_scan(request)

    @app.post("/mz", response_model=schemas.MzResponse)
    async def mz(request: schemas.MzRequest) -> schemas.MzResponse:
        return handlers.run_mz(request)

    @app.post("/calibrate", response_model=schemas.CalibrationModel)
    async def calibrate(request: schemas.CalibrateRequest) -> schemas.CalibrationModel:
        return handlers.run_calibrate(request)

    @app.post("/invert", response_model=schemas.InvertResponse)
    async def invert(request: schemas.InvertRequest) -> schemas.InvertResponse:
        return handlers.run_invert(request)

    @app.post("/sagnac/forward", response_model=schemas.SagnacForwardResponse)
    async def sagnac_forward(
        request: schemas.SagnacForwardRequest,
    ) -> schemas.SagnacForwardResponse:
        return handlers.run_sagnac_forward(request)

    @app.post("/sagnac/reconstruct", response_model=schemas.SagnacReconstructResponse)
    async def sagnac_reconstruct(
        request: schemas.SagnacReconstructRequest,
    ) -> schemas.SagnacReconstructResponse:
        return handlers.run_sagnac_reconstruct(request)

    return app


app = create_app()
