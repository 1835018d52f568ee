"""FastAPI application wrapping the report operations.

Domain errors map to 422, malformed payloads to 400; both carry
{"error", "kind", "type"} so clients can distinguish them without parsing
messages.
"""
from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import GeomentError
from ..reports import compute_report, curve_report, figure_report
from ..verify import run_verification
from .schemas import (
    ComputeRequest,
    ComputeResponse,
    CurveRequest,
    CurveResponse,
    FigureRequest,
    FigureResponse,
    HealthResponse,
    VerifyRequest,
    VerifyResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="geoment",
        version=__version__,
        description="Geometric measure of entanglement as a service",
    )

    @app.exception_handler(GeomentError)
    async def domain_error_handler(_, exc: GeomentError):
        status = 400 if exc.kind == "parse" else 422
        return JSONResponse(
            status_code=status,
            content={"error": str(exc), "kind": exc.kind, "type": type(exc).__name__},
        )

    @app.get("/health", response_model=HealthResponse)
    async def health():
        return HealthResponse(status="ok", version=__version__)

    @app.post("/compute", response_model=ComputeResponse)
    def compute(req: ComputeRequest):
        return compute_report(req.state, req.options.to_options(), req.ensembles)

    @app.post("/curve", response_model=CurveResponse)
    def curve(req: CurveRequest):
        params = {"n": req.n, "k1": req.k1, "k2": req.k2, "phi": req.phi, "d": req.d}
        params = {k: v for k, v in params.items() if v is not None}
        return curve_report(req.family, params, req.grid, req.options.to_options())

    @app.post("/figure", response_model=FigureResponse)
    def figure(req: FigureRequest):
        return figure_report(req.which, req.grid, req.scatter, req.options.to_options())

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest):
        return run_verification(req.seed, req.input_state)

    return app


app = create_app()
