"""HTTP surface: one POST endpoint per pipeline, JSON in/out.

Domain errors (points on the spectrum, poles, blowups) map to 400 with a
machine-readable error code; malformed specifications map to 422 like any
other validation failure.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import WeylsysError
from . import handlers
from . import schemas as S


def create_app() -> FastAPI:
    app = FastAPI(
        title="weylsys",
        description=(
            "Weyl m-functions of half-line Schrodinger operators, their "
            "dissipative-system realizations, and class certification."
        ),
    )

    @app.exception_handler(WeylsysError)
    async def _domain_error(request: Request, exc: WeylsysError):
        body = S.ErrorBody(error=type(exc).__name__, message=str(exc))
        return JSONResponse(status_code=400, content=body.model_dump())

    @app.exception_handler(handlers.SpecError)
    async def _spec_error(request: Request, exc: handlers.SpecError):
        body = S.ErrorBody(error="SpecError", message=str(exc))
        return JSONResponse(status_code=422, content=body.model_dump())

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/eval-m", response_model=S.EvalMResponse)
    def eval_m(req: S.EvalMRequest):
        return handlers.handle_eval_m(req)

    @app.post("/eval-malpha", response_model=S.EvalMAlphaResponse)
    def eval_malpha(req: S.EvalMAlphaRequest):
        return handlers.handle_eval_malpha(req)

    @app.post("/realize", response_model=S.RealizeResponse)
    def realize(req: S.RealizeRequest):
        return handlers.handle_realize(req)

    @app.post("/classify", response_model=S.ClassifyResponse)
    def classify(req: S.ClassifyRequest):
        return handlers.handle_classify(req)

    @app.post("/region-scan", response_model=S.RegionScanResponse)
    def region_scan(req: S.RegionScanRequest):
        return handlers.handle_region_scan(req)

    @app.post("/measure", response_model=S.MeasureResponse)
    def measure(req: S.MeasureRequest):
        return handlers.handle_measure(req)

    @app.post("/verify", response_model=S.VerifyResponse)
    def verify(req: S.VerifyRequest):
        return handlers.handle_verify(req)

    return app


app = create_app()
