"""FastAPI application exposing the solver.

Domain errors (bad patterns, unplayable games) surface as HTTP 400 with a
``detail`` message; request-shape problems are FastAPI's usual 422. A failed
verification is not an HTTP error: the document reports ``passed: false``
and clients decide what to do with it.
"""
from __future__ import annotations

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import PenneyError
from ..montecarlo import SimConfig
from ..patterns import CoinSpec, GameSpec, Pattern
from . import documents, schemas


def _game_spec(s1: str, s2: str, bias: str) -> GameSpec:
    return GameSpec(s1=Pattern.parse(s1), s2=Pattern.parse(s2), coin=CoinSpec.parse(bias))


def create_app() -> FastAPI:
    app = FastAPI(
        title="penney",
        version=__version__,
        description="Exact win probabilities, absorption times, and verification "
        "suites for Penney's pattern-matching coin game.",
    )

    @app.exception_handler(PenneyError)
    async def domain_error_handler(_: Request, exc: PenneyError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def value_error_handler(_: Request, exc: ValueError) -> JSONResponse:
        # core constructors validate arguments with ValueError (e.g. a flip
        # budget below the pattern length); those are caller mistakes, not 500s
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/analyze", response_model=schemas.AnalyzeDocument)
    def analyze(req: schemas.AnalyzeRequest) -> schemas.AnalyzeDocument:
        spec = _game_spec(req.s1, req.s2, req.bias)
        return documents.build_analyze_document(spec, req.digits)

    @app.get("/tables/absorption", response_model=schemas.AbsorptionTableDocument)
    def absorption_table(
        digits: int = Query(default=6, ge=0, le=50),
    ) -> schemas.AbsorptionTableDocument:
        return documents.build_absorption_table_document(digits)

    @app.get("/tables/game-length", response_model=schemas.GameLengthTableDocument)
    def game_length_table(
        digits: int = Query(default=6, ge=0, le=50),
    ) -> schemas.GameLengthTableDocument:
        return documents.build_game_length_table_document(digits)

    @app.post("/respond", response_model=schemas.RespondDocument)
    def respond(req: schemas.RespondRequest) -> schemas.RespondDocument:
        return documents.build_respond_document(Pattern.parse(req.pattern), req.digits)

    @app.post("/verify", response_model=schemas.VerifyDocument)
    def verify(req: schemas.VerifyRequest) -> schemas.VerifyDocument:
        return documents.build_verify_document(req.suite, req.horizon, req.digits)

    @app.post("/simulate", response_model=schemas.SimulateDocument)
    def simulate_endpoint(req: schemas.SimulateRequest) -> schemas.SimulateDocument:
        spec = _game_spec(req.s1, req.s2, req.bias)
        config = SimConfig(
            spec=spec, trials=req.trials, seed=req.seed, max_flips_per_trick=req.max_flips
        )
        return documents.build_simulate_document(config, req.digits)

    @app.get("/overall", response_model=schemas.OverallDocument)
    def overall(digits: int = Query(default=6, ge=0, le=50)) -> schemas.OverallDocument:
        return documents.build_overall_document(digits)

    return app


app = create_app()
