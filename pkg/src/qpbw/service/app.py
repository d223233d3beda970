"""FastAPI service exposing the computation kernel.

Presentations and derived tables are cached process-wide, so a long-running
service answers repeat normal-form and verification requests cheaply.  A
module lock serializes computation: results are deterministic and the caches
are shared safely across worker threads.
"""

from __future__ import annotations

import threading

from fastapi import FastAPI, HTTPException

from ..freealg import TriangleIndexError, is_laurent_element
from ..presentations import build_presentation
from ..specialize import UnsupportedLevel
from ..suites import UsageError, run_suite
from ..structmaps import export_tables
from ..textio import ExpressionSyntaxError, format_element, parse_expression
from .models import (
    ExportRequest,
    HealthResponse,
    NormalFormRequest,
    NormalFormResponse,
    PresentRequest,
    VerifyRequest,
)

_compute_lock = threading.Lock()


def create_app() -> FastAPI:
    app = FastAPI(
        title="qpbw",
        description="Exact PBW normal forms and identity verification "
        "for FRT-presented quantum gl_n / sl_n",
        version="0.1.0",
    )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=app.version)

    @app.post("/present")
    def present(req: PresentRequest) -> dict:
        with _compute_lock:
            return build_presentation(req.n, req.flavor).to_document()

    @app.post("/nf", response_model=NormalFormResponse)
    def normal_form(req: NormalFormRequest) -> NormalFormResponse:
        with _compute_lock:
            pres = build_presentation(req.n, req.flavor)
            try:
                element = parse_expression(req.expression, pres)
            except ExpressionSyntaxError as exc:
                raise HTTPException(
                    status_code=400,
                    detail={"error": str(exc), "position": exc.position},
                ) from exc
            except TriangleIndexError as exc:
                raise HTTPException(status_code=400, detail={"error": str(exc)}) from exc
            nf = pres.normal_form(element)
            return NormalFormResponse(
                n=req.n,
                flavor=req.flavor,
                input=req.expression,
                normal_form=format_element(nf),
                integer_form=is_laurent_element(nf),
            )

    @app.post("/verify")
    def verify(req: VerifyRequest) -> dict:
        with _compute_lock:
            try:
                report = run_suite(
                    req.suite,
                    req.n,
                    req.flavor,
                    req.ell,
                    deterministic=req.deterministic,
                    random_triples=req.random_triples,
                )
            except (UsageError, UnsupportedLevel) as exc:
                raise HTTPException(status_code=422, detail={"error": str(exc)}) from exc
            return report.to_dict(deterministic=req.deterministic)

    @app.post("/export")
    def export(req: ExportRequest) -> dict:
        with _compute_lock:
            return export_tables(req.n, req.what)

    return app
