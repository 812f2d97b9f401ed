"""HTTP JSON service exposing datasets and analysis results.

Thin transport over the same pipeline the CLI uses, so both produce
identical entries for identical (records, K, seed). There is deliberately
no threshold parameter: intervals never need recomputation to test a new
threshold, so threshold logic belongs to clients. Stateless between
requests.
"""

from __future__ import annotations

import time

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from . import __version__
from .datasets import BUNDLED, Dataset, RowError, build_record, bundled_dataset
from .pipeline import MIN_SAMPLES, analyze_dataset, result_payload
from .posterior import DegenerateDrawsError


class AnalyzeRequest(BaseModel):
    dataset: str | None = None
    records: list[dict] | None = None
    samples: int = Field(default=100_000, ge=MIN_SAMPLES)
    seed: int = Field(default=0, ge=0)
    sign_view: str | None = Field(default=None, pattern="^(decrease|increase)$")


def _inline_dataset(rows: list[dict]) -> Dataset:
    errors: list[RowError] = []
    records = []
    for i, raw in enumerate(rows, start=1):
        rec = build_record(raw, i, errors)
        if rec is not None:
            records.append(rec)
    if errors:
        raise HTTPException(
            status_code=400,
            detail=[{"row": e.row, "field": e.field, "message": e.message} for e in errors],
        )
    if not records:
        raise HTTPException(status_code=400, detail=[{"row": 0, "field": "records",
                                                      "message": "no records supplied"}])
    return Dataset(name="inline", measured_phenomenon="", records=tuple(records))


def create_app(ui_dir: str | None = None, cors_origins: list[str] | None = None) -> FastAPI:
    app = FastAPI(title="contraplot", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins or ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/api/datasets")
    def datasets():
        out = []
        for name, phenomenon in BUNDLED.items():
            ds = bundled_dataset(name)
            out.append({"name": name, "records": len(ds.records),
                        "measured_phenomenon": phenomenon})
        return out

    @app.post("/api/analyze")
    def analyze(req: AnalyzeRequest):
        if (req.dataset is None) == (req.records is None):
            raise HTTPException(status_code=422,
                                detail="provide exactly one of 'dataset' or 'records'")
        if req.dataset is not None:
            if req.dataset not in BUNDLED:
                raise HTTPException(status_code=422,
                                    detail=f"unknown dataset {req.dataset!r}")
            ds = bundled_dataset(req.dataset)
        else:
            ds = _inline_dataset(req.records)
        started = time.perf_counter()
        try:
            result = analyze_dataset(ds, samples=req.samples, seed=req.seed,
                                     sign_view=req.sign_view)
        except DegenerateDrawsError as exc:
            raise HTTPException(status_code=400,
                                detail=[{"row": 0, "field": "records", "message": str(exc)}])
        payload = result_payload(result)
        payload["warnings"] = list(result.warnings)
        payload["timing_ms"] = round((time.perf_counter() - started) * 1000.0, 1)
        return payload

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    return app
