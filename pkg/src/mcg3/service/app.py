"""FastAPI application exposing the analysis commands as POST endpoints."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..errors import Mcg3Error
from . import handlers, schemas

app = FastAPI(
    title="mcg3",
    version=__version__,
    description=(
        "Mapping-class groups of connected sums of prime 3-manifolds: "
        "lens-space classification, manifold analysis, mapping-class "
        "generators, a word-problem decider, homomorphism enumeration, "
        "and unitary representation analysis."
    ),
)


def _run(handler, request):
    try:
        return handler(request)
    except Mcg3Error as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/classify-lens", response_model=schemas.LensClassifyResponse)
def classify_lens(request: schemas.LensClassifyRequest):
    return _run(handlers.classify_lens, request)


@app.post("/analyze-manifold", response_model=schemas.ManifoldAnalysis)
def analyze_manifold(request: schemas.ManifoldRequest):
    return _run(handlers.analyze_manifold, request)


@app.post("/build-mcg", response_model=schemas.BuildMcgResponse)
def build_mcg(request: schemas.BuildMcgRequest):
    return _run(handlers.build_mcg, request)


@app.post("/decide-word", response_model=schemas.DecideWordResponse)
def decide_word(request: schemas.DecideWordRequest):
    return _run(handlers.decide_word, request)


@app.post("/enumerate-homs", response_model=schemas.EnumerateHomsResponse)
def enumerate_homs(request: schemas.EnumerateHomsRequest):
    return _run(handlers.enumerate_homs, request)


@app.post("/classify-reps", response_model=schemas.ClassifyRepsResponse)
def classify_reps(request: schemas.ClassifyRepsRequest):
    return _run(handlers.classify_reps, request)
