"""HTTP face of the service.

Backends load once when the app is built and are read-only afterwards, so
request handling is stateless and safe under concurrency. Handlers answer
400 for any unusable request, 503 until the backends exist, and stamp every
success body with the package version.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Request
from fastapi.encoders import jsonable_encoder
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import __version__
from .backends import PhraseChunker, RuleNer, TrigramEmbedder
from .schemas import (
    EmbedRequest,
    EmbedResponse,
    Entity,
    HealthResponse,
    NerRequest,
    NerResponse,
    ParseRequest,
    ParseResponse,
    Phrase,
)

MAX_BATCH = 256
VERSION_STAMP = f"nlp-sidecar/{__version__}"


class Engine:
    """The loaded backend bundle."""

    def __init__(self):
        self.chunker = PhraseChunker()
        self.embedder = TrigramEmbedder()
        self.ner = RuleNer()


def create_app(preload: bool = True) -> FastAPI:
    app = FastAPI(title="nlp-sidecar", version=__version__)
    app.state.engine = Engine() if preload else None

    def engine() -> Engine:
        eng = app.state.engine
        if eng is None:
            raise HTTPException(status_code=503, detail="model not loaded")
        return eng

    @app.exception_handler(RequestValidationError)
    async def _schema_error(request: Request, exc: RequestValidationError):
        # the protocol promises plain 400s for every unusable request
        return JSONResponse(status_code=400, content={"detail": jsonable_encoder(exc.errors())})

    @app.get("/healthz")
    def healthz() -> JSONResponse:
        ready = app.state.engine is not None
        body = HealthResponse(status="ready" if ready else "loading", version=VERSION_STAMP)
        return JSONResponse(status_code=200 if ready else 503, content=body.model_dump())

    @app.post("/parse", response_model=ParseResponse)
    def parse(req: ParseRequest) -> ParseResponse:
        eng = engine()
        if not req.text:
            raise HTTPException(status_code=400, detail="text must be non-empty")
        spans = eng.chunker.phrases(req.text, lang=req.lang)
        return ParseResponse(
            version=VERSION_STAMP,
            lang=req.lang,
            phrases=[
                Phrase(text=s.text, label=s.label, char_span=(s.start, s.end))
                for s in spans
            ],
        )

    @app.post("/embed", response_model=EmbedResponse)
    def embed(req: EmbedRequest) -> EmbedResponse:
        eng = engine()
        if not req.texts:
            raise HTTPException(status_code=400, detail="texts must hold at least one entry")
        if len(req.texts) > MAX_BATCH:
            raise HTTPException(
                status_code=400,
                detail=f"batch holds {len(req.texts)} texts, limit is {MAX_BATCH}",
            )
        for i, text in enumerate(req.texts):
            if not text:
                # an empty string has no trigrams, so no unit vector exists for it
                raise HTTPException(status_code=400, detail=f"texts[{i}] is empty")
        vectors = eng.embedder.embed(list(req.texts))
        return EmbedResponse(
            version=VERSION_STAMP, dim=eng.embedder.dim, vectors=vectors.tolist()
        )

    @app.post("/ner", response_model=NerResponse)
    def ner(req: NerRequest) -> NerResponse:
        eng = engine()
        if not req.text:
            raise HTTPException(status_code=400, detail="text must be non-empty")
        found = eng.ner.entities(req.text)
        return NerResponse(
            version=VERSION_STAMP,
            entities=[Entity(text=text, type=label) for text, label in found],
        )

    return app
