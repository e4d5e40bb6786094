"""HTTP analysis service: /analyze, /classify, /health.

All shared resources (lexicons, model, embedding table) are loaded once at
startup and treated as immutable, so concurrent requests need no locking.
Responses contain no timestamps: identical inputs against the same resources
produce byte-identical bodies.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .clf.checkpoint import load_checkpoint
from .clf.model import ModelParams
from .clf.training import predict
from .embeddings import DEFAULT_DIMENSION, EmbeddingTable, load_vectors_file
from .errors import EmptyText, InsufficientText, VagoError
from .lexicon import Language, Lexicon, load_builtin_lexicon, load_lexicon_file
from .scoring import barometer_summary, report_to_dict, score_text
from .textproc import detect_language

DEFAULT_MAX_INPUT_CHARS = 1200
LEXICON_DIR_ENV = "VAGO_LEXICON_DIR"


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    max_input_chars: int = DEFAULT_MAX_INPUT_CHARS
    lexicon_dir: Optional[str] = None  # falls back to $VAGO_LEXICON_DIR, then bundled
    checkpoint_path: Optional[str] = None
    embeddings_path: Optional[str] = None
    embed_dim: int = DEFAULT_DIMENSION
    cors_origin: str = "*"

    def __post_init__(self):
        if self.max_input_chars < 1:
            raise ValueError("max_input_chars must be >= 1")


_CONFIG_KEYS = {
    "host": str,
    "port": int,
    "max_input_chars": int,
    "lexicon_dir": str,
    "checkpoint_path": str,
    "embeddings_path": str,
    "embed_dim": int,
    "cors_origin": str,
}


def parse_config(text: str) -> ServiceConfig:
    """Parse the ``key = value`` config format (#-comments ignored)."""
    values = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise VagoError(f"config line {line_no}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise VagoError(f"config line {line_no}: unknown key {key!r}")
        try:
            values[key] = _CONFIG_KEYS[key](value.strip())
        except ValueError:
            raise VagoError(f"config line {line_no}: bad value for {key!r}")
    return ServiceConfig(**values)


def load_config(path) -> ServiceConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def _load_lexicons(config: ServiceConfig) -> dict[Language, Lexicon]:
    lex_dir = config.lexicon_dir or os.environ.get(LEXICON_DIR_ENV)
    lexicons = {}
    for lang in Language:
        if lex_dir:
            path = Path(lex_dir) / f"lexicon.{lang.value.lower()}.tsv"
            lexicons[lang] = load_lexicon_file(path)
        else:
            lexicons[lang] = load_builtin_lexicon(lang)
    return lexicons


class AnalyzeRequest(BaseModel):
    text: str
    lang: Optional[str] = None


class ClassifyRequest(BaseModel):
    text: str


@dataclass
class ServiceState:
    config: ServiceConfig
    lexicons: dict[Language, Lexicon]
    model: Optional[ModelParams] = None
    table: Optional[EmbeddingTable] = None


def build_state(config: ServiceConfig) -> ServiceState:
    state = ServiceState(config=config, lexicons=_load_lexicons(config))
    if config.checkpoint_path:
        state.model = load_checkpoint(Path(config.checkpoint_path).read_bytes())
        if config.embeddings_path:
            state.table = load_vectors_file(config.embeddings_path)
        else:
            state.table = EmbeddingTable(
                state.model.config.embed_dim, oov_policy="hashed"
            )
    return state


def create_app(config: Optional[ServiceConfig] = None, state: Optional[ServiceState] = None) -> FastAPI:
    config = config or ServiceConfig()
    if state is None:
        state = build_state(config)
    app = FastAPI(title="vago", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[config.cors_origin] if config.cors_origin != "*" else ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def _check_text(text: str):
        if not text.strip():
            raise HTTPException(status_code=400, detail="text is empty")
        if len(text) > config.max_input_chars:
            raise HTTPException(
                status_code=400,
                detail=(
                    f"text has {len(text)} characters, "
                    f"limit is {config.max_input_chars}"
                ),
            )

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "lexicon_counts": {
                lang.value: {
                    cat.value: n for cat, n in lex.category_counts().items()
                }
                for lang, lex in state.lexicons.items()
            },
            "model_loaded": state.model is not None,
            "max_input_chars": config.max_input_chars,
        }

    @app.post("/analyze")
    def analyze(request: AnalyzeRequest):
        _check_text(request.text)
        if request.lang is not None:
            try:
                language = Language(request.lang.upper())
            except ValueError:
                raise HTTPException(
                    status_code=422, detail=f"unknown language {request.lang!r}"
                )
            detected = False
        else:
            try:
                language, _ = detect_language(request.text)
            except InsufficientText as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            detected = True
        try:
            report = score_text(request.text, state.lexicons[language])
        except (EmptyText, VagoError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        vague_pct, opinion_pct = barometer_summary(report)
        body = report_to_dict(report)
        body["language_detected"] = detected
        body["barometers"] = {"vague_pct": vague_pct, "opinion_pct": opinion_pct}
        return body

    @app.post("/classify")
    def classify(request: ClassifyRequest):
        if state.model is None or state.table is None:
            raise HTTPException(status_code=503, detail="no model loaded")
        _check_text(request.text)
        try:
            bias_score, cam, tokens = predict(state.model, request.text, state.table)
        except (EmptyText, VagoError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {
            "bias_score": bias_score,
            "tokens": [t.surface for t in tokens],
            "cam_scores": [float(s) for s in cam.scores],
            "char_spans": [[t.char_span[0], t.char_span[1]] for t in tokens],
        }

    return app


def run_server(config: ServiceConfig):
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port)
