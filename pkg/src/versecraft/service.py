"""HTTP service: suggestions, generation, rhyme stats, feedback logging.

Read endpoints are side-effect-free over shared immutable artifacts.
Feedback is appended to a local JSONL file through a single lock; a
session's first three selections are flagged as warm-up so analysis
can skip them, and exact duplicate submissions are dropped.
"""
from __future__ import annotations

import json
import random
import threading
import time
import uuid
from pathlib import Path

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .artifacts import ModelBundle
from .generator import GenerationConfig, GenerationError, generate, suggest
from .rhyme import artist_rhyme_density, RhymeError

WARMUP_SELECTIONS = 3


class SuggestRequest(BaseModel):
    context: list[str]
    tier: str = "FastFeats"
    count: int = 20
    experiment_mode: bool = False
    seed: int | None = None


class GenerateRequest(BaseModel):
    seed_line: str | None = None
    num_lines: int = Field(default=16, ge=1)
    keywords: list[str] = Field(default_factory=list)
    tier: str = "FastFeats"
    rhyme_block: int = 4
    seed: int | None = None


class ShownLine(BaseModel):
    line_id: int
    score: float
    rank: int


class FeedbackRecord(BaseModel):
    session_id: str
    timestamp: float
    context: list[str]
    shown: list[ShownLine]
    selected_index: int


class FeedbackLog:
    """Append-only JSONL log with per-session counters and dedup."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._session_counts: dict[str, int] = {}
        self._seen: set[tuple[str, float, int]] = set()
        if self.path.exists():
            for raw in self.path.read_text(encoding="utf-8").splitlines():
                if not raw.strip():
                    continue
                rec = json.loads(raw)
                key = (rec["session_id"], rec["timestamp"],
                       rec["selected_index"])
                self._seen.add(key)
                self._session_counts[rec["session_id"]] = \
                    self._session_counts.get(rec["session_id"], 0) + 1

    def append(self, record: FeedbackRecord) -> dict:
        key = (record.session_id, record.timestamp, record.selected_index)
        with self._lock:
            if key in self._seen:
                return {"ok": True, "deduplicated": True}
            count = self._session_counts.get(record.session_id, 0) + 1
            self._session_counts[record.session_id] = count
            self._seen.add(key)
            payload = record.model_dump()
            payload["warm_up"] = count <= WARMUP_SELECTIONS
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(payload) + "\n")
        return {"ok": True, "deduplicated": False,
                "warm_up": payload["warm_up"]}


def read_feedback_log(path: str | Path) -> list[dict]:
    path = Path(path)
    if not path.exists():
        return []
    records = []
    for raw in path.read_text(encoding="utf-8").splitlines():
        if raw.strip():
            records.append(json.loads(raw))
    return records


def create_app(bundle: ModelBundle, feedback_path: str | Path) -> FastAPI:
    app = FastAPI(title="versecraft", version=__version__)
    log = FeedbackLog(feedback_path)
    corpus_digest = bundle.corpus.digest()
    titles = {song.song_id: song.title for song in bundle.corpus.songs}

    @app.get("/api/health")
    def health():
        return {"version": __version__, "corpus_digest": corpus_digest,
                "tiers_available": bundle.tiers_available}

    @app.post("/api/suggest")
    def api_suggest(req: SuggestRequest):
        if not req.context or not any(t.strip() for t in req.context):
            raise HTTPException(status_code=400, detail="empty context")
        try:
            bundle.require_tier(req.tier)
        except KeyError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        # Experiment manipulations apply only to nn5-free requests.
        experiment = req.experiment_mode and "NN5" not in req.tier
        rng = random.Random(req.seed if req.seed is not None else 0)
        try:
            suggestions = suggest(
                [t for t in req.context if t.strip()], bundle.corpus,
                bundle.index, bundle.extractor, bundle.rank_models,
                tier=req.tier, count=req.count, experiment_mode=experiment,
                rng=rng)
        except GenerationError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {
            "request_id": uuid.uuid4().hex,
            "suggestions": [
                {"line": s.line.text, "artist": s.line.artist_id,
                 "title": titles.get(s.line.song_id, ""), "score": s.score,
                 "rank": s.rank, "line_id": s.line.id}
                for s in suggestions],
        }

    @app.post("/api/generate")
    def api_generate(req: GenerateRequest):
        try:
            bundle.require_tier(req.tier)
        except KeyError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        config = GenerationConfig(
            num_lines=req.num_lines, seed_line=req.seed_line, tier=req.tier,
            rhyme_block_len=req.rhyme_block,
            keywords=tuple(req.keywords),
            seed=req.seed if req.seed is not None else int(time.time()))
        try:
            verse = generate(bundle.corpus, bundle.index, bundle.extractor,
                             bundle.rank_models, config)
        except GenerationError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"lines": verse.to_annotated()}

    @app.post("/api/feedback")
    def api_feedback(record: FeedbackRecord):
        if not 0 <= record.selected_index < len(record.shown):
            raise HTTPException(status_code=400,
                                detail="selected_index out of range")
        return log.append(record)

    @app.get("/api/rhyme-density")
    def api_rhyme_density(artist: str):
        try:
            density = artist_rhyme_density(bundle.corpus, artist)
        except RhymeError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        songs = len(bundle.corpus.songs_by_artist(artist))
        return {"artist": artist, "density": density, "songs": songs}

    return app
