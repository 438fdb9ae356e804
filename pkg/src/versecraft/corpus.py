"""Lyrics corpus: ingestion, normalization, tokenization, artist splits.

The corpus file is JSONL with one song per record:
``{"artist": str, "title": str, "lines": [str, ...]}``. Line ids are
assigned by file order and are stable across re-ingestion. A corpus is
immutable once normalized and safe to share between threads.
"""
from __future__ import annotations

import hashlib
import json
import random
import re
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

_TOKEN_RE = re.compile(r"[a-z0-9']+")
_FILTERED_TITLE_WORDS = ("intro", "outro", "skit", "interlude")


class CorpusError(ValueError):
    """Malformed corpus input."""


def tokenize(text: str) -> tuple[str, ...]:
    """Lowercase word list; apostrophes are word-internal, the rest of
    the punctuation is stripped."""
    tokens = []
    for tok in _TOKEN_RE.findall(text.lower()):
        tok = tok.strip("'")
        if tok:
            tokens.append(tok)
    return tuple(tokens)


@dataclass(frozen=True)
class Line:
    id: int
    text: str
    tokens: tuple[str, ...]
    song_id: int
    artist_id: str
    position: int

    @property
    def last_token(self) -> str:
        return self.tokens[-1]


@dataclass(frozen=True)
class Song:
    song_id: int
    title: str
    artist_id: str
    lines: tuple[Line, ...]


@dataclass(frozen=True)
class QueryContext:
    """The known song prefix B = (s_1, ..., s_m); the ranking query."""

    prefix_lines: tuple[Line, ...]

    def __post_init__(self):
        if len(self.prefix_lines) < 1:
            raise ValueError("query context needs at least one line")

    @property
    def last(self) -> Line:
        return self.prefix_lines[-1]

    @property
    def second_to_last(self) -> Line | None:
        if len(self.prefix_lines) < 2:
            return None
        return self.prefix_lines[-2]

    def tail(self, k: int) -> tuple[Line, ...]:
        return self.prefix_lines[-k:]


@dataclass(frozen=True)
class CorpusSplit:
    train: frozenset[str]
    validation: frozenset[str]
    test: frozenset[str]
    seed: int


@dataclass(frozen=True)
class Corpus:
    songs: tuple[Song, ...]
    normalized: bool = False
    _lines: tuple[Line, ...] = field(default=(), repr=False)

    @property
    def lines(self) -> tuple[Line, ...]:
        return self._lines

    @property
    def artists(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for song in self.songs:
            seen.setdefault(song.artist_id, None)
        return tuple(seen)

    def line_by_id(self, line_id: int) -> Line:
        return self._by_id[line_id]

    def songs_by_artist(self, artist_id: str) -> tuple[Song, ...]:
        return tuple(s for s in self.songs if s.artist_id == artist_id)

    def __post_init__(self):
        lines = tuple(line for song in self.songs for line in song.lines)
        object.__setattr__(self, "_lines", lines)
        object.__setattr__(self, "_by_id", {ln.id: ln for ln in lines})

    def digest(self) -> str:
        h = hashlib.sha256()
        for song in self.songs:
            h.update(song.artist_id.encode())
            h.update(b"\x00")
            h.update(song.title.encode())
            for line in song.lines:
                h.update(b"\x01")
                h.update(line.text.encode())
        return h.hexdigest()


def _packaged_corpus_path() -> Path:
    return Path(str(resources.files("versecraft.data").joinpath(
        "sample_corpus.jsonl")))


def ingest(path: str | Path | None = None) -> Corpus:
    """Load a JSONL corpus file. None loads the packaged sample corpus.

    Lines whose tokenization is empty are skipped; ids are assigned to
    the kept lines in file order.
    """
    if path is None:
        path = _packaged_corpus_path()
    path = Path(path)
    if not path.exists():
        raise CorpusError(f"corpus file not found: {path}")
    songs: list[Song] = []
    seen_keys: set[tuple[str, str]] = set()
    next_line_id = 0
    with path.open(encoding="utf-8") as fh:
        for rec_idx, raw in enumerate(fh):
            if not raw.strip():
                continue
            try:
                rec = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise CorpusError(
                    f"record {rec_idx}: invalid JSON ({exc})") from exc
            for key in ("artist", "title", "lines"):
                if key not in rec:
                    raise CorpusError(f"record {rec_idx}: missing {key!r}")
            if not isinstance(rec["lines"], list) or not all(
                    isinstance(x, str) for x in rec["lines"]):
                raise CorpusError(
                    f"record {rec_idx}: 'lines' must be a list of strings")
            ident = (rec["artist"], rec["title"])
            if ident in seen_keys:
                raise CorpusError(
                    f"record {rec_idx}: duplicate song {ident!r}")
            seen_keys.add(ident)
            song_id = len(songs)
            lines: list[Line] = []
            for text in rec["lines"]:
                tokens = tokenize(text)
                if not tokens:
                    continue
                lines.append(Line(id=next_line_id, text=text, tokens=tokens,
                                  song_id=song_id, artist_id=rec["artist"],
                                  position=len(lines)))
                next_line_id += 1
            songs.append(Song(song_id=song_id, title=rec["title"],
                              artist_id=rec["artist"], lines=tuple(lines)))
    return Corpus(songs=tuple(songs))


def normalize(corpus: Corpus) -> Corpus:
    """Deduplicate lines within songs and drop spoken-word tracks.

    Keeps the first occurrence of each exact line text inside a song and
    removes songs whose lowercase title contains "intro", "outro",
    "skit", or "interlude". Line ids are preserved; positions are
    recomputed so they stay consecutive. Idempotent.
    """
    songs: list[Song] = []
    for song in corpus.songs:
        title = song.title.lower()
        if any(word in title for word in _FILTERED_TITLE_WORDS):
            continue
        seen_texts: set[str] = set()
        kept: list[Line] = []
        for line in song.lines:
            if line.text in seen_texts:
                continue
            seen_texts.add(line.text)
            kept.append(replace(line, position=len(kept)))
        if kept:
            songs.append(replace(song, lines=tuple(kept)))
    return Corpus(songs=tuple(songs), normalized=True)


def load_corpus(path: str | Path | None = None) -> Corpus:
    """ingest + normalize in one call."""
    return normalize(ingest(path))


def split_by_artist(corpus: Corpus, seed: int) -> CorpusSplit:
    """Partition artists 50/25/25 into train/validation/test.

    Validation and test take floor(n/4) artists each; the remainder
    rounds toward train. Deterministic per seed.
    """
    artists = sorted(corpus.artists)
    if len(artists) < 4:
        raise CorpusError("need at least 4 artists to split")
    rng = random.Random(seed)
    rng.shuffle(artists)
    n = len(artists)
    n_val = n // 4
    n_test = n // 4
    n_train = n - n_val - n_test
    return CorpusSplit(
        train=frozenset(artists[:n_train]),
        validation=frozenset(artists[n_train:n_train + n_val]),
        test=frozenset(artists[n_train + n_val:]),
        seed=seed,
    )


def lines_for_artists(corpus: Corpus, artists: frozenset[str] | set[str]
                      ) -> tuple[Line, ...]:
    return tuple(ln for ln in corpus.lines if ln.artist_id in artists)


def songs_for_artists(corpus: Corpus, artists: frozenset[str] | set[str]
                      ) -> tuple[Song, ...]:
    return tuple(s for s in corpus.songs if s.artist_id in artists)
