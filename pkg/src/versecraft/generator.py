"""Verse generation by repeated next-line retrieval and ranking.

Each step retrieves the best end-rhyming candidates for a rhyme anchor,
scores them with the rank model, drops infeasible ones (same song as
the previous pick, or same final word), and keeps the best survivor.
The anchor is the previous line, or the first line of the current
rhyme block when blocks are enabled, which holds one end rhyme for a
run of consecutive lines.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .corpus import Corpus, Line, tokenize
from .features import FeatureExtractor
from .index import CandidateIndex
from .phonetics import line_vowels
from .ranker import RankModel

DEFAULT_K = 300
NN_RERANK_DEPTH = 30
SUGGESTION_COUNT = 20
EXPERIMENT_TOP = 14            # ranks 1..14 are always shown
EXPERIMENT_BOTTOM = (298, 300)  # plus ranks 298..300
EXPERIMENT_RANDOM_PICKS = 3    # plus three from the middle


class GenerationError(ValueError):
    pass


@dataclass(frozen=True)
class GenerationConfig:
    num_lines: int
    seed_line: str | None = None
    tier: str = "FastFeats"
    k: int = DEFAULT_K
    rhyme_block_len: int = 4
    keywords: tuple[str, ...] = ()
    seed: int = 0

    def __post_init__(self):
        if self.num_lines < 1:
            raise GenerationError("num_lines must be at least 1")
        if self.rhyme_block_len < 1:
            raise GenerationError("rhyme_block_len must be at least 1")


@dataclass(frozen=True)
class GeneratedVerse:
    lines: tuple[Line, ...]
    attributions: tuple[tuple[str, str], ...]  # (artist, song title)
    scores: tuple[float, ...]
    fallbacks: int = 0  # selections that had to use the random fallback

    def texts(self) -> list[str]:
        return [ln.text for ln in self.lines]

    def to_annotated(self) -> list[dict]:
        return [{"text": ln.text, "artist": art, "title": title,
                 "score": score}
                for ln, (art, title), score in zip(
                    self.lines, self.attributions, self.scores)]


@dataclass(frozen=True)
class Suggestion:
    line: Line
    score: float
    rank: int  # 1-based true rank under the model


def rhyme_ok(candidate: Line, lyrics_so_far: Sequence[Line | str]) -> bool:
    """False when the candidate repeats the previous line's song or its
    final word; generation keeps rhymes from degenerating into echoes."""
    if not lyrics_so_far:
        raise GenerationError("lyrics_so_far must be non-empty")
    prev = lyrics_so_far[-1]
    if isinstance(prev, Line):
        if candidate.song_id == prev.song_id:
            return False
        prev_last = prev.last_token
    else:
        prev_tokens = tokenize(prev)
        prev_last = prev_tokens[-1] if prev_tokens else None
    return prev_last is None or candidate.last_token != prev_last


@dataclass
class KeywordPlan:
    """Tracks which requested keywords still need to be placed."""

    unplaced: set[str] = field(default_factory=set)

    @classmethod
    def for_corpus(cls, keywords: Sequence[str], corpus: Corpus
                   ) -> "KeywordPlan":
        wanted = {k.lower() for k in keywords}
        if wanted:
            available: set[str] = set()
            for ln in corpus.lines:
                available.update(ln.tokens)
            missing = wanted - available
            if missing:
                raise GenerationError(
                    f"keywords not in corpus: {sorted(missing)}")
        return cls(unplaced=wanted)

    def mark_placed(self, line: Line) -> None:
        self.unplaced -= set(line.tokens)


def apply_keywords(candidates: Sequence[Line], plan: KeywordPlan
                   ) -> list[Line]:
    """While keywords remain, restrict the pool to candidates containing
    one; if the current pool has none, pass through unchanged."""
    if not plan.unplaced:
        return list(candidates)
    matching = [c for c in candidates
                if plan.unplaced.intersection(c.tokens)]
    return matching if matching else list(candidates)


def _keyword_lines(corpus: Corpus, plan: KeywordPlan) -> list[Line]:
    return [ln for ln in corpus.lines
            if plan.unplaced.intersection(ln.tokens)]


def _ranked_candidates(extractor: FeatureExtractor,
                       models: dict[str, RankModel], tier: str,
                       context: Sequence[Line | str],
                       candidates: list[Line]) -> list[tuple[Line, float]]:
    """Score candidates for a tier, tie-broken by line id.

    The nn5 tier reranks only the FastFeats top 30, since the network
    dominates scoring cost; the remainder keeps its FastFeats order.
    """
    if tier == "FastFeatsNN5":
        fast = _ranked_candidates(extractor, models, "FastFeats", context,
                                  candidates)
        head = [ln for ln, _ in fast[:NN_RERANK_DEPTH]]
        model = models["FastFeatsNN5"]
        phi = extractor.matrix(list(context), head, "FastFeatsNN5")
        scores = model.score_matrix(phi)
        reranked = sorted(zip(head, scores),
                          key=lambda pair: (-pair[1], pair[0].id))
        return ([(ln, float(s)) for ln, s in reranked]
                + fast[NN_RERANK_DEPTH:])
    model = models[tier]
    phi = extractor.matrix(list(context), candidates, tier)
    scores = model.score_matrix(phi)
    order = sorted(range(len(candidates)),
                   key=lambda i: (-scores[i], candidates[i].id))
    return [(candidates[i], float(scores[i])) for i in order]


def _retrieve(index: CandidateIndex, corpus: Corpus, anchor: Line | str,
              k: int, backend=None) -> list[Line]:
    text = anchor.text if isinstance(anchor, Line) else anchor
    ids = index.query(line_vowels(text, backend), min(k, index.size))
    return [corpus.line_by_id(i) for i in ids]


def _anchor_index(i: int, block_len: int) -> int:
    """0-based index of the rhyme anchor for line i (0-based, i >= 1)."""
    block_start = (i // block_len) * block_len
    return block_start if block_start < i else i - 1


def generate(corpus: Corpus, index: CandidateIndex,
             extractor: FeatureExtractor, models: dict[str, RankModel],
             config: GenerationConfig, backend=None) -> GeneratedVerse:
    """Build a verse of config.num_lines lines, seed first."""
    if not corpus.lines:
        raise GenerationError("empty corpus")
    rng = random.Random(config.seed)
    plan = KeywordPlan.for_corpus(config.keywords, corpus)

    if config.seed_line is not None:
        exact = [ln for ln in corpus.lines if ln.text == config.seed_line]
        if exact:
            seed_line = exact[0]
        else:
            tokens = tokenize(config.seed_line)
            if not tokens:
                raise GenerationError("seed line has no words")
            seed_line = Line(id=-1, text=config.seed_line, tokens=tokens,
                             song_id=-1, artist_id="you", position=0)
    else:
        seed_line = corpus.lines[rng.randrange(len(corpus.lines))]
    plan.mark_placed(seed_line)

    lines: list[Line] = [seed_line]
    used_ids: set[int] = {seed_line.id}
    scores: list[float] = [0.0]
    fallbacks = 0
    for i in range(1, config.num_lines):
        anchor = lines[_anchor_index(i, config.rhyme_block_len)]
        context = lines[-5:]
        picked: tuple[Line, float] | None = None
        k = config.k
        for _ in range(2):  # second pass widens the retrieval once
            candidates = _retrieve(index, corpus, anchor, k, backend)
            if plan.unplaced:
                # Unplaced keywords pull their lines into the pool so a
                # placeable keyword is placed as soon as it is feasible.
                present = {c.id for c in candidates}
                candidates = candidates + [
                    ln for ln in _keyword_lines(corpus, plan)
                    if ln.id not in present]
            candidates = apply_keywords(candidates, plan)
            for cand, cand_score in _ranked_candidates(
                    extractor, models, config.tier, context, candidates):
                if cand.id not in used_ids and rhyme_ok(cand, lines):
                    picked = (cand, cand_score)
                    break
            if picked is not None:
                break
            k = min(k * 2, index.size)
        if picked is None:
            feasible = [ln for ln in corpus.lines
                        if ln.id not in used_ids and rhyme_ok(ln, lines)]
            if not feasible:
                raise GenerationError("no feasible line in the corpus")
            picked = (feasible[rng.randrange(len(feasible))], float("nan"))
            fallbacks += 1
        used_ids.add(picked[0].id)
        lines.append(picked[0])
        scores.append(picked[1])
        plan.mark_placed(picked[0])

    attributions = []
    songs = {s.song_id: s for s in corpus.songs}
    for ln in lines:
        song = songs.get(ln.song_id)
        attributions.append((ln.artist_id,
                             song.title if song else "(seed)"))
    return GeneratedVerse(lines=tuple(lines),
                          attributions=tuple(attributions),
                          scores=tuple(scores), fallbacks=fallbacks)


def suggest(context: Sequence[Line | str], corpus: Corpus,
            index: CandidateIndex, extractor: FeatureExtractor,
            models: dict[str, RankModel], tier: str = "FastFeats",
            count: int = SUGGESTION_COUNT, experiment_mode: bool = False,
            rng: random.Random | None = None, k: int = DEFAULT_K,
            backend=None) -> list[Suggestion]:
    """Ranked next-line suggestions for an interactive session.

    Normal mode returns the top `count` feasible candidates by score.
    Experiment mode composes ranks 1-14, 298-300, and three uniform
    picks from 15-297, then shuffles the display order; it needs a full
    300-deep feasible ranking and is not available with nn5 tiers.
    """
    if not context:
        raise GenerationError("context must not be empty")
    if rng is None:
        rng = random.Random(0)
    if experiment_mode and tier != "FastFeats":
        raise GenerationError("experiment mode runs only on FastFeats")

    # The candidate set is the k best-rhyming feasible lines; retrieval
    # widens as needed because nearby lines often share a song.
    needed = EXPERIMENT_BOTTOM[1] if experiment_mode else count
    limit = max(k, needed)
    retrieve_k = min(index.size, limit)
    while True:
        candidates = _retrieve(index, corpus, context[-1], retrieve_k,
                               backend)
        feasible = [ln for ln in candidates if rhyme_ok(ln, context)]
        if len(feasible) >= limit or retrieve_k >= index.size:
            break
        retrieve_k = min(index.size, retrieve_k * 2)
    ranked = _ranked_candidates(extractor, models, tier, context,
                                feasible[:limit])

    if experiment_mode:
        bottom_lo, bottom_hi = EXPERIMENT_BOTTOM
        if len(ranked) < bottom_hi:
            raise GenerationError(
                f"experiment mode needs {bottom_hi} rankable candidates, "
                f"got {len(ranked)}")
        picks = list(range(1, EXPERIMENT_TOP + 1))
        picks += list(range(bottom_lo, bottom_hi + 1))
        picks += rng.sample(range(EXPERIMENT_TOP + 1, bottom_lo),
                            EXPERIMENT_RANDOM_PICKS)
        suggestions = [Suggestion(line=ranked[r - 1][0],
                                  score=ranked[r - 1][1], rank=r)
                       for r in picks]
        rng.shuffle(suggestions)
        return suggestions
    return [Suggestion(line=ln, score=s, rank=i + 1)
            for i, (ln, s) in enumerate(ranked[:count])]
