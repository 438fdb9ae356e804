"""Next-line prediction benchmark, rank correlation, preference analysis.

The benchmark ranks the true next line of held-out songs within a
300-candidate set and aggregates mean rank, MRR, and recall at N. Ranks
are pessimistic under score ties (the true line counts after every line
tied with it).
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .corpus import Corpus, Line
from .features import FeatureExtractor
from .ranker import RankModel, extract_click_prefs

CANDIDATE_SET_SIZE = 300
RECALL_POINTS = (1, 5, 30, 150)
DEFAULT_NUM_QUERIES = 10_000


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class EvalQuery:
    context: tuple[Line, ...]
    true_line: Line
    candidates: tuple[Line, ...]  # true line included


@dataclass(frozen=True)
class EvalReport:
    mean_rank: float
    mrr: float
    recall_at: dict[int, float]
    num_queries: int
    tier: str
    candidate_set_size: int = CANDIDATE_SET_SIZE

    def to_json(self) -> str:
        return json.dumps({
            "mean_rank": self.mean_rank,
            "mrr": self.mrr,
            "recall_at": {str(k): v for k, v in sorted(self.recall_at.items())},
            "num_queries": self.num_queries,
            "candidate_set_size": self.candidate_set_size,
            "tier": self.tier,
        }, indent=2)

    def to_table(self) -> str:
        cols = ["Mean rank", "MRR"] + [f"Rec@{n}" for n in RECALL_POINTS]
        vals = [f"{self.mean_rank:.1f}", f"{self.mrr:.3f}"] + [
            f"{self.recall_at[n]:.3f}" for n in RECALL_POINTS]
        widths = [max(len(c), len(v)) for c, v in zip(cols, vals)]
        head = "  ".join(c.rjust(w) for c, w in zip(cols, widths))
        row = "  ".join(v.rjust(w) for v, w in zip(vals, widths))
        return head + "\n" + row


def build_queries(corpus: Corpus, artists, num_queries: int, seed: int,
                  candidate_set_size: int = CANDIDATE_SET_SIZE,
                  max_context: int = 5) -> list[EvalQuery]:
    """Sample (context, true next line, candidates) benchmark queries.

    Context length m is uniform on [1, min(position, max_context)]. The
    candidate set is the true line plus distinct uniform others from the
    whole corpus. Deterministic per seed.
    """
    if len(corpus.lines) < candidate_set_size:
        raise EvaluationError(
            f"corpus has {len(corpus.lines)} lines; "
            f"need at least {candidate_set_size}")
    rng = random.Random(seed)
    eligible: list[tuple[int, int]] = []
    songs = {s.song_id: s for s in corpus.songs}
    for song in corpus.songs:
        if song.artist_id not in artists:
            continue
        eligible.extend((song.song_id, pos)
                        for pos in range(1, len(song.lines)))
    if not eligible:
        raise EvaluationError("no eligible queries for the given artists")
    chosen = (rng.sample(eligible, num_queries)
              if num_queries < len(eligible) else list(eligible))

    all_lines = corpus.lines
    queries: list[EvalQuery] = []
    for song_id, pos in chosen:
        song = songs[song_id]
        true_line = song.lines[pos]
        m = rng.randint(1, min(pos, max_context))
        context = tuple(song.lines[pos - m:pos])
        others: list[Line] = []
        seen = {true_line.id}
        while len(others) < candidate_set_size - 1:
            cand = all_lines[rng.randrange(len(all_lines))]
            if cand.id in seen:
                continue
            seen.add(cand.id)
            others.append(cand)
        queries.append(EvalQuery(context=context, true_line=true_line,
                                 candidates=(true_line, *others)))
    return queries


def pessimistic_rank(scores: np.ndarray, true_idx: int) -> int:
    """1-based rank of the true line, counted after all tied scores."""
    s = scores[true_idx]
    return int(1 + (scores > s).sum() + (scores == s).sum() - 1)


def _aggregate(ranks: list[int], tier: str, candidate_set_size: int
               ) -> EvalReport:
    arr = np.asarray(ranks, dtype=np.float64)
    recall = {n: float((arr <= n).mean()) for n in RECALL_POINTS}
    recall[candidate_set_size] = float((arr <= candidate_set_size).mean())
    return EvalReport(mean_rank=float(arr.mean()),
                      mrr=float((1.0 / arr).mean()),
                      recall_at=recall,
                      num_queries=len(ranks),
                      tier=tier,
                      candidate_set_size=candidate_set_size)


class NextLineEvaluator:
    """Caches per-query feature matrices so several models can be
    scored on the same benchmark without re-extracting features."""

    def __init__(self, queries: list[EvalQuery], extractor: FeatureExtractor,
                 tier: str = "All"):
        self.queries = queries
        self.extractor = extractor
        self.tier = tier
        self._matrices: list[np.ndarray] | None = None

    def matrices(self) -> list[np.ndarray]:
        if self._matrices is None:
            self._matrices = [
                self.extractor.matrix(list(q.context), list(q.candidates),
                                      self.tier)
                for q in self.queries]
        return self._matrices

    def evaluate_model(self, model: RankModel) -> EvalReport:
        if model.tier != self.tier:
            raise EvaluationError(
                f"evaluator built for tier {self.tier}, model is {model.tier}")
        ranks = [pessimistic_rank(model.score_matrix(phi), 0)
                 for phi in self.matrices()]
        return _aggregate(ranks, model.tier, len(self.queries[0].candidates))

    def evaluate_scorer(self, scorer: Callable[[EvalQuery], np.ndarray],
                        label: str) -> EvalReport:
        ranks = [pessimistic_rank(scorer(q), 0) for q in self.queries]
        return _aggregate(ranks, label, len(self.queries[0].candidates))


def next_line_eval(model: RankModel, corpus: Corpus, artists,
                   extractor: FeatureExtractor,
                   num_queries: int = DEFAULT_NUM_QUERIES,
                   seed: int = 0) -> EvalReport:
    queries = build_queries(corpus, artists, num_queries, seed)
    return NextLineEvaluator(queries, extractor,
                             model.tier).evaluate_model(model)


def random_baseline_eval(corpus: Corpus, artists, num_queries: int,
                         seed: int = 0) -> EvalReport:
    """Uniform-random scorer benchmark; mean rank should sit near
    (k + 1) / 2 and Rec@150 near one half."""
    queries = build_queries(corpus, artists, num_queries, seed)
    rng = np.random.RandomState(seed + 1)
    ranks = [pessimistic_rank(rng.random_sample(len(q.candidates)), 0)
             for q in queries]
    return _aggregate(ranks, "Random", len(queries[0].candidates))


# ---------------------------------------------------------------------------
# Kendall tau.
# ---------------------------------------------------------------------------

def kendall_tau(rank_a: Mapping, rank_b: Mapping,
                ties: str = "unfavorable") -> float:
    """Rank correlation over a shared item set.

    ``ties="unfavorable"`` counts every pair tied in either ranking as
    discordant (the conservative reading used when one ranking contains
    grouped ranks); ``ties="neutral"`` counts tied pairs as zero. The
    denominator is always n(n-1)/2.
    """
    if set(rank_a) != set(rank_b):
        raise EvaluationError("rankings must cover the same items")
    if len(rank_a) < 2:
        raise EvaluationError("need at least two items")
    if ties not in ("unfavorable", "neutral"):
        raise EvaluationError(f"unknown tie policy {ties!r}")
    items = list(rank_a)
    n = len(items)
    concordant = discordant = 0
    for i in range(n):
        for j in range(i + 1, n):
            da = rank_a[items[i]] - rank_a[items[j]]
            db = rank_b[items[i]] - rank_b[items[j]]
            if da == 0 or db == 0:
                if ties == "unfavorable":
                    discordant += 1
            elif (da > 0) == (db > 0):
                concordant += 1
            else:
                discordant += 1
    return (concordant - discordant) / (n * (n - 1) / 2)


# ---------------------------------------------------------------------------
# Preference-log agreement.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AgreementCurve:
    """P(user picked the higher-scored line) per |score difference| bin."""

    bin_edges: tuple[float, ...]      # len = n_bins + 1
    probabilities: tuple[float, ...]  # len = n_bins
    counts: tuple[int, ...]

    def to_csv_rows(self) -> list[tuple[float, float, float, int]]:
        rows = []
        for i, (p, c) in enumerate(zip(self.probabilities, self.counts)):
            rows.append((self.bin_edges[i], self.bin_edges[i + 1], p, c))
        return rows


def agreement_from_pairs(score_pairs: Sequence[tuple[float, float]],
                         bin_edges: Sequence[float] | None = None,
                         n_bins: int = 8) -> AgreementCurve:
    """score_pairs: (selected_score, rejected_score) per preference."""
    if not score_pairs:
        raise EvaluationError("no preference pairs")
    diffs = np.array([s - r for s, r in score_pairs])
    hits = diffs > 0
    mags = np.abs(diffs)
    if bin_edges is None:
        qs = np.linspace(0.0, 1.0, n_bins + 1)
        # Tied magnitudes can collapse quantiles; drop the empty bins.
        edges = np.unique(np.quantile(mags, qs))
        if len(edges) < 2:
            edges = np.array([float(edges[0]), float(edges[0]) + 1.0])
    else:
        edges = np.asarray(bin_edges, dtype=np.float64)
    n_bins = len(edges) - 1
    probs: list[float] = []
    counts: list[int] = []
    assigned = np.clip(np.searchsorted(edges, mags, side="right") - 1,
                       0, n_bins - 1)
    for b in range(n_bins):
        mask = assigned == b
        counts.append(int(mask.sum()))
        probs.append(float(hits[mask].mean()) if mask.any() else 0.0)
    return AgreementCurve(bin_edges=tuple(float(e) for e in edges),
                          probabilities=tuple(probs),
                          counts=tuple(counts))


def preference_agreement(records: list[dict], model: RankModel,
                         extractor: FeatureExtractor, corpus: Corpus,
                         bin_edges: Sequence[float] | None = None,
                         n_bins: int = 8,
                         include_warmup: bool = False) -> AgreementCurve:
    """Rescore logged preferences with `model` and bin the agreement."""
    pairs, _ = extract_click_prefs(records, corpus,
                                   include_warmup=include_warmup)
    if not pairs:
        raise EvaluationError("log contains no usable preferences")
    score_pairs = []
    for pair in pairs:
        phi = extractor.matrix(list(pair.context),
                               [pair.preferred, pair.rejected], model.tier)
        s = model.score_matrix(phi)
        score_pairs.append((float(s[0]), float(s[1])))
    return agreement_from_pairs(score_pairs, bin_edges, n_bins)
