"""Pairwise linear ranking: preference extraction, training, scoring.

Relevance is a linear model over standardized features. Training
minimizes the L2-regularized pairwise hinge loss
``sum_i max(0, 1 - w·(φ⁺_i - φ⁻_i)) + ||w||² / (2C)`` by deterministic
full-batch subgradient descent; the trade-off C is picked by validation
MRR over a fixed grid. The scaler is part of the model file, so a saved
model scores on its own.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .corpus import Corpus, Line
from .features import TIER_FEATURES, FeatureExtractor

C_GRID = (1.0, 1e1, 1e2, 1e3, 1e4, 1e5)

ContextLike = Sequence  # Line or str entries


class RankerError(ValueError):
    pass


@dataclass(frozen=True)
class PreferencePair:
    """`preferred` beats `rejected` as the next line after `context`."""

    context: tuple
    preferred: Line | str
    rejected: Line | str
    source: str = "corpus"

    def __post_init__(self):
        pid = self.preferred.id if isinstance(self.preferred, Line) \
            else self.preferred
        rid = self.rejected.id if isinstance(self.rejected, Line) \
            else self.rejected
        if pid == rid:
            raise RankerError("preferred and rejected must differ")


@dataclass
class RankModel:
    tier: str
    weights: np.ndarray
    means: np.ndarray
    stds: np.ndarray
    c_value: float

    @property
    def feature_names(self) -> tuple[str, ...]:
        return TIER_FEATURES[self.tier]

    def __post_init__(self):
        n = len(TIER_FEATURES[self.tier])
        if not (len(self.weights) == len(self.means) == len(self.stds) == n):
            raise RankerError(
                f"tier {self.tier} expects {n} features")
        if not np.all(np.isfinite(self.weights)):
            raise RankerError("weights must be finite")

    @classmethod
    def manual(cls, tier: str, weights) -> "RankModel":
        """A model with hand-set weights and an identity scaler."""
        n = len(TIER_FEATURES[tier])
        w = np.asarray(weights, dtype=np.float64)
        return cls(tier=tier, weights=w, means=np.zeros(n), stds=np.ones(n),
                   c_value=0.0)

    def with_weights(self, weights) -> "RankModel":
        return RankModel(tier=self.tier,
                         weights=np.asarray(weights, dtype=np.float64),
                         means=self.means, stds=self.stds,
                         c_value=self.c_value)

    def score_matrix(self, phi: np.ndarray) -> np.ndarray:
        return ((phi - self.means) / self.stds) @ self.weights

    def save(self, path: str | Path) -> None:
        lines = [
            "versecraft-rank-model v1",
            f"tier\t{self.tier}",
            f"C\t{self.c_value!r}",
            "features\t" + ",".join(self.feature_names),
            "means\t" + ",".join(repr(float(x)) for x in self.means),
            "stds\t" + ",".join(repr(float(x)) for x in self.stds),
            "weights\t" + ",".join(repr(float(x)) for x in self.weights),
        ]
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "RankModel":
        raw = Path(path).read_text(encoding="utf-8").splitlines()
        if not raw or raw[0] != "versecraft-rank-model v1":
            raise RankerError(f"not a rank model file: {path}")
        fields = dict(line.split("\t", 1) for line in raw[1:] if line)
        tier = fields["tier"]
        names = tuple(fields["features"].split(","))
        if names != TIER_FEATURES.get(tier):
            raise RankerError("feature list does not match tier")

        def vec(key):
            return np.array([float(x) for x in fields[key].split(",")])

        return cls(tier=tier, weights=vec("weights"), means=vec("means"),
                   stds=vec("stds"), c_value=float(fields["C"]))


# ---------------------------------------------------------------------------
# Preference extraction.
# ---------------------------------------------------------------------------

def extract_corpus_prefs(corpus: Corpus, artists, samples_per_line: int = 1,
                         seed: int = 0, max_context: int = 5
                         ) -> list[PreferencePair]:
    """True next lines beat uniformly sampled fakes, fake ≠ true."""
    rng = random.Random(seed)
    pool = [ln for ln in corpus.lines if ln.artist_id in artists]
    if len(pool) < 2:
        return []
    pairs: list[PreferencePair] = []
    for song in corpus.songs:
        if song.artist_id not in artists:
            continue
        for pos in range(1, len(song.lines)):
            true_line = song.lines[pos]
            context = tuple(song.lines[max(0, pos - max_context):pos])
            for _ in range(samples_per_line):
                rejected = true_line
                while rejected.id == true_line.id:
                    rejected = pool[rng.randrange(len(pool))]
                pairs.append(PreferencePair(context=context,
                                            preferred=true_line,
                                            rejected=rejected))
    return pairs


def extract_click_prefs(records: list[dict], corpus: Corpus,
                        include_warmup: bool = False
                        ) -> tuple[list[PreferencePair], int]:
    """Selected line beats every line displayed above it.

    Records are feedback dicts (see service.FeedbackRecord). Returns
    (pairs, skipped_record_count); malformed records are skipped.
    """
    pairs: list[PreferencePair] = []
    skipped = 0
    for rec in records:
        try:
            if rec.get("warm_up") and not include_warmup:
                continue
            shown = rec["shown"]
            sel = rec["selected_index"]
            context = tuple(rec["context"])
            if not 0 <= sel < len(shown):
                raise KeyError("selected_index out of range")
            preferred = corpus.line_by_id(shown[sel]["line_id"])
            for above in shown[:sel]:
                rejected = corpus.line_by_id(above["line_id"])
                if rejected.id == preferred.id:
                    continue
                pairs.append(PreferencePair(context=context,
                                            preferred=preferred,
                                            rejected=rejected,
                                            source="clicklog"))
        except (KeyError, TypeError, IndexError):
            skipped += 1
    return pairs, skipped


# ---------------------------------------------------------------------------
# Training.
# ---------------------------------------------------------------------------

def _pair_features(pairs: list[PreferencePair], extractor: FeatureExtractor,
                   tier: str) -> tuple[np.ndarray, np.ndarray]:
    pos = np.vstack([extractor.matrix(list(p.context), [p.preferred], tier)
                     for p in pairs])
    neg = np.vstack([extractor.matrix(list(p.context), [p.rejected], tier)
                     for p in pairs])
    return pos, neg


def _fit_weights(deltas: np.ndarray, c_value: float, epochs: int) -> np.ndarray:
    """Full-batch Pegasos-style subgradient descent on the hinge objective.

    Includes the ball projection and averages the second half of the
    iterates, which keeps large-C runs stable.
    """
    n, d = deltas.shape
    lam = 1.0 / (n * c_value)
    radius = 1.0 / np.sqrt(lam)
    w = np.zeros(d)
    w_sum = np.zeros(d)
    averaged = 0
    for t in range(1, epochs + 1):
        margins = deltas @ w
        viol = deltas[margins < 1.0]
        grad = lam * w - (viol.sum(axis=0) / n if len(viol) else 0.0)
        w = w - grad / (lam * (t + 1))
        norm = np.linalg.norm(w)
        if norm > radius:
            w = w * (radius / norm)
        if t > epochs // 2:
            w_sum += w
            averaged += 1
    return w_sum / averaged


def hinge_objective(w: np.ndarray, deltas: np.ndarray, c_value: float
                    ) -> float:
    margins = 1.0 - deltas @ w
    return float(np.maximum(margins, 0.0).sum()
                 + np.dot(w, w) / (2.0 * c_value))


def train(pairs: list[PreferencePair], tier: str,
          extractor: FeatureExtractor,
          validation_scorer: Callable[["RankModel"], float] | None = None,
          c_grid: Sequence[float] = C_GRID, epochs: int = 300) -> RankModel:
    """Fit the scaler and weights; pick C by validation MRR.

    Without a validation scorer the first grid value is used (handy for
    fixtures). Deterministic for a fixed pair order.
    """
    if not pairs:
        raise RankerError("no training pairs")
    pos, neg = _pair_features(pairs, extractor, tier)
    stacked = np.vstack([pos, neg])
    means = stacked.mean(axis=0)
    stds = stacked.std(axis=0)
    stds[stds == 0.0] = 1.0  # degenerate features keep unit scale
    deltas = (pos - means) / stds - (neg - means) / stds
    if not np.any(np.abs(deltas) > 1e-12):
        raise RankerError("all feature vectors identical; nothing to learn")

    best: tuple[float, float, np.ndarray] | None = None
    grid = list(c_grid) if validation_scorer is not None else [c_grid[0]]
    for c_value in grid:
        w = _fit_weights(deltas, c_value, epochs)
        model = RankModel(tier=tier, weights=w, means=means, stds=stds,
                          c_value=c_value)
        quality = validation_scorer(model) if validation_scorer else 0.0
        if best is None or quality > best[0]:
            best = (quality, c_value, w)
    _, c_value, w = best
    return RankModel(tier=tier, weights=w, means=means, stds=stds,
                     c_value=c_value)


# ---------------------------------------------------------------------------
# Scoring.
# ---------------------------------------------------------------------------

def score(model: RankModel, extractor: FeatureExtractor,
          context: ContextLike, candidate: Line | str) -> float:
    phi = extractor.matrix(list(context), [candidate], model.tier)
    return float(model.score_matrix(phi)[0])


def rank_candidates(model: RankModel, extractor: FeatureExtractor,
                    context: ContextLike, candidates: Sequence[Line]
                    ) -> list[tuple[Line, float]]:
    """Candidates by descending score; ties broken by ascending line id."""
    if not candidates:
        raise RankerError("no candidates to rank")
    phi = extractor.matrix(list(context), list(candidates), model.tier)
    scores = model.score_matrix(phi)
    order = sorted(range(len(candidates)),
                   key=lambda i: (-scores[i], candidates[i].id))
    return [(candidates[i], float(scores[i])) for i in order]
