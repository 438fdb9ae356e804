"""Similarity features between a song prefix and a candidate next line.

Eight features in three groups: rhyme (end_rhyme, end_rhyme_1,
other_rhyme), structure (line_length), and semantics (bow, bow5, lsa,
nn5). Feature tiers select subsets: FastFeats leaves out the expensive
other_rhyme/lsa/nn5; FastFeatsNN5 adds the neural score back.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from .corpus import Line, tokenize
from .phonetics import line_vowels
from .rhyme import longest_common_vowel_suffix, longest_match_near

FEATURE_ORDER = ("end_rhyme", "end_rhyme_1", "other_rhyme", "line_length",
                 "bow", "bow5", "lsa", "nn5")

TIER_FEATURES: dict[str, tuple[str, ...]] = {
    "FastFeats": ("end_rhyme", "end_rhyme_1", "line_length", "bow", "bow5"),
    "FastFeatsNN5": ("end_rhyme", "end_rhyme_1", "line_length", "bow",
                     "bow5", "nn5"),
    "All": FEATURE_ORDER,
}

LSA_VERSION = 1


class FeatureError(ValueError):
    pass


@dataclass(frozen=True)
class FeatureVector:
    """One φ(B, ℓ). Components outside the tier are None."""

    tier: str
    end_rhyme: float | None = None
    end_rhyme_1: float | None = None
    other_rhyme: float | None = None
    line_length: float | None = None
    bow: float | None = None
    bow5: float | None = None
    lsa: float | None = None
    nn5: float | None = None

    def as_array(self) -> np.ndarray:
        values = [getattr(self, name) for name in TIER_FEATURES[self.tier]]
        if any(v is None for v in values):
            raise FeatureError(f"incomplete vector for tier {self.tier}")
        return np.asarray(values, dtype=np.float64)

    def to_json(self) -> str:
        payload = {name: getattr(self, name)
                   for name in TIER_FEATURES[self.tier]}
        return json.dumps({"tier": self.tier, "features": payload},
                          sort_keys=True)


# ---------------------------------------------------------------------------
# Pairwise feature primitives.
# ---------------------------------------------------------------------------

def jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    if not a and not b:
        return 0.0
    return len(a & b) / len(a | b)


def length_similarity(len_a: int, len_b: int) -> float:
    if len_a <= 0 or len_b <= 0:
        raise FeatureError("line length similarity needs non-empty lines")
    return 1.0 - abs(len_a - len_b) / max(len_a, len_b)


@dataclass(frozen=True)
class LineProfile:
    """Precomputed per-line data shared by all feature computations."""

    text: str
    char_len: int
    token_set: frozenset[str]
    vowels: tuple[str, ...]
    word_vowels: tuple[tuple[str, ...], ...]

    @classmethod
    def from_text(cls, text: str, backend=None) -> "LineProfile":
        seq = line_vowels(text, backend)
        words = tuple(seq.vowels[s:e] for s, e in seq.word_boundaries)
        return cls(text=text, char_len=len(text.strip()),
                   token_set=frozenset(tokenize(text)), vowels=seq.vowels,
                   word_vowels=words)


def other_rhyme_value(candidate: LineProfile, last: LineProfile) -> float:
    """Mean over candidate words of the longest vowel match in s_m."""
    lengths = [longest_match_near(wv, last.vowels)
               for wv in candidate.word_vowels if wv]
    if not lengths:
        return 0.0
    return sum(lengths) / len(lengths)


# ---------------------------------------------------------------------------
# Latent semantic analysis.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    text = resources.files("versecraft.data").joinpath(
        "stopwords.txt").read_text(encoding="utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


@dataclass(frozen=True)
class LsaModel:
    """Term factors of a truncated line-term factorization."""

    vocabulary: dict[str, int]
    projection: np.ndarray          # (n_terms, rank)
    singular_values: np.ndarray     # (rank,)
    rank: int

    def project_tokens(self, tokens) -> np.ndarray:
        vec = np.zeros(self.rank)
        for tok in tokens:
            col = self.vocabulary.get(tok)
            if col is not None:
                vec += self.projection[col]
        return vec

    def similarity(self, tokens_a, tokens_b) -> float:
        va = self.project_tokens(tokens_a)
        vb = self.project_tokens(tokens_b)
        na = np.linalg.norm(va)
        nb = np.linalg.norm(vb)
        if na == 0.0 or nb == 0.0:
            return 0.0
        return float(np.dot(va, vb) / (na * nb))

    def save(self, path: str | Path) -> None:
        terms = sorted(self.vocabulary, key=self.vocabulary.get)
        np.savez_compressed(
            path, version=np.int64(LSA_VERSION),
            terms=np.array(terms, dtype=object),
            projection=self.projection,
            singular_values=self.singular_values,
            rank=np.int64(self.rank))

    @classmethod
    def load(cls, path: str | Path) -> "LsaModel":
        with np.load(path, allow_pickle=True) as data:
            if int(data["version"]) != LSA_VERSION:
                raise FeatureError("unsupported LSA model version")
            vocab = {t: i for i, t in enumerate(data["terms"].tolist())}
            return cls(vocabulary=vocab, projection=data["projection"],
                       singular_values=data["singular_values"],
                       rank=int(data["rank"]))


def fit_lsa(token_lists: list[tuple[str, ...]], rank: int = 100,
            min_frequency: int = 3, stopwords: frozenset[str] | None = None,
            seed: int = 0, tol: float = 1e-8) -> LsaModel:
    """Factorize a line-term count matrix at rank min(rank, achievable).

    Vocabulary keeps terms that are not stop words and occur at least
    `min_frequency` times in total across the training lines.
    """
    if stopwords is None:
        stopwords = default_stopwords()
    counts: dict[str, int] = {}
    for tokens in token_lists:
        for tok in tokens:
            counts[tok] = counts.get(tok, 0) + 1
    vocab = {t: i for i, t in enumerate(sorted(
        t for t, c in counts.items()
        if c >= min_frequency and t not in stopwords))}
    if not vocab:
        raise FeatureError("empty vocabulary after filtering")

    rows, cols, vals = [], [], []
    for r, tokens in enumerate(token_lists):
        for tok in tokens:
            c = vocab.get(tok)
            if c is not None:
                rows.append(r)
                cols.append(c)
                vals.append(1.0)
    matrix = scipy.sparse.csr_matrix(
        (vals, (rows, cols)), shape=(len(token_lists), len(vocab)))

    max_rank = min(matrix.shape)
    r = min(rank, max_rank)
    if r >= max_rank or max_rank <= 200:
        # Dense path for small corpora (svds needs k < min(shape)).
        _, s, vt = np.linalg.svd(matrix.toarray(), full_matrices=False)
        r = min(r, (s > tol).sum()) or 1
        s, vt = s[:r], vt[:r]
    else:
        rng = np.random.RandomState(seed)
        v0 = rng.uniform(-1.0, 1.0, size=min(matrix.shape))
        _, s, vt = scipy.sparse.linalg.svds(matrix, k=r, tol=tol, v0=v0)
        order = np.argsort(s)[::-1]
        s, vt = s[order], vt[order]
    # Fix the sign indeterminacy so refits are reproducible.
    for i in range(vt.shape[0]):
        j = np.argmax(np.abs(vt[i]))
        if vt[i, j] < 0:
            vt[i] = -vt[i]
    return LsaModel(vocabulary=vocab, projection=np.ascontiguousarray(vt.T),
                    singular_values=np.ascontiguousarray(s), rank=int(r))


def fit_lsa_on_lines(lines: list[Line], rank: int = 100,
                     min_frequency: int = 3, seed: int = 0) -> LsaModel:
    return fit_lsa([ln.tokens for ln in lines], rank=rank,
                   min_frequency=min_frequency, seed=seed)


# ---------------------------------------------------------------------------
# Extractor.
# ---------------------------------------------------------------------------

class FeatureExtractor:
    """Computes feature vectors/matrices with per-line caching.

    Corpus lines are cached by id, free text by value. The extractor is
    read-only with respect to its models and safe for concurrent use.
    """

    def __init__(self, corpus=None, backend=None, lsa: LsaModel | None = None,
                 nn=None):
        self.corpus = corpus
        self.backend = backend
        self.lsa = lsa
        self.nn = nn
        self._by_id: dict[int, LineProfile] = {}
        self._by_text: dict[str, LineProfile] = {}
        self._lsa_vecs: dict[int, np.ndarray] = {}

    def profile(self, line: Line | str) -> LineProfile:
        if isinstance(line, Line):
            prof = self._by_id.get(line.id)
            if prof is None:
                prof = LineProfile.from_text(line.text, self.backend)
                self._by_id[line.id] = prof
            return prof
        prof = self._by_text.get(line)
        if prof is None:
            prof = LineProfile.from_text(line, self.backend)
            if len(self._by_text) < 200_000:
                self._by_text[line] = prof
        return prof

    def _tokens(self, line: Line | str) -> frozenset[str]:
        return self.profile(line).token_set

    def _lsa_vector(self, line: Line | str) -> np.ndarray:
        if isinstance(line, Line):
            vec = self._lsa_vecs.get(line.id)
            if vec is None:
                vec = self.lsa.project_tokens(line.tokens)
                self._lsa_vecs[line.id] = vec
            return vec
        return self.lsa.project_tokens(tokenize(line))

    def _lsa_sim(self, a: Line | str, b: Line | str) -> float:
        va = self._lsa_vector(a)
        vb = self._lsa_vector(b)
        na = np.linalg.norm(va)
        nb = np.linalg.norm(vb)
        if na == 0.0 or nb == 0.0:
            return 0.0
        return float(np.dot(va, vb) / (na * nb))

    def _require(self, tier: str) -> tuple[str, ...]:
        try:
            names = TIER_FEATURES[tier]
        except KeyError:
            raise FeatureError(f"unknown tier {tier!r}") from None
        if "lsa" in names and self.lsa is None:
            raise FeatureError("tier needs a fitted LSA model")
        if "nn5" in names and self.nn is None:
            raise FeatureError("tier needs a trained neural model")
        return names

    def vector(self, context: list[Line | str], candidate: Line | str,
               tier: str = "All") -> FeatureVector:
        return self.vectors(context, [candidate], tier)[0]

    def vectors(self, context: list[Line | str],
                candidates: list[Line | str],
                tier: str = "All") -> list[FeatureVector]:
        names = self._require(tier)
        if not context:
            raise FeatureError("context must contain at least one line")
        last = self.profile(context[-1])
        prev = self.profile(context[-2]) if len(context) >= 2 else None
        window_tokens = frozenset().union(
            *[self._tokens(ln) for ln in context[-5:]])

        nn_scores = None
        if "nn5" in names:
            ctx_texts = [ln.text if isinstance(ln, Line) else ln
                         for ln in context[-5:]]
            cand_texts = [c.text if isinstance(c, Line) else c
                          for c in candidates]
            nn_scores = self.nn.score_many(ctx_texts, cand_texts)

        out: list[FeatureVector] = []
        for i, cand in enumerate(candidates):
            prof = self.profile(cand)
            parts: dict[str, float] = {}
            if "end_rhyme" in names:
                parts["end_rhyme"] = float(
                    longest_common_vowel_suffix(prof.vowels, last.vowels))
            if "end_rhyme_1" in names:
                parts["end_rhyme_1"] = (
                    0.0 if prev is None else float(
                        longest_common_vowel_suffix(prof.vowels, prev.vowels)))
            if "other_rhyme" in names:
                parts["other_rhyme"] = other_rhyme_value(prof, last)
            if "line_length" in names:
                parts["line_length"] = length_similarity(
                    prof.char_len, last.char_len)
            if "bow" in names:
                parts["bow"] = jaccard(prof.token_set, last.token_set)
            if "bow5" in names:
                parts["bow5"] = jaccard(prof.token_set, window_tokens)
            if "lsa" in names:
                parts["lsa"] = self._lsa_sim(cand, context[-1])
            if "nn5" in names:
                parts["nn5"] = float(nn_scores[i])
            out.append(FeatureVector(tier=tier, **parts))
        return out

    def matrix(self, context: list[Line | str],
               candidates: list[Line | str],
               tier: str = "All") -> np.ndarray:
        vecs = self.vectors(context, candidates, tier)
        return np.vstack([v.as_array() for v in vecs]) if vecs else \
            np.zeros((0, len(TIER_FEATURES[tier])))
