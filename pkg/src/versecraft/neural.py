"""Character-level feed-forward network scoring candidate next lines.

Words are encoded by an exponential-moving-average transformation of
their character sequence (forward pass over positions, the same run
backwards, and raw character counts). A shared word network maps each
word vector, word outputs concatenate into line vectors through a
shared line layer, and the candidate-first concatenation of all line
vectors feeds a final layer and a 2-way softmax. The pre-softmax
activation of the positive class is the nn5 relevance feature.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import Corpus, tokenize
from .stemming import stem

ALPHABET = "abcdefghijklmnopqrstuvwxyz'#"  # '#' buckets all digits
MAX_WORDS_PER_LINE = 13
N_CONTEXT_LINES = 5
PARAMS_VERSION = 1

PARAM_NAMES = ("w1", "b1", "w2", "b2", "wl", "bl", "wf", "bf", "wo", "bo")


class NeuralError(RuntimeError):
    pass


@dataclass(frozen=True)
class CharEncoder:
    """EMA character encoding: forward ⊕ backward ⊕ counts.

    Position c (0-based) contributes (1-alpha)^c / Z to its character's
    slot, with Z the geometric sum over the word's positions, so each
    EMA block of a non-empty word sums to 1. The backward block counts
    positions from the end of the word.
    """

    alphabet: str = ALPHABET
    alpha: float = 0.3
    max_words_per_line: int = MAX_WORDS_PER_LINE

    @property
    def dim(self) -> int:
        return 3 * len(self.alphabet)

    def encode_word(self, word: str) -> np.ndarray:
        size = len(self.alphabet)
        vec = np.zeros(3 * size)
        idxs = [self.alphabet.index(ch) for ch in word
                if ch in self.alphabet]
        if not idxs:
            return vec  # pad semantics
        decay = (1.0 - self.alpha) ** np.arange(len(idxs))
        weights = decay / decay.sum()
        for pos, ci in enumerate(idxs):
            vec[ci] += weights[pos]
        for pos, ci in enumerate(reversed(idxs)):
            vec[size + ci] += weights[pos]
        for ci in idxs:
            vec[2 * size + ci] += 1.0
        return vec


def preprocess_line(text: str, max_words: int = MAX_WORDS_PER_LINE
                    ) -> list[str]:
    """ascii-filtered, lowercased, stemmed tokens; truncated, not padded."""
    words = []
    for tok in tokenize(text):
        tok = "".join("#" if ch.isdigit() else ch
                      for ch in tok if ch.isascii())
        tok = stem(tok)
        if tok:
            words.append(tok)
    return words[:max_words]


@dataclass
class TrainConfig:
    minibatch: int = 10
    epochs: int = 20
    dropout: float = 0.10
    seed: int = 0
    alpha: float = 0.3
    word_hidden: tuple[int, int] = (500, 500)
    line_hidden: int = 256
    final_hidden: int = 256
    rho: float = 0.95       # Adadelta decay
    eps: float = 1e-6


@dataclass
class NetParams:
    encoder: CharEncoder
    weights: dict[str, np.ndarray]
    layer_sizes: tuple[int, int, int, int]
    seed: int = 0
    epochs_trained: int = 0
    loss_log: list[float] = field(default_factory=list)

    def save(self, path: str | Path) -> None:
        header = {
            "version": PARAMS_VERSION,
            "alphabet": self.encoder.alphabet,
            "alpha": self.encoder.alpha,
            "max_words": self.encoder.max_words_per_line,
            "layer_sizes": list(self.layer_sizes),
            "seed": self.seed,
            "epochs_trained": self.epochs_trained,
            "loss_log": self.loss_log,
        }
        np.savez_compressed(path, header=json.dumps(header),
                            **{k: v for k, v in self.weights.items()})

    @classmethod
    def load(cls, path: str | Path) -> "NetParams":
        with np.load(path, allow_pickle=False) as data:
            header = json.loads(str(data["header"]))
            if header["version"] != PARAMS_VERSION:
                raise NeuralError("unsupported model version")
            weights = {k: data[k] for k in PARAM_NAMES}
        encoder = CharEncoder(alphabet=header["alphabet"],
                              alpha=header["alpha"],
                              max_words_per_line=header["max_words"])
        return cls(encoder=encoder, weights=weights,
                   layer_sizes=tuple(header["layer_sizes"]),
                   seed=header["seed"],
                   epochs_trained=header["epochs_trained"],
                   loss_log=list(header["loss_log"]))

    def save_loss_log(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["epoch", "loss"])
            for i, loss in enumerate(self.loss_log, start=1):
                writer.writerow([i, f"{loss:.6f}"])


def init_params(encoder: CharEncoder, config: TrainConfig) -> NetParams:
    h1, h2 = config.word_hidden
    h3, h4 = config.line_hidden, config.final_hidden
    d = encoder.dim
    words = encoder.max_words_per_line
    lines = N_CONTEXT_LINES + 1
    rng = np.random.RandomState(config.seed)

    def glorot(n_in, n_out):
        scale = np.sqrt(6.0 / (n_in + n_out))
        return rng.uniform(-scale, scale, size=(n_in, n_out))

    # Small positive biases keep rectifiers alive early; the output
    # layer starts at zero so the first learnable direction is genuine
    # signal rather than collapsing activation variance.
    weights = {
        "w1": glorot(d, h1), "b1": np.full(h1, 0.1),
        "w2": glorot(h1, h2), "b2": np.full(h2, 0.1),
        "wl": glorot(words * h2, h3), "bl": np.full(h3, 0.1),
        "wf": glorot(lines * h3, h4), "bf": np.full(h4, 0.1),
        "wo": np.zeros((h4, 2)), "bo": np.zeros(2),
    }
    return NetParams(encoder=encoder, weights=weights,
                     layer_sizes=(h1, h2, h3, h4), seed=config.seed)


# ---------------------------------------------------------------------------
# Forward / backward.
# ---------------------------------------------------------------------------

def forward_batch(params: NetParams, x: np.ndarray,
                  dropout: float = 0.0,
                  dropout_rng: np.random.RandomState | None = None):
    """x: (batch, 6, max_words, dim) -> (logits (batch, 2), cache).

    Dropout masks hidden activations only when a rate and rng are given
    (training); inference is deterministic.
    """
    w = params.weights
    batch, n_lines, n_words, dim = x.shape
    h1, h2, h3, h4 = params.layer_sizes

    def drop(a):
        if dropout <= 0.0 or dropout_rng is None:
            return a, None
        mask = (dropout_rng.random_sample(a.shape) >= dropout) / (1 - dropout)
        return a * mask, mask

    x_flat = x.reshape(batch * n_lines * n_words, dim)
    z1 = x_flat @ w["w1"] + w["b1"]
    a1 = np.maximum(z1, 0.0)
    a1d, m1 = drop(a1)
    z2 = a1d @ w["w2"] + w["b2"]
    a2 = np.maximum(z2, 0.0)
    a2d, m2 = drop(a2)
    line_in = a2d.reshape(batch * n_lines, n_words * h2)
    zl = line_in @ w["wl"] + w["bl"]
    al = np.maximum(zl, 0.0)
    ald, ml = drop(al)
    fin_in = ald.reshape(batch, n_lines * h3)
    zf = fin_in @ w["wf"] + w["bf"]
    af = np.maximum(zf, 0.0)
    afd, mf = drop(af)
    logits = afd @ w["wo"] + w["bo"]
    cache = (x_flat, z1, a1d, m1, z2, a2d, m2, line_in, zl, ald, ml,
             fin_in, zf, afd, mf, (batch, n_lines, n_words, dim))
    return logits, cache


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def loss_and_grads(params: NetParams, x: np.ndarray, y: np.ndarray,
                   dropout: float = 0.0,
                   dropout_rng: np.random.RandomState | None = None):
    """Mean cross-entropy over the batch and gradients for every array."""
    logits, cache = forward_batch(params, x, dropout, dropout_rng)
    (x_flat, z1, a1d, m1, z2, a2d, m2, line_in, zl, ald, ml,
     fin_in, zf, afd, mf, shape) = cache
    batch, n_lines, n_words, _ = shape
    h1, h2, h3, h4 = params.layer_sizes
    w = params.weights

    probs = softmax(logits)
    eps = 1e-12
    loss = -np.mean(np.log(probs[np.arange(batch), y] + eps))

    dlogits = probs.copy()
    dlogits[np.arange(batch), y] -= 1.0
    dlogits /= batch

    grads: dict[str, np.ndarray] = {}
    grads["wo"] = afd.T @ dlogits
    grads["bo"] = dlogits.sum(axis=0)
    dafd = dlogits @ w["wo"].T
    if mf is not None:
        dafd = dafd * mf
    dzf = dafd * (zf > 0)
    grads["wf"] = fin_in.T @ dzf
    grads["bf"] = dzf.sum(axis=0)
    dfin_in = dzf @ w["wf"].T
    dald = dfin_in.reshape(batch * n_lines, h3)
    if ml is not None:
        dald = dald * ml
    dzl = dald * (zl > 0)
    grads["wl"] = line_in.T @ dzl
    grads["bl"] = dzl.sum(axis=0)
    dline_in = dzl @ w["wl"].T
    da2d = dline_in.reshape(batch * n_lines * n_words, h2)
    if m2 is not None:
        da2d = da2d * m2
    dz2 = da2d * (z2 > 0)
    grads["w2"] = a1d.T @ dz2
    grads["b2"] = dz2.sum(axis=0)
    da1d = dz2 @ w["w2"].T
    if m1 is not None:
        da1d = da1d * m1
    dz1 = da1d * (z1 > 0)
    grads["w1"] = x_flat.T @ dz1
    grads["b1"] = dz1.sum(axis=0)
    return loss, grads


# ---------------------------------------------------------------------------
# Example construction and encoding.
# ---------------------------------------------------------------------------

class LineEncoder:
    """Caches per-line (max_words, dim) encodings by text."""

    def __init__(self, encoder: CharEncoder):
        self.encoder = encoder
        self._words: dict[str, np.ndarray] = {}
        self._lines: dict[str, np.ndarray] = {}

    def encode_line(self, text: str) -> np.ndarray:
        mat = self._lines.get(text)
        if mat is not None:
            return mat
        mat = np.zeros((self.encoder.max_words_per_line, self.encoder.dim))
        for i, word in enumerate(
                preprocess_line(text, self.encoder.max_words_per_line)):
            vec = self._words.get(word)
            if vec is None:
                vec = self.encoder.encode_word(word)
                self._words[word] = vec
            mat[i] = vec
        if len(self._lines) < 500_000:
            self._lines[text] = mat
        return mat

    def encode_example(self, context_texts: list[str], candidate_text: str
                       ) -> np.ndarray:
        """(6, max_words, dim): candidate first, then the (at most) five
        context lines in occurrence order, left-padded with zero lines."""
        out = np.zeros((N_CONTEXT_LINES + 1, self.encoder.max_words_per_line,
                        self.encoder.dim))
        out[0] = self.encode_line(candidate_text)
        tail = list(context_texts)[-N_CONTEXT_LINES:]
        offset = N_CONTEXT_LINES - len(tail)
        for i, text in enumerate(tail):
            out[1 + offset + i] = self.encode_line(text)
        return out


def build_training_examples(corpus: Corpus, artists, rng) -> list[tuple]:
    """(context_texts, candidate_text, label) triples: each positive is
    followed by a negative with a uniformly random fake candidate."""
    usable: list[str] = []
    songs = [s for s in corpus.songs if s.artist_id in artists]
    song_usable: list[list[tuple[int, str]]] = []
    for song in songs:
        entries = [(ln.position, ln.text) for ln in song.lines
                   if len(preprocess_line(ln.text)) >= 2]
        song_usable.append(entries)
        usable.extend(text for _, text in entries)
    if len(usable) < 2:
        raise NeuralError("no usable lines to build examples from")
    examples: list[tuple] = []
    for song, entries in zip(songs, song_usable):
        texts = [ln.text for ln in song.lines]
        for pos, text in entries:
            if pos < 1:
                continue
            context = texts[max(0, pos - N_CONTEXT_LINES):pos]
            examples.append((context, text, 1))
            fake = text
            while fake == text:
                fake = usable[rng.randrange(len(usable))]
            examples.append((context, fake, 0))
    return examples


# ---------------------------------------------------------------------------
# Adadelta training.
# ---------------------------------------------------------------------------

def train(corpus: Corpus, artists, config: TrainConfig | None = None
          ) -> NetParams:
    """Train on the given artists' songs; deterministic per seed."""
    import random as _random

    if config is None:
        config = TrainConfig()
    rng = _random.Random(config.seed)
    examples = build_training_examples(corpus, artists, rng)
    if len(examples) < 200:
        raise NeuralError("insufficient training data")

    encoder = CharEncoder(alpha=config.alpha)
    params = init_params(encoder, config)
    line_enc = LineEncoder(encoder)
    np_rng = np.random.RandomState(config.seed + 1)

    acc_g = {k: np.zeros_like(v) for k, v in params.weights.items()}
    acc_dx = {k: np.zeros_like(v) for k, v in params.weights.items()}
    rho, eps = config.rho, config.eps

    order = list(range(len(examples)))
    for epoch in range(config.epochs):
        rng.shuffle(order)
        total = 0.0
        count = 0
        for start in range(0, len(order), config.minibatch):
            chunk = order[start:start + config.minibatch]
            x = np.stack([line_enc.encode_example(examples[i][0],
                                                  examples[i][1])
                          for i in chunk])
            y = np.array([examples[i][2] for i in chunk])
            loss, grads = loss_and_grads(params, x, y, config.dropout, np_rng)
            total += loss * len(chunk)
            count += len(chunk)
            for k, g in grads.items():
                acc_g[k] = rho * acc_g[k] + (1 - rho) * g * g
                step = -(np.sqrt(acc_dx[k] + eps)
                         / np.sqrt(acc_g[k] + eps)) * g
                acc_dx[k] = rho * acc_dx[k] + (1 - rho) * step * step
                params.weights[k] += step
        params.loss_log.append(total / count)
        params.epochs_trained = epoch + 1
    return params


# ---------------------------------------------------------------------------
# Scoring.
# ---------------------------------------------------------------------------

class NeuralScorer:
    """Inference wrapper producing the nn5 feature (positive-class
    pre-softmax activation). Shares one encoding cache; the context
    line vectors are computed once per call for any candidate count."""

    def __init__(self, params: NetParams):
        self.params = params
        self.line_encoder = LineEncoder(params.encoder)

    def score_many(self, context_texts: list[str],
                   candidate_texts: list[str]) -> np.ndarray:
        if not candidate_texts:
            return np.zeros(0)
        n = len(candidate_texts)
        x = np.zeros((n, N_CONTEXT_LINES + 1,
                      self.params.encoder.max_words_per_line,
                      self.params.encoder.dim))
        ctx = np.zeros((N_CONTEXT_LINES,
                        self.params.encoder.max_words_per_line,
                        self.params.encoder.dim))
        tail = list(context_texts)[-N_CONTEXT_LINES:]
        offset = N_CONTEXT_LINES - len(tail)
        for i, text in enumerate(tail):
            ctx[offset + i] = self.line_encoder.encode_line(text)
        x[:, 1:] = ctx
        for i, text in enumerate(candidate_texts):
            x[i, 0] = self.line_encoder.encode_line(text)
        logits, _ = forward_batch(self.params, x)
        return logits[:, 1]

    def score(self, context_texts: list[str], candidate_text: str) -> float:
        return float(self.score_many(context_texts, [candidate_text])[0])

    def probability(self, context_texts: list[str],
                    candidate_text: str) -> float:
        enc = self.line_encoder.encode_example(list(context_texts),
                                               candidate_text)
        logits, _ = forward_batch(self.params, enc[None])
        return float(softmax(logits)[0, 1])


def nn5_score(params: NetParams, context_texts: list[str],
              candidate_text: str) -> float:
    return NeuralScorer(params).score(context_texts, candidate_text)


def pair_discrimination(params: NetParams, corpus: Corpus, artists,
                        n_pairs: int, seed: int = 0) -> float:
    """Fraction of held-out (true, fake) pairs where the true next line
    scores higher. Chance level is 0.5."""
    import random as _random

    rng = _random.Random(seed)
    examples = build_training_examples(corpus, artists, rng)
    positives = [e for e in examples if e[2] == 1]
    negatives = [e for e in examples if e[2] == 0]
    n = min(n_pairs, len(positives))
    scorer = NeuralScorer(params)
    wins = 0
    for pos, neg in zip(positives[:n], negatives[:n]):
        s_pos = scorer.score(pos[0], pos[1])
        s_neg = scorer.score(neg[0], neg[1])
        if s_pos > s_neg:
            wins += 1
    return wins / n
