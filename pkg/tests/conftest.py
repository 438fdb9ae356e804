"""Shared fixtures. The expensive artifacts (trained neural net, LSA,
rank models) are session-scoped so the unit tests and the acceptance
suite train them once."""
from __future__ import annotations

import json

import pytest

from versecraft import index as index_mod
from versecraft import neural, ranker
from versecraft.corpus import Corpus, Line, Song, load_corpus, split_by_artist
from versecraft.evaluation import NextLineEvaluator, build_queries
from versecraft.features import FeatureExtractor, fit_lsa_on_lines

SPLIT_SEED = 0

# Acceptance-scale neural config: small layers keep CPU training around
# a minute; the architecture defaults stay at the published sizes.
NN_CONFIG = neural.TrainConfig(epochs=6, seed=0, word_hidden=(64, 64),
                               line_hidden=48, final_hidden=48)


@pytest.fixture(scope="session")
def corpus() -> Corpus:
    return load_corpus()


@pytest.fixture(scope="session")
def split(corpus):
    return split_by_artist(corpus, SPLIT_SEED)


@pytest.fixture(scope="session")
def built_index(corpus):
    return index_mod.build(corpus)


@pytest.fixture(scope="session")
def lsa_model(corpus, split):
    train_lines = [ln for ln in corpus.lines if ln.artist_id in split.train]
    return fit_lsa_on_lines(train_lines, rank=100, seed=0)


@pytest.fixture(scope="session")
def nn_params(corpus, split):
    return neural.train(corpus, split.train, NN_CONFIG)


@pytest.fixture(scope="session")
def nn_scorer(nn_params):
    return neural.NeuralScorer(nn_params)


@pytest.fixture(scope="session")
def extractor(corpus, lsa_model, nn_scorer):
    return FeatureExtractor(corpus=corpus, lsa=lsa_model, nn=nn_scorer)


@pytest.fixture(scope="session")
def fast_extractor(corpus):
    """Extractor without models; enough for the FastFeats tier."""
    return FeatureExtractor(corpus=corpus)


@pytest.fixture(scope="session")
def fastfeats_model(corpus, split, fast_extractor):
    pairs = ranker.extract_corpus_prefs(corpus, split.train, 1, seed=0)
    queries = build_queries(corpus, split.validation, 150, seed=1)
    evaluator = NextLineEvaluator(queries, fast_extractor, "FastFeats")
    return ranker.train(pairs, "FastFeats", fast_extractor,
                        validation_scorer=lambda m:
                        evaluator.evaluate_model(m).mrr)


def make_corpus(records: list[dict]) -> Corpus:
    """Build a tiny normalized in-memory corpus from song dicts."""
    songs = []
    next_id = 0
    for song_id, rec in enumerate(records):
        lines = []
        for text in rec["lines"]:
            from versecraft.corpus import tokenize
            tokens = tokenize(text)
            if not tokens:
                continue
            lines.append(Line(id=next_id, text=text, tokens=tokens,
                              song_id=song_id, artist_id=rec["artist"],
                              position=len(lines)))
            next_id += 1
        songs.append(Song(song_id=song_id, title=rec["title"],
                          artist_id=rec["artist"], lines=tuple(lines)))
    return Corpus(songs=tuple(songs), normalized=True)


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")
    return path
