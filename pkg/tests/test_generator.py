import random

import numpy as np
import pytest

from conftest import make_corpus
from versecraft import index as index_mod
from versecraft.corpus import Line
from versecraft.features import FeatureExtractor
from versecraft.generator import (GenerationConfig, GenerationError,
                                  KeywordPlan, apply_keywords, generate,
                                  rhyme_ok, suggest)
from versecraft.ranker import RankModel


def line(i, text, song_id=0, artist="a"):
    from versecraft.corpus import tokenize
    return Line(id=i, text=text, tokens=tokenize(text), song_id=song_id,
                artist_id=artist, position=0)


class TestRhymeOk:
    def test_same_song_rejected(self):
        prev = line(0, "pay the gold chain", song_id=7)
        cand = line(1, "stay in the rain", song_id=7)
        assert rhyme_ok(cand, [prev]) is False

    def test_same_final_word_rejected(self):
        prev = line(0, "trying to stay warm", song_id=1)
        cand = line(1, "keep the engine warm", song_id=2)
        assert rhyme_ok(cand, [prev]) is False

    def test_different_song_and_word_accepted(self):
        prev = line(0, "pay the gold chain", song_id=1)
        cand = line(1, "stay in the rain", song_id=2)
        assert rhyme_ok(cand, [prev]) is True

    def test_text_context(self):
        cand = line(1, "keep the engine warm", song_id=2)
        assert rhyme_ok(cand, ["trying to stay warm"]) is False
        assert rhyme_ok(cand, ["trying to stay cold"]) is True

    def test_empty_history_rejected(self):
        with pytest.raises(GenerationError):
            rhyme_ok(line(0, "x y"), [])


@pytest.fixture(scope="module")
def engine(corpus, built_index, fast_extractor, fastfeats_model):
    return {
        "corpus": corpus, "index": built_index,
        "extractor": fast_extractor,
        "models": {"FastFeats": fastfeats_model},
    }


class TestGenerate:
    def test_single_line_verse_is_seed(self, engine):
        config = GenerationConfig(num_lines=1, seed=3)
        verse = generate(engine["corpus"], engine["index"],
                         engine["extractor"], engine["models"], config)
        assert len(verse.lines) == 1
        assert verse.scores == (0.0,)

    def test_rhyme_ok_holds_pairwise(self, engine):
        config = GenerationConfig(num_lines=16, seed=11)
        verse = generate(engine["corpus"], engine["index"],
                         engine["extractor"], engine["models"], config)
        for prev, cur in zip(verse.lines, verse.lines[1:]):
            assert cur.song_id != prev.song_id
            assert cur.last_token != prev.last_token

    def test_no_line_reuse(self, engine):
        config = GenerationConfig(num_lines=16, seed=12)
        verse = generate(engine["corpus"], engine["index"],
                         engine["extractor"], engine["models"], config)
        ids = [ln.id for ln in verse.lines]
        assert len(ids) == len(set(ids))

    def test_reproducible(self, engine):
        config = GenerationConfig(num_lines=8, seed=21)
        a = generate(engine["corpus"], engine["index"], engine["extractor"],
                     engine["models"], config)
        b = generate(engine["corpus"], engine["index"], engine["extractor"],
                     engine["models"], config)
        assert [ln.id for ln in a.lines] == [ln.id for ln in b.lines]
        assert a.scores == b.scores

    def test_seed_line_text_used(self, engine):
        config = GenerationConfig(num_lines=4, seed=1,
                                  seed_line="my own fresh opening line")
        verse = generate(engine["corpus"], engine["index"],
                         engine["extractor"], engine["models"], config)
        assert verse.lines[0].text == "my own fresh opening line"
        assert verse.attributions[0] == ("you", "(seed)")

    def test_corpus_seed_line_attributed(self, engine):
        text = engine["corpus"].lines[42].text
        config = GenerationConfig(num_lines=2, seed=1, seed_line=text)
        verse = generate(engine["corpus"], engine["index"],
                         engine["extractor"], engine["models"], config)
        assert verse.attributions[0][0] == engine["corpus"].lines[42].artist_id

    def test_annotated_output(self, engine):
        config = GenerationConfig(num_lines=4, seed=2)
        verse = generate(engine["corpus"], engine["index"],
                         engine["extractor"], engine["models"], config)
        annotated = verse.to_annotated()
        assert len(annotated) == 4
        assert all({"text", "artist", "title", "score"} <= set(e)
                   for e in annotated)

    def test_invalid_config(self):
        with pytest.raises(GenerationError):
            GenerationConfig(num_lines=0)
        with pytest.raises(GenerationError):
            GenerationConfig(num_lines=4, rhyme_block_len=0)

    def test_toy_corpus_forced_choice(self):
        # Exactly one candidate is feasible: same-song and same-end-word
        # lines are blocked, so the remaining line must be selected.
        corpus = make_corpus([
            {"artist": "a", "title": "one", "lines": ["pay the gold chain"]},
            {"artist": "b", "title": "two",
             "lines": ["stay in the cold rain", "way beyond the chain"]},
            {"artist": "c", "title": "three",
             "lines": ["another gold chain"]},
        ])
        idx = index_mod.build(corpus)
        ex = FeatureExtractor(corpus=corpus)
        models = {"FastFeats": RankModel.manual("FastFeats",
                                                [1.0, 0, 0, 0, 0])}
        config = GenerationConfig(num_lines=2, seed=0,
                                  seed_line="pay the gold chain")
        verse = generate(corpus, idx, ex, models, config)
        # "another gold chain" ends with the same word; both "b" lines are
        # fine but "stay in the cold rain" end-rhymes deepest.
        assert verse.lines[1].text == "stay in the cold rain"


class TestKeywords:
    def test_absent_keyword_rejected(self, engine):
        config = GenerationConfig(num_lines=4, seed=0,
                                  keywords=("xylophone",))
        with pytest.raises(GenerationError, match="xylophone"):
            generate(engine["corpus"], engine["index"], engine["extractor"],
                     engine["models"], config)

    def test_keywords_placed(self, engine):
        config = GenerationConfig(num_lines=8, seed=5,
                                  keywords=("galaxy", "harbor"))
        verse = generate(engine["corpus"], engine["index"],
                         engine["extractor"], engine["models"], config)
        tokens = set()
        for ln in verse.lines:
            tokens.update(ln.tokens)
        assert {"galaxy", "harbor"} <= tokens

    def test_no_keywords_pass_through(self, engine):
        cands = list(engine["corpus"].lines[:10])
        plan = KeywordPlan(unplaced=set())
        assert apply_keywords(cands, plan) == cands

    def test_restriction_when_matching_exists(self, engine):
        corpus = engine["corpus"]
        cands = list(corpus.lines[:50])
        with_kw = [c for c in cands if "galaxy" in c.tokens]
        plan = KeywordPlan(unplaced={"galaxy"})
        filtered = apply_keywords(cands, plan)
        if with_kw:
            assert filtered == with_kw
        else:
            assert filtered == cands

    def test_single_keyword_line_forced(self):
        corpus = make_corpus([
            {"artist": "a", "title": "one",
             "lines": ["pay the gold chain", "ride the cold train"]},
            {"artist": "b", "title": "two",
             "lines": ["stay in the rain", "the xylophone plays plain"]},
        ])
        idx = index_mod.build(corpus)
        ex = FeatureExtractor(corpus=corpus)
        models = {"FastFeats": RankModel.manual("FastFeats",
                                                [1.0, 0, 0, 0, 0])}
        config = GenerationConfig(num_lines=2, seed=0,
                                  seed_line="pay the gold chain",
                                  keywords=("xylophone",))
        verse = generate(corpus, idx, ex, models, config)
        assert "xylophone" in verse.lines[1].tokens


class TestSuggest:
    def test_normal_mode_sorted(self, engine):
        context = [engine["corpus"].lines[0]]
        out = suggest(context, engine["corpus"], engine["index"],
                      engine["extractor"], engine["models"],
                      rng=random.Random(0))
        assert len(out) == 20
        scores = [s.score for s in out]
        assert scores == sorted(scores, reverse=True)
        assert [s.rank for s in out] == list(range(1, 21))

    def test_feasibility_respected(self, engine):
        context = [engine["corpus"].lines[0]]
        for s in suggest(context, engine["corpus"], engine["index"],
                         engine["extractor"], engine["models"],
                         rng=random.Random(0)):
            assert rhyme_ok(s.line, context)

    def test_experiment_mode_composition(self, engine):
        context = [engine["corpus"].lines[10]]
        out = suggest(context, engine["corpus"], engine["index"],
                      engine["extractor"], engine["models"],
                      experiment_mode=True, rng=random.Random(7))
        ranks = sorted(s.rank for s in out)
        assert ranks[:14] == list(range(1, 15))
        assert ranks[-3:] == [298, 299, 300]
        middle = ranks[14:-3]
        assert len(middle) == 3
        assert all(15 <= r <= 297 for r in middle)

    def test_experiment_mode_shuffled_but_deterministic(self, engine):
        context = [engine["corpus"].lines[10]]
        a = suggest(context, engine["corpus"], engine["index"],
                    engine["extractor"], engine["models"],
                    experiment_mode=True, rng=random.Random(3))
        b = suggest(context, engine["corpus"], engine["index"],
                    engine["extractor"], engine["models"],
                    experiment_mode=True, rng=random.Random(3))
        assert [s.line.id for s in a] == [s.line.id for s in b]
        assert [s.rank for s in a] != sorted(s.rank for s in a)

    def test_experiment_mode_needs_depth(self):
        corpus = make_corpus([{"artist": "a", "title": "t",
                               "lines": ["pay day", "stay way",
                                         "gold road"]}])
        idx = index_mod.build(corpus)
        ex = FeatureExtractor(corpus=corpus)
        models = {"FastFeats": RankModel.manual("FastFeats", np.ones(5))}
        with pytest.raises(GenerationError):
            suggest(["pay day"], corpus, idx, ex, models,
                    experiment_mode=True, rng=random.Random(0))

    def test_experiment_mode_rejects_nn_tier(self, engine):
        with pytest.raises(GenerationError):
            suggest([engine["corpus"].lines[0]], engine["corpus"],
                    engine["index"], engine["extractor"], engine["models"],
                    tier="FastFeatsNN5", experiment_mode=True,
                    rng=random.Random(0))

    def test_empty_context_rejected(self, engine):
        with pytest.raises(GenerationError):
            suggest([], engine["corpus"], engine["index"],
                    engine["extractor"], engine["models"])

    def test_text_context_supported(self, engine):
        out = suggest(["trying to stay warm tonight"], engine["corpus"],
                      engine["index"], engine["extractor"],
                      engine["models"], count=5, rng=random.Random(0))
        assert len(out) == 5


def test_fast_generation_latency(engine):
    # Interactive budget: an 8-line FastFeats verse in well under 1 s.
    import time

    config = GenerationConfig(num_lines=8, seed=77)
    generate(engine["corpus"], engine["index"], engine["extractor"],
             engine["models"], config)  # warm caches
    t0 = time.perf_counter()
    generate(engine["corpus"], engine["index"], engine["extractor"],
             engine["models"], config)
    assert time.perf_counter() - t0 < 1.0


class TestNnTierGeneration:
    def test_rerank_path(self, corpus, built_index, extractor,
                         fastfeats_model, split, nn_scorer):
        from versecraft import ranker
        pairs = ranker.extract_corpus_prefs(corpus, split.train, 1,
                                            seed=0)[:400]
        nn5_model = ranker.train(pairs, "FastFeatsNN5", extractor,
                                 epochs=80)
        models = {"FastFeats": fastfeats_model, "FastFeatsNN5": nn5_model}
        config = GenerationConfig(num_lines=4, seed=9, tier="FastFeatsNN5")
        verse = generate(corpus, built_index, extractor, models, config)
        assert len(verse.lines) == 4
        for prev, cur in zip(verse.lines, verse.lines[1:]):
            assert rhyme_ok(cur, [prev])
