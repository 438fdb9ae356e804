import numpy as np
import pytest

from conftest import NN_CONFIG, make_corpus
from versecraft import neural
from versecraft.neural import (CharEncoder, LineEncoder, NetParams,
                               NeuralError, TrainConfig,
                               build_training_examples, forward_batch,
                               init_params, loss_and_grads, preprocess_line,
                               softmax)


class TestCharEncoder:
    def test_documented_two_letter_example(self):
        enc = CharEncoder(alphabet="ab", alpha=0.5)
        vec = enc.encode_word("ab")
        # forward block: Z = 1 + 0.5; weights 2/3 and 1/3.
        assert vec[0] == pytest.approx(2 / 3)
        assert vec[1] == pytest.approx(1 / 3)
        # backward block mirrors it.
        assert vec[2] == pytest.approx(1 / 3)
        assert vec[3] == pytest.approx(2 / 3)
        # count block.
        assert vec[4] == 1.0 and vec[5] == 1.0

    def test_palindrome_blocks_equal(self):
        enc = CharEncoder(alphabet="ab", alpha=0.3)
        vec = enc.encode_word("aa")
        size = 2
        assert np.allclose(vec[:size], vec[size:2 * size])

    def test_pad_is_zero_vector(self):
        enc = CharEncoder()
        assert not enc.encode_word("").any()
        assert not enc.encode_word("!!!").any()

    def test_ema_blocks_sum_to_one(self):
        enc = CharEncoder(alpha=0.3)
        size = len(enc.alphabet)
        for word in ("a", "flow", "celebration", "don't", "x#9"):
            vec = enc.encode_word(word)
            assert vec[:size].sum() == pytest.approx(1.0, abs=1e-9)
            assert vec[size:2 * size].sum() == pytest.approx(1.0, abs=1e-9)

    def test_counts_block_raw(self):
        enc = CharEncoder(alphabet="ab", alpha=0.5)
        vec = enc.encode_word("aba")
        assert vec[4] == 2.0 and vec[5] == 1.0


class TestPreprocess:
    def test_truncates_to_thirteen(self):
        line = " ".join(f"word{i}" for i in range(15))
        assert len(preprocess_line(line)) == 13

    def test_short_line_not_padded_here(self):
        assert len(preprocess_line("pay the gold chain")) == 4

    def test_stems_and_lowercases(self):
        assert preprocess_line("Burning STORIES") == ["burn", "stori"]

    def test_digits_bucketed(self):
        assert preprocess_line("route 66")[-1] == "##"

    def test_non_ascii_dropped(self):
        assert preprocess_line("café fire") == ["caf", "fire"]


class TestExampleConstruction:
    def test_one_word_lines_excluded(self):
        corpus = make_corpus([{"artist": "a", "title": "t",
                               "lines": ["Yo!", "pay the gold chain",
                                         "stay in the cold rain",
                                         "Word", "ride the slow train"]}])
        import random
        examples = build_training_examples(corpus, {"a"}, random.Random(0))
        # No candidate may be a one-word line (positives or negatives).
        for context, candidate, _ in examples:
            assert len(preprocess_line(candidate)) >= 2

    def test_alternating_labels(self, corpus, split):
        import random
        examples = build_training_examples(corpus, split.train,
                                           random.Random(0))
        labels = [label for _, _, label in examples[:40]]
        assert labels == [1, 0] * 20

    def test_negative_differs_from_positive(self, corpus, split):
        import random
        examples = build_training_examples(corpus, split.train,
                                           random.Random(0))
        for pos, neg in zip(examples[::2], examples[1::2]):
            assert pos[2] == 1 and neg[2] == 0
            assert neg[1] != pos[1]

    def test_padding_shape(self):
        enc = LineEncoder(CharEncoder())
        x = enc.encode_example(["pay the gold"], "stay the cold")
        assert x.shape == (6, 13, CharEncoder().dim)
        # candidate occupies slot 0; one context line sits in the last slot.
        assert x[0].any()
        assert x[5].any()
        assert not x[1].any()  # left padding


@pytest.fixture(scope="module")
def tiny():
    enc = CharEncoder(alphabet="abcde", alpha=0.4)
    config = TrainConfig(word_hidden=(8, 8), line_hidden=6,
                         final_hidden=6, seed=3)
    params = init_params(enc, config)
    # Give the zero-initialised output layer some structure so the
    # forward tests see non-trivial logits.
    rng = np.random.RandomState(0)
    params.weights["wo"] = rng.randn(6, 2) * 0.3
    return params


class TestForward:

    def test_probabilities_normalized(self, tiny):
        rng = np.random.RandomState(1)
        x = rng.randn(5, 6, 13, tiny.encoder.dim) * 0.3
        logits, _ = forward_batch(tiny, x)
        probs = softmax(logits)
        assert np.all(probs > 0) and np.all(probs < 1)
        assert np.allclose(probs.sum(axis=1), 1.0, atol=1e-9)

    def test_context_order_sensitivity(self, tiny):
        enc = LineEncoder(tiny.encoder)
        ctx = ["ba da", "ad ab", "ce de", "ea eb", "da ba"]
        x1 = enc.encode_example(ctx, "ab ba")
        x2 = enc.encode_example(list(reversed(ctx)), "ab ba")
        l1, _ = forward_batch(tiny, x1[None])
        l2, _ = forward_batch(tiny, x2[None])
        assert not np.allclose(l1, l2)

    def test_bit_stable(self, tiny):
        rng = np.random.RandomState(2)
        x = rng.randn(3, 6, 13, tiny.encoder.dim)
        l1, _ = forward_batch(tiny, x)
        l2, _ = forward_batch(tiny, x)
        assert np.array_equal(l1, l2)

    def test_dropout_off_at_inference(self, nn_scorer):
        ctx = ["pay the gold chain"]
        s1 = nn_scorer.score(ctx, "stay in the cold rain")
        s2 = nn_scorer.score(ctx, "stay in the cold rain")
        assert s1 == s2


class TestGradients:
    def test_gradient_check_tiny_network(self):
        # Analytic vs central finite differences on 100 random coords.
        enc = CharEncoder(alphabet="abcde", alpha=0.4)
        config = TrainConfig(word_hidden=(8, 8), line_hidden=6,
                             final_hidden=6, seed=7)
        params = init_params(enc, config)
        rng = np.random.RandomState(0)
        for name in params.weights:
            params.weights[name] = rng.randn(
                *params.weights[name].shape) * 0.4
        x = rng.randn(4, 6, 13, enc.dim) * 0.5
        y = np.array([1, 0, 1, 0])
        _, grads = loss_and_grads(params, x, y)
        h = 1e-6
        coords = []
        names = list(params.weights)
        for _ in range(100):
            name = names[rng.randint(len(names))]
            coords.append((name, rng.randint(params.weights[name].size)))
        for name, flat_idx in coords:
            arr = params.weights[name].ravel()
            orig = arr[flat_idx]
            arr[flat_idx] = orig + h
            lp, _ = loss_and_grads(params, x, y)
            arr[flat_idx] = orig - h
            lm, _ = loss_and_grads(params, x, y)
            arr[flat_idx] = orig
            numeric = (lp - lm) / (2 * h)
            analytic = grads[name].ravel()[flat_idx]
            denom = max(abs(numeric), abs(analytic), 1e-8)
            assert abs(numeric - analytic) / denom < 1e-4


class TestTraining:
    def test_loss_drops_below_chance(self, nn_params):
        assert nn_params.loss_log[-1] < 0.693
        assert nn_params.loss_log[-1] < nn_params.loss_log[0]

    def test_insufficient_data_rejected(self):
        corpus = make_corpus([{"artist": "a", "title": "t",
                               "lines": ["pay day", "stay way"]}])
        with pytest.raises(NeuralError):
            neural.train(corpus, {"a"}, TrainConfig(epochs=1))

    def test_seed_reproducibility(self, corpus, split):
        config = TrainConfig(epochs=1, seed=5, word_hidden=(16, 16),
                             line_hidden=12, final_hidden=12)
        a = neural.train(corpus, split.validation, config)
        b = neural.train(corpus, split.validation, config)
        assert a.loss_log == b.loss_log
        for key in a.weights:
            assert np.array_equal(a.weights[key], b.weights[key])

    def test_capacity_beats_chance_on_small_set(self, nn_params):
        # binary cross-entropy of an uninformed classifier is ~0.693
        assert nn_params.loss_log[-1] < 0.693


class TestScoring:
    def test_scores_finite(self, nn_scorer, corpus):
        ctx = [corpus.lines[0].text]
        scores = nn_scorer.score_many(ctx, [ln.text
                                            for ln in corpus.lines[:100]])
        assert np.all(np.isfinite(scores))

    def test_batch_matches_single(self, nn_scorer, corpus):
        ctx = [corpus.lines[0].text, corpus.lines[1].text]
        texts = [ln.text for ln in corpus.lines[10:15]]
        batch = nn_scorer.score_many(ctx, texts)
        singles = [nn_scorer.score(ctx, t) for t in texts]
        assert np.allclose(batch, singles)

    def test_identical_inputs_identical_scores(self, nn_scorer):
        ctx = ["pay the gold chain"]
        assert nn_scorer.score(ctx, "stay warm") == \
            nn_scorer.score(ctx, "stay warm")

    def test_probability_in_unit_interval(self, nn_scorer):
        p = nn_scorer.probability(["pay the gold chain"], "stay warm")
        assert 0.0 < p < 1.0


class TestSerialization:
    def test_round_trip(self, nn_params, tmp_path, corpus, nn_scorer):
        path = tmp_path / "nn.npz"
        nn_params.save(path)
        loaded = NetParams.load(path)
        assert loaded.layer_sizes == nn_params.layer_sizes
        assert loaded.encoder == nn_params.encoder
        reloaded = neural.NeuralScorer(loaded)
        ctx = [corpus.lines[0].text]
        cand = corpus.lines[1].text
        assert reloaded.score(ctx, cand) == nn_scorer.score(ctx, cand)

    def test_loss_log_csv(self, nn_params, tmp_path):
        path = tmp_path / "loss.csv"
        nn_params.save_loss_log(path)
        rows = path.read_text().splitlines()
        assert rows[0] == "epoch,loss"
        assert len(rows) == 1 + NN_CONFIG.epochs
