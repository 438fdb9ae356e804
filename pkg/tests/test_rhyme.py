import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_corpus
from oracles import suffix_match_bruteforce, window_match_bruteforce
from versecraft.corpus import Song
from versecraft.phonetics import line_vowels
from versecraft.rhyme import (RhymeError, artist_rhyme_density,
                              corpus_rhyme_report, density_histogram,
                              longest_common_vowel_suffix,
                              longest_match_near, rhyme_density)

VOWEL_SYMBOLS = ("i", "I", "e", "E", "a", "A:", "V", "@", "O", "O:", "o",
                 "U", "u:", "3:")

vowel_seqs = st.lists(st.sampled_from(VOWEL_SYMBOLS), min_size=0,
                      max_size=12).map(tuple)


class TestSuffixMatch:
    def test_pay_for_stay_warm(self):
        a = line_vowels("pay for")
        b = line_vowels("stay warm")
        assert longest_common_vowel_suffix(a, b) == 3

    def test_identical_sequences(self):
        seq = ("a", "I", "o", "U")
        assert longest_common_vowel_suffix(seq, seq) == 4

    def test_different_final_units(self):
        assert longest_common_vowel_suffix(("a", "I"), ("a", "E")) == 0

    def test_empty(self):
        assert longest_common_vowel_suffix((), ("a",)) == 0

    @given(a=vowel_seqs, b=vowel_seqs)
    @settings(max_examples=200, deadline=None)
    def test_matches_bruteforce(self, a, b):
        assert longest_common_vowel_suffix(a, b) == \
            suffix_match_bruteforce(a, b)

    @given(a=vowel_seqs, b=vowel_seqs, unit=st.sampled_from(VOWEL_SYMBOLS))
    @settings(max_examples=100, deadline=None)
    def test_appending_match_increments(self, a, b, unit):
        base = longest_common_vowel_suffix(a, b)
        assert longest_common_vowel_suffix(a + (unit,), b + (unit,)) == \
            base + 1


class TestWindowMatch:
    def test_derived_example(self):
        assert longest_match_near(("I", "I", "i"), ("i", "I", "I", "i")) == 3

    def test_empty_window(self):
        assert longest_match_near(("a",), ()) == 0

    def test_word_without_vowels_rejected(self):
        with pytest.raises(RhymeError):
            longest_match_near((), ("a",))

    def test_bounded_by_word_length(self):
        word = ("a", "I")
        window = ("a", "I", "a", "I", "a", "I")
        assert longest_match_near(word, window) <= len(word)

    def test_nine_vowel_couplet(self):
        # The long multisyllabic rhyme: the last line of the couplet
        # shares nine consecutive vowel units with its predecessor.
        first = line_vowels("Drink and drown in my own iniquity")
        second = line_vowels("Never smile style is wild only grin strictly")
        assert longest_match_near(second.vowels, first.vowels) >= 9

    @given(word=st.lists(st.sampled_from(VOWEL_SYMBOLS), min_size=1,
                         max_size=6).map(tuple),
           window=vowel_seqs)
    @settings(max_examples=200, deadline=None)
    def test_matches_bruteforce(self, word, window):
        assert longest_match_near(word, window) == \
            window_match_bruteforce(word, window)


def song_of(texts, artist="a", song_id=0):
    return make_corpus([{"artist": artist, "title": "t",
                         "lines": texts}]).songs[song_id]


class TestRhymeDensity:
    def test_no_shared_vowels_is_zero(self):
        song = song_of(["pay", "street"])
        assert rhyme_density(song) == 0.0

    def test_repeated_word_line(self):
        # "test test test": each later word matches the earlier ones fully.
        song = song_of(["test test test"])
        # window for word 1: (E) -> match 1; word 2: (E,E) -> match 1.
        # First word has no window. Mean over words 2..3 plus word 1 = 0.
        assert rhyme_density(song) == pytest.approx((0 + 1 + 1) / 3)

    def test_empty_song_rejected(self):
        with pytest.raises(RhymeError):
            rhyme_density(Song(song_id=0, title="t", artist_id="a",
                               lines=()))

    def test_consonant_perturbation_invariant(self):
        a = rhyme_density(song_of(["slang bang", "sang slang"]))
        b = rhyme_density(song_of(["sang gang", "slang sang"]))
        assert a == pytest.approx(b)

    def test_window_limits_matches(self):
        # 16 one-vowel filler words push the opening rhyme out of range.
        filler = " ".join(["dark"] * 16)
        song = song_of(["pay day", filler + " pay"])
        words = 2 + 16 + 1
        # The final "pay" must not see the first line through the window.
        density_far = rhyme_density(song, window_words=2)
        density_near = rhyme_density(song, window_words=50)
        assert density_near >= density_far

    def test_deterministic(self, corpus):
        song = corpus.songs[0]
        assert rhyme_density(song) == rhyme_density(song)


class TestArtistDensity:
    def test_single_song_artist(self):
        corpus = make_corpus([{"artist": "solo", "title": "t",
                               "lines": ["pay day", "stay way"]}])
        assert artist_rhyme_density(corpus, "solo") == \
            pytest.approx(rhyme_density(corpus.songs[0]))

    def test_two_song_mean(self):
        corpus = make_corpus([
            {"artist": "duo", "title": "one", "lines": ["pay day",
                                                        "stay way"]},
            {"artist": "duo", "title": "two", "lines": ["bright light",
                                                        "night sight"]},
        ])
        d1 = rhyme_density(corpus.songs[0])
        d2 = rhyme_density(corpus.songs[1])
        assert artist_rhyme_density(corpus, "duo") == \
            pytest.approx((d1 + d2) / 2)

    def test_unknown_artist(self, corpus):
        with pytest.raises(RhymeError):
            artist_rhyme_density(corpus, "nobody")

    def test_three_song_oracle(self):
        texts = [["pay day", "stay way"], ["bright night"],
                 ["gold road", "cold stone", "slow glow"]]
        corpus = make_corpus([{"artist": "trio", "title": f"t{i}",
                               "lines": t} for i, t in enumerate(texts)])
        expected = sum(rhyme_density(s) for s in corpus.songs) / 3
        assert artist_rhyme_density(corpus, "trio") == pytest.approx(expected)


class TestReport:
    def test_report_consistency(self, corpus):
        report = corpus_rhyme_report(corpus)
        assert all(d >= 0 for d in report.per_song.values())
        for artist, mean_d in report.per_artist.items():
            songs = corpus.songs_by_artist(artist)
            expected = sum(report.per_song[s.song_id]
                           for s in songs) / len(songs)
            assert mean_d == pytest.approx(expected)

    def test_histogram_counts(self, corpus):
        report = corpus_rhyme_report(corpus)
        rows = density_histogram(report, n_bins=10)
        assert sum(count for _, _, count in rows) == len(report.per_artist)


def test_acceptance_scale_oracle_equivalence():
    # 1000 random synthetic sequences against both brute-force references.
    rng = random.Random(99)
    for _ in range(1000):
        a = tuple(rng.choice(VOWEL_SYMBOLS)
                  for _ in range(rng.randint(0, 10)))
        b = tuple(rng.choice(VOWEL_SYMBOLS)
                  for _ in range(rng.randint(0, 10)))
        assert longest_common_vowel_suffix(a, b) == \
            suffix_match_bruteforce(a, b)
        if a:
            assert longest_match_near(a, b) == window_match_bruteforce(a, b)
