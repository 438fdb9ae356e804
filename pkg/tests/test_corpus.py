import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import write_jsonl
from versecraft.corpus import (CorpusError, ingest, normalize,
                               split_by_artist, tokenize)

TWO_SONGS = [
    {"artist": "A", "title": "First", "lines": ["one two", "three four"]},
    {"artist": "B", "title": "Second", "lines": ["five six", "seven eight",
                                                 "nine ten"]},
]


class TestTokenize:
    def test_strips_punctuation(self):
        assert tokenize("Stay warm!") == ("stay", "warm")

    def test_keeps_word_internal_apostrophes(self):
        assert tokenize("don't stop") == ("don't", "stop")

    def test_whitespace_only(self):
        assert tokenize("   ") == ()

    def test_lowercases(self):
        assert tokenize("STAY Warm") == ("stay", "warm")


class TestIngest:
    def test_round_trip(self, tmp_path):
        corpus = ingest(write_jsonl(tmp_path / "c.jsonl", TWO_SONGS))
        assert len(corpus.songs) == 2
        assert [len(s.lines) for s in corpus.songs] == [2, 3]
        assert [ln.id for ln in corpus.lines] == [0, 1, 2, 3, 4]

    def test_missing_field_reports_record(self, tmp_path):
        bad = [TWO_SONGS[0], {"artist": "B", "title": "X"}]
        with pytest.raises(CorpusError, match="record 1"):
            ingest(write_jsonl(tmp_path / "c.jsonl", bad))

    def test_duplicate_song_rejected(self, tmp_path):
        dup = [TWO_SONGS[0], TWO_SONGS[0]]
        with pytest.raises(CorpusError, match="duplicate"):
            ingest(write_jsonl(tmp_path / "c.jsonl", dup))

    def test_invalid_json_reports_record(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"artist": "A", "title": "T", "lines": ["x"]}\n'
                        "not json\n")
        with pytest.raises(CorpusError, match="record 1"):
            ingest(path)

    def test_ids_stable_across_reingestion(self, tmp_path):
        path = write_jsonl(tmp_path / "c.jsonl", TWO_SONGS)
        assert ingest(path).digest() == ingest(path).digest()

    def test_packaged_sample_corpus(self):
        corpus = ingest()
        assert len(corpus.lines) >= 5000
        assert len(corpus.artists) >= 10

    def test_unparseable_lines_skipped(self, tmp_path):
        recs = [{"artist": "A", "title": "T",
                 "lines": ["real line", "???", "another line"]}]
        corpus = ingest(write_jsonl(tmp_path / "c.jsonl", recs))
        assert [ln.position for ln in corpus.songs[0].lines] == [0, 1]


class TestNormalize:
    def test_chorus_deduplicated(self, tmp_path):
        chorus = ["hook line one", "hook line two"]
        recs = [{"artist": "A", "title": "T",
                 "lines": chorus + ["verse a"] + chorus + ["verse b"]
                 + chorus}]
        corpus = normalize(ingest(write_jsonl(tmp_path / "c.jsonl", recs)))
        texts = [ln.text for ln in corpus.songs[0].lines]
        assert texts == ["hook line one", "hook line two", "verse a",
                         "verse b"]
        assert [ln.position for ln in corpus.songs[0].lines] == [0, 1, 2, 3]

    @pytest.mark.parametrize("title", ["Intro", "The Outro", "Skit 2",
                                       "An Interlude (live)"])
    def test_spoken_tracks_removed(self, tmp_path, title):
        recs = TWO_SONGS + [{"artist": "C", "title": title,
                             "lines": ["talk talk"]}]
        corpus = normalize(ingest(write_jsonl(tmp_path / "c.jsonl", recs)))
        assert all(s.title != title for s in corpus.songs)

    def test_clean_songs_unchanged(self, tmp_path):
        corpus = ingest(write_jsonl(tmp_path / "c.jsonl", TWO_SONGS))
        normalized = normalize(corpus)
        assert [ln.text for ln in normalized.lines] == \
            [ln.text for ln in corpus.lines]

    def test_idempotent(self, tmp_path):
        recs = [{"artist": "A", "title": "T",
                 "lines": ["x y", "x y", "z w"]}]
        once = normalize(ingest(write_jsonl(tmp_path / "c.jsonl", recs)))
        twice = normalize(once)
        assert once.digest() == twice.digest()

    def test_no_duplicate_texts_after(self, corpus):
        for song in corpus.songs:
            texts = [ln.text for ln in song.lines]
            assert len(texts) == len(set(texts))

    def test_line_ids_preserved(self, tmp_path):
        recs = [{"artist": "A", "title": "T",
                 "lines": ["x y", "x y", "z w"]}]
        corpus = normalize(ingest(write_jsonl(tmp_path / "c.jsonl", recs)))
        assert [ln.id for ln in corpus.lines] == [0, 2]


class TestSplit:
    def make(self, tmp_path, n):
        recs = [{"artist": f"artist-{i}", "title": f"t{i}",
                 "lines": ["a b", "c d"]} for i in range(n)]
        return ingest(write_jsonl(tmp_path / "c.jsonl", recs))

    def test_four_artists(self, tmp_path):
        split = split_by_artist(self.make(tmp_path, 4), seed=1)
        assert (len(split.train), len(split.validation),
                len(split.test)) == (2, 1, 1)

    def test_104_artists(self, tmp_path):
        split = split_by_artist(self.make(tmp_path, 104), seed=1)
        assert (len(split.train), len(split.validation),
                len(split.test)) == (52, 26, 26)

    def test_deterministic(self, tmp_path):
        corpus = self.make(tmp_path, 11)
        assert split_by_artist(corpus, 7) == split_by_artist(corpus, 7)

    def test_too_few_artists(self, tmp_path):
        with pytest.raises(CorpusError):
            split_by_artist(self.make(tmp_path, 3), seed=0)

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=25, deadline=None)
    def test_partition_property(self, seed, corpus):
        split = split_by_artist(corpus, seed)
        all_artists = set(corpus.artists)
        assert split.train | split.validation | split.test == all_artists
        assert not split.train & split.validation
        assert not split.train & split.test
        assert not split.validation & split.test
