"""Rhyme matching primitives and the rhyme density measure.

All matching happens on vowel-unit sequences: consonants and spaces are
ignored. Rhyme density is the average, over the words of a song, of the
length of the longest vowel sequence of the word that also occurs in
the word's preceding context window.
"""
from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus, Song
from .phonetics import VowelSeq, line_vowels

# Context window for density: vowel units of this many preceding words.
DENSITY_WINDOW_WORDS = 15


class RhymeError(ValueError):
    pass


def longest_common_vowel_suffix(a: VowelSeq | tuple[str, ...],
                                b: VowelSeq | tuple[str, ...]) -> int:
    """Length of the longest shared trailing vowel run of a and b."""
    va = a.vowels if isinstance(a, VowelSeq) else a
    vb = b.vowels if isinstance(b, VowelSeq) else b
    m = 0
    limit = min(len(va), len(vb))
    while m < limit and va[-1 - m] == vb[-1 - m]:
        m += 1
    return m


def longest_match_near(word_vowels: tuple[str, ...],
                       window: tuple[str, ...]) -> int:
    """Longest contiguous vowel substring of the word found in the window.

    The match may start anywhere in the word and anywhere in the window.
    Zero when the window is empty or nothing matches.
    """
    if not word_vowels:
        raise RhymeError("word has no vowel units")
    if not window:
        return 0
    n = len(word_vowels)
    best = 0
    for start in range(n):
        # Grow the substring until it no longer occurs in the window.
        length = best  # shorter matches cannot improve
        while start + length < n:
            probe = word_vowels[start:start + length + 1]
            if not _contains(window, probe):
                break
            length += 1
        best = max(best, length)
    return best


def _contains(haystack: tuple[str, ...], needle: tuple[str, ...]) -> bool:
    n, m = len(haystack), len(needle)
    first = needle[0]
    for i in range(n - m + 1):
        if haystack[i] == first and haystack[i:i + m] == needle:
            return True
    return False


def _song_word_vowels(song: Song, backend=None) -> list[tuple[str, ...]]:
    """Vowel units of every word of the song, in reading order."""
    words: list[tuple[str, ...]] = []
    for line in song.lines:
        seq = line_vowels(line.text, backend)
        for start, end in seq.word_boundaries:
            words.append(seq.vowels[start:end])
    return words


def rhyme_density(song: Song, backend=None,
                  window_words: int = DENSITY_WINDOW_WORDS) -> float:
    """Average longest rhyme length per word, in vowel units.

    Words with no vowel units cannot match and are left out of the mean.
    The window spans the preceding `window_words` words of the same
    song, crossing line boundaries, excluding the word itself.
    """
    if not song.lines:
        raise RhymeError("empty song has no measurable content")
    words = _song_word_vowels(song, backend)
    lengths: list[int] = []
    for i, wv in enumerate(words):
        if not wv:
            continue
        window: list[str] = []
        for prev in words[max(0, i - window_words):i]:
            window.extend(prev)
        lengths.append(longest_match_near(wv, tuple(window)))
    if not lengths:
        raise RhymeError("song has no words with vowels")
    return sum(lengths) / len(lengths)


def artist_rhyme_density(corpus: Corpus, artist_id: str, backend=None) -> float:
    """Mean of the artist's per-song densities."""
    songs = corpus.songs_by_artist(artist_id)
    if not songs:
        raise RhymeError(f"unknown artist: {artist_id!r}")
    densities = [rhyme_density(s, backend) for s in songs]
    return sum(densities) / len(densities)


@dataclass(frozen=True)
class RhymeDensityReport:
    per_song: dict[int, float]
    per_artist: dict[str, float]
    corpus_mean: float

    def to_csv_rows(self, corpus: Corpus) -> list[tuple[str, float, int]]:
        rows = []
        for artist, density in sorted(self.per_artist.items(),
                                      key=lambda kv: -kv[1]):
            n_songs = len(corpus.songs_by_artist(artist))
            rows.append((artist, density, n_songs))
        return rows


def corpus_rhyme_report(corpus: Corpus, backend=None) -> RhymeDensityReport:
    per_song: dict[int, float] = {}
    by_artist: dict[str, list[float]] = {}
    for song in corpus.songs:
        d = rhyme_density(song, backend)
        per_song[song.song_id] = d
        by_artist.setdefault(song.artist_id, []).append(d)
    per_artist = {a: sum(ds) / len(ds) for a, ds in by_artist.items()}
    corpus_mean = (sum(per_song.values()) / len(per_song)) if per_song else 0.0
    return RhymeDensityReport(per_song=per_song, per_artist=per_artist,
                              corpus_mean=corpus_mean)


def density_histogram(report: RhymeDensityReport, n_bins: int = 12
                      ) -> list[tuple[float, float, int]]:
    """(bin_low, bin_high, count) rows over per-artist densities."""
    values = sorted(report.per_artist.values())
    if not values:
        return []
    lo, hi = values[0], values[-1]
    if hi <= lo:
        return [(lo, hi, len(values))]
    width = (hi - lo) / n_bins
    rows = []
    for b in range(n_bins):
        blo = lo + b * width
        bhi = hi if b == n_bins - 1 else lo + (b + 1) * width
        count = sum(1 for v in values
                    if blo <= v < bhi or (b == n_bins - 1 and v == bhi))
        rows.append((blo, bhi, count))
    return rows
