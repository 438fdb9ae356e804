"""Best-end-rhyme retrieval over reversed vowel transcriptions.

Lines are keyed by their vowel sequence reversed, so the lines sharing
the longest key prefix with a query are exactly its best end rhymes.
Keys live in one sorted array; a query binary-searches for the deepest
prefix match and expands outward, costing O(log n + k). A sorted array
was chosen over a trie: equally fast here and far smaller.
"""
from __future__ import annotations

import bisect
import json
import logging
from dataclasses import dataclass
from pathlib import Path

from .corpus import Corpus
from .phonetics import VowelSeq, line_vowels

SNAPSHOT_VERSION = 1

logger = logging.getLogger(__name__)


class IndexError_(ValueError):
    pass


def rhyme_key(vowels: VowelSeq | tuple[str, ...]) -> tuple[str, ...]:
    """A line's retrieval key: its vowel units, reversed."""
    v = vowels.vowels if isinstance(vowels, VowelSeq) else vowels
    return tuple(reversed(v))


def lcp(a: tuple[str, ...], b: tuple[str, ...]) -> int:
    """Number of equal leading symbols of two keys."""
    n = 0
    limit = min(len(a), len(b))
    while n < limit and a[n] == b[n]:
        n += 1
    return n


@dataclass(frozen=True)
class CandidateIndex:
    """Sorted (key, line_id) entries; ties ordered by line id."""

    keys: tuple[tuple[str, ...], ...]
    line_ids: tuple[int, ...]
    skipped_vowelless: int = 0

    @property
    def size(self) -> int:
        return len(self.keys)

    def query(self, query_vowels: VowelSeq | tuple[str, ...], k: int
              ) -> list[int]:
        """Return ids of the k entries with the longest common key prefix.

        Boundary ties are broken by proximity to the anchor entry, then
        by line id. A query with no vowels returns [].
        """
        if not 1 <= k <= self.size:
            raise IndexError_(f"k must be in [1, {self.size}], got {k}")
        key = rhyme_key(query_vowels)
        if not key:
            logger.warning("query line has no vowels; nothing to retrieve")
            return []
        pos = bisect.bisect_left(self.keys, key)
        # LCP against the query is non-increasing moving away from the
        # insertion point, so the next best entry is always at one of
        # the two frontiers. Rank = (-lcp, proximity, line_id); frontier
        # LCPs are cached and only recomputed when a pointer moves.
        keys, ids, size = self.keys, self.line_ids, self.size
        left = pos - 1
        right = pos
        rank_left = ((-lcp(key, keys[left]), pos - 1 - left, ids[left])
                     if left >= 0 else None)
        rank_right = ((-lcp(key, keys[right]), right - pos, ids[right])
                      if right < size else None)
        chosen: list[tuple[int, int, int]] = []
        while len(chosen) < k:
            if rank_left is None and rank_right is None:
                break
            if rank_right is None or (rank_left is not None
                                      and rank_left <= rank_right):
                chosen.append(rank_left)
                left -= 1
                rank_left = ((-lcp(key, keys[left]), pos - 1 - left,
                              ids[left]) if left >= 0 else None)
            else:
                chosen.append(rank_right)
                right += 1
                rank_right = ((-lcp(key, keys[right]), right - pos,
                               ids[right]) if right < size else None)
        chosen.sort()
        return [line_id for _, _, line_id in chosen]

    def save(self, path: str | Path) -> None:
        payload = {
            "version": SNAPSHOT_VERSION,
            "keys": [list(k) for k in self.keys],
            "line_ids": list(self.line_ids),
            "skipped_vowelless": self.skipped_vowelless,
        }
        Path(path).write_text(json.dumps(payload), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "CandidateIndex":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        if payload.get("version") != SNAPSHOT_VERSION:
            raise IndexError_("unsupported index snapshot version")
        return cls(keys=tuple(tuple(k) for k in payload["keys"]),
                   line_ids=tuple(payload["line_ids"]),
                   skipped_vowelless=payload["skipped_vowelless"])


def build(corpus: Corpus, backend=None) -> CandidateIndex:
    """Index every corpus line with at least one vowel."""
    if not corpus.lines:
        raise IndexError_("cannot index an empty corpus")
    entries: list[tuple[tuple[str, ...], int]] = []
    skipped = 0
    for line in corpus.lines:
        key = rhyme_key(line_vowels(line.text, backend))
        if not key:
            skipped += 1
            continue
        entries.append((key, line.id))
    entries.sort()
    return CandidateIndex(
        keys=tuple(key for key, _ in entries),
        line_ids=tuple(line_id for _, line_id in entries),
        skipped_vowelless=skipped,
    )


def build_from_pairs(pairs: list[tuple[tuple[str, ...], int]]
                     ) -> CandidateIndex:
    """Index prebuilt (vowel_seq, line_id) pairs; mainly for tests."""
    entries = sorted((rhyme_key(v), line_id) for v, line_id in pairs if v)
    skipped = sum(1 for v, _ in pairs if not v)
    return CandidateIndex(
        keys=tuple(key for key, _ in entries),
        line_ids=tuple(line_id for _, line_id in entries),
        skipped_vowelless=skipped,
    )
