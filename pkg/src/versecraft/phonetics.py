"""Text-to-phoneme transcription and vowel extraction.

Two backends produce the same unit inventory: a hermetic pronunciation
lexicon with letter-to-sound fallback (the default, used by all tests),
and an adapter around an external speech-synthesizer process. Vowel
units are atomic symbols from ``data/phoneme_classes.txt``; diphthongs
are represented as two monophthong units, so e.g. "pay" carries the
vowel units ("e", "I").
"""
from __future__ import annotations

import subprocess
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, NamedTuple

from .lts import letter_to_sound

VOWEL = "vowel"
CONSONANT = "consonant"
SEPARATOR = "separator"

SEPARATOR_SYMBOL = "_"

# ARPABET phone -> internal unit symbols. Diphthongs map to two units.
# AH is special-cased on stress: unstressed AH0 is schwa.
_ARPABET = {
    "AA": ("A:",), "AE": ("a",), "AO": ("O:",), "AW": ("a", "U"),
    "AY": ("a", "I"), "EH": ("E",), "ER": ("3:",), "EY": ("e", "I"),
    "IH": ("I",), "IY": ("i",), "OW": ("o", "U"), "OY": ("O", "I"),
    "UH": ("U",), "UW": ("u:",),
    "B": ("b",), "CH": ("tS",), "D": ("d",), "DH": ("D",), "F": ("f",),
    "G": ("g",), "HH": ("h",), "JH": ("dZ",), "K": ("k",), "L": ("l",),
    "M": ("m",), "N": ("n",), "NG": ("N",), "P": ("p",), "R": ("r",),
    "S": ("s",), "SH": ("S",), "T": ("t",), "TH": ("T",), "V": ("v",),
    "W": ("w",), "Y": ("y",), "Z": ("z",), "ZH": ("Z",),
}

_DIGIT_WORDS = {
    "0": "zero", "1": "one", "2": "two", "3": "three", "4": "four",
    "5": "five", "6": "six", "7": "seven", "8": "eight", "9": "nine",
}


class PhonemizerError(RuntimeError):
    """Raised when a configured external phonemizer cannot be used."""


class Phoneme(NamedTuple):
    symbol: str
    kind: str


@dataclass(frozen=True)
class PhonemeString:
    """Ordered phoneme units for one line of text, each unit class-tagged."""

    units: tuple[Phoneme, ...]
    source_text: str

    def __len__(self) -> int:
        return len(self.units)


@dataclass(frozen=True)
class VowelSeq:
    """Vowel units of a line, with per-word (start, end) spans."""

    vowels: tuple[str, ...]
    word_boundaries: tuple[tuple[int, int], ...] = field(default=())

    def __len__(self) -> int:
        return len(self.vowels)

    def reversed_symbols(self) -> tuple[str, ...]:
        return tuple(reversed(self.vowels))


def load_phoneme_classes() -> dict[str, str]:
    """Read the symbol -> class table shipped with the package."""
    table: dict[str, str] = {}
    text = resources.files("versecraft.data").joinpath(
        "phoneme_classes.txt").read_text(encoding="utf-8")
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        symbol, cls = line.split("\t")
        if cls not in (VOWEL, CONSONANT, SEPARATOR):
            raise ValueError(f"unknown phoneme class {cls!r}")
        table[symbol] = cls
    return table


def _arpabet_to_units(phones: Iterable[str]) -> tuple[str, ...]:
    units: list[str] = []
    for phone in phones:
        stress = phone[-1] if phone and phone[-1].isdigit() else None
        base = phone.rstrip("012")
        if base == "AH":
            units.append("@" if stress == "0" else "V")
            continue
        try:
            units.extend(_ARPABET[base])
        except KeyError:
            raise ValueError(f"unknown ARPABET phone {phone!r}") from None
    return tuple(units)


def normalize_for_transcription(text: str) -> list[str]:
    """Lowercase, strip non-transcribable characters, expand digits."""
    cleaned: list[str] = []
    for ch in text.lower():
        if ch.isascii() and (ch.isalpha() or ch == "'"):
            cleaned.append(ch)
        elif ch in _DIGIT_WORDS:
            cleaned.append(" " + _DIGIT_WORDS[ch] + " ")
        else:
            cleaned.append(" ")
    # Apostrophes survive only inside words ("don't"); bare ones vanish.
    words = []
    for word in "".join(cleaned).split():
        word = word.strip("'")
        if word:
            words.append(word)
    return words


class LexiconBackend:
    """Pronunciation lexicon plus letter-to-sound fallback.

    The lexicon file holds one ``WORD<TAB>PHONE PHONE ...`` entry per
    line in ARPABET (CMU Pronouncing Dictionary text format). Words not
    found fall back to letter-to-sound rules; nothing is dropped
    silently. Immutable after construction and safe to share.
    """

    name = "lexicon"

    def __init__(self, lexicon_path: str | None = None):
        if lexicon_path is None:
            text = resources.files("versecraft.data").joinpath(
                "lexicon.txt").read_text(encoding="utf-8")
        else:
            with open(lexicon_path, encoding="utf-8") as fh:
                text = fh.read()
        self._entries: dict[str, tuple[str, ...]] = {}
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith(";;;") or line.startswith("#"):
                continue
            word, _, pron = line.partition("\t")
            if not pron:
                word, _, pron = line.partition(" ")
            self._entries[word.lower()] = _arpabet_to_units(pron.split())
        self.classes = load_phoneme_classes()

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._entries

    def word_units(self, word: str) -> tuple[str, ...]:
        units = self._entries.get(word.lower())
        if units is None:
            units = letter_to_sound(word.lower())
        return units


class ExternalBackend:
    """Adapter for an external phonemizer process.

    Contract: the process reads one line of text on stdin and writes one
    line of phonetic transcription on stdout. The output is parsed
    greedily against the symbol table (longest symbol first); characters
    outside the table are ignored. Access to the subprocess is
    serialized, so one backend instance is safe to share across threads.
    """

    name = "external"

    def __init__(self, command: list[str]):
        self.command = list(command)
        self.classes = load_phoneme_classes()
        self._symbols = sorted(self.classes, key=len, reverse=True)
        self._lock = threading.Lock()
        self._proc: subprocess.Popen | None = None

    def _ensure_proc(self) -> subprocess.Popen:
        if self._proc is None or self._proc.poll() is not None:
            try:
                self._proc = subprocess.Popen(
                    self.command, stdin=subprocess.PIPE,
                    stdout=subprocess.PIPE, text=True, bufsize=1)
            except OSError as exc:
                raise PhonemizerError(
                    f"cannot start phonemizer {self.command!r}: {exc}"
                ) from exc
        return self._proc

    def _parse(self, line: str) -> tuple[str, ...]:
        units: list[str] = []
        i = 0
        while i < len(line):
            if line[i].isspace():
                i += 1
                continue
            for sym in self._symbols:
                if sym != SEPARATOR_SYMBOL and line.startswith(sym, i):
                    units.append(sym)
                    i += len(sym)
                    break
            else:
                i += 1
        return tuple(units)

    def word_units(self, word: str) -> tuple[str, ...]:
        with self._lock:
            proc = self._ensure_proc()
            try:
                proc.stdin.write(word + "\n")
                proc.stdin.flush()
                out = proc.stdout.readline()
            except (OSError, ValueError) as exc:
                raise PhonemizerError(
                    f"phonemizer {self.command!r} unreachable: {exc}"
                ) from exc
            if out == "":
                raise PhonemizerError(
                    f"phonemizer {self.command!r} closed its output")
        return self._parse(out)


_DEFAULT_BACKEND: LexiconBackend | None = None


def default_backend() -> LexiconBackend:
    global _DEFAULT_BACKEND
    if _DEFAULT_BACKEND is None:
        _DEFAULT_BACKEND = LexiconBackend()
    return _DEFAULT_BACKEND


def transcribe(text: str, backend=None) -> PhonemeString:
    """Transcribe one line of text into a PhonemeString.

    Words are separated by separator units. Raises ValueError on input
    that is empty after whitespace trimming; input with no transcribable
    characters yields an empty PhonemeString.
    """
    if not text.strip():
        raise ValueError("cannot transcribe empty text")
    if backend is None:
        backend = default_backend()
    classes = backend.classes
    units: list[Phoneme] = []
    for i, word in enumerate(normalize_for_transcription(text)):
        if i > 0:
            units.append(Phoneme(SEPARATOR_SYMBOL, SEPARATOR))
        for sym in backend.word_units(word):
            try:
                units.append(Phoneme(sym, classes[sym]))
            except KeyError:
                raise ValueError(
                    f"backend emitted unknown symbol {sym!r}") from None
    return PhonemeString(units=tuple(units), source_text=text)


def extract_vowels(p: PhonemeString) -> VowelSeq:
    """Keep the vowel units of a PhonemeString, tracking word spans."""
    vowels: list[str] = []
    bounds: list[tuple[int, int]] = []
    start = 0
    saw_word = False
    for unit in p.units:
        if unit.kind == SEPARATOR:
            bounds.append((start, len(vowels)))
            start = len(vowels)
            continue
        saw_word = True
        if unit.kind == VOWEL:
            vowels.append(unit.symbol)
    if saw_word:
        bounds.append((start, len(vowels)))
    return VowelSeq(vowels=tuple(vowels), word_boundaries=tuple(bounds))


@lru_cache(maxsize=100_000)
def _cached_vowels(text: str, backend_key: int) -> VowelSeq:
    return extract_vowels(transcribe(text, _BACKENDS[backend_key]))


# Keeps a strong reference per backend so its id() stays unique for the
# lifetime of the cache entries keyed on it.
_BACKENDS: dict[int, object] = {}


def line_vowels(text: str, backend=None) -> VowelSeq:
    """Memoized transcribe + extract_vowels for repeated line lookups."""
    if backend is None:
        backend = default_backend()
    key = id(backend)
    _BACKENDS[key] = backend
    return _cached_vowels(text, key)
