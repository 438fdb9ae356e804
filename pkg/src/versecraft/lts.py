"""Rule-based letter-to-sound fallback for out-of-lexicon words.

English spelling-to-phoneme rules, applied greedily left to right with
the longest matching grapheme first. The output uses the same internal
unit inventory as the lexicon backend, so downstream rhyme code never
needs to know which path produced a transcription. Coverage is rough
around true irregulars; the lexicon is expected to carry those.
"""
from __future__ import annotations

_VOWEL_LETTERS = "aeiouy"

# Grapheme -> units, tried longest-first at each position. "@" marks
# patterns valid only at the end of a word.
_RULES: list[tuple[str, tuple[str, ...]]] = [
    ("tion@", ("S", "@", "n")),
    ("sion@", ("Z", "@", "n")),
    ("ough@", ("o", "U")),
    ("augh", ("O:",)),
    ("ought", ("O:", "t")),
    ("eigh", ("e", "I")),
    ("igh", ("a", "I")),
    ("tch", ("tS",)),
    ("dge", ("dZ",)),
    ("sch", ("s", "k")),
    ("ing@", ("I", "N")),
    ("ish@", ("I", "S")),
    ("qu", ("k", "w")),
    ("ch", ("tS",)),
    ("sh", ("S",)),
    ("th", ("T",)),
    ("ph", ("f",)),
    ("wh", ("w",)),
    ("ck", ("k",)),
    ("ng", ("N",)),
    ("kn", ("n",)),
    ("wr", ("r",)),
    ("gn", ("n",)),
    ("oo", ("u:",)),
    ("ee", ("i",)),
    ("ea", ("i",)),
    ("ai", ("e", "I")),
    ("ay", ("e", "I")),
    ("ey@", ("i",)),
    ("ei", ("e", "I")),
    ("oa", ("o", "U")),
    ("ow@", ("o", "U")),
    ("ou", ("a", "U")),
    ("ow", ("a", "U")),
    ("oi", ("O", "I")),
    ("oy", ("O", "I")),
    ("au", ("O:",)),
    ("aw", ("O:",)),
    ("ue", ("u:",)),
    ("ui", ("u:",)),
    ("ar", ("A:", "r")),
    ("or", ("O:", "r")),
    ("er", ("3:",)),
    ("ir", ("3:",)),
    ("ur", ("3:",)),
    ("y@", ("i",)),
    ("a", ("a",)),
    ("e", ("E",)),
    ("i", ("I",)),
    ("o", ("A:",)),
    ("u", ("V",)),
    ("y", ("I",)),
    ("b", ("b",)),
    ("c", ("k",)),
    ("d", ("d",)),
    ("f", ("f",)),
    ("g", ("g",)),
    ("h", ("h",)),
    ("j", ("dZ",)),
    ("k", ("k",)),
    ("l", ("l",)),
    ("m", ("m",)),
    ("n", ("n",)),
    ("p", ("p",)),
    ("q", ("k",)),
    ("r", ("r",)),
    ("s", ("s",)),
    ("t", ("t",)),
    ("v", ("v",)),
    ("w", ("w",)),
    ("x", ("k", "s")),
    ("z", ("z",)),
    ("'", ()),
]


def _soft_c(word: str, i: int) -> bool:
    return word[i] == "c" and i + 1 < len(word) and word[i + 1] in "eiy"


def _soft_g(word: str, i: int) -> bool:
    return word[i] == "g" and i + 1 < len(word) and word[i + 1] in "eiy"


def _magic_e(word: str, i: int) -> bool:
    """vowel + single consonant + final silent e lengthens the vowel."""
    return (i + 2 == len(word) - 1 and word[-1] == "e"
            and word[i + 1] not in _VOWEL_LETTERS
            and word[i] in "aiou")


_LONG = {"a": ("e", "I"), "i": ("a", "I"), "o": ("o", "U"), "u": ("u:",)}


def letter_to_sound(word: str) -> tuple[str, ...]:
    """Transcribe a lowercase word by rule. Deterministic."""
    word = word.lower()
    units: list[str] = []
    i = 0
    while i < len(word):
        if i == 0 and word[0] == "y" and len(word) > 1 \
                and word[1] in _VOWEL_LETTERS:
            units.append("y")
            i += 1
            continue
        if _soft_c(word, i):
            units.append("s")
            i += 1
            continue
        if _soft_g(word, i):
            units.append("dZ")
            i += 1
            continue
        if _magic_e(word, i):
            units.extend(_LONG[word[i]])
            rest = word[i + 1]
            for pat, out in _RULES:
                if pat.rstrip("@") == rest:
                    units.extend(out)
                    break
            i = len(word)
            continue
        # Final silent e after a consonant.
        if (word[i] == "e" and i == len(word) - 1 and len(word) > 2
                and word[i - 1] not in _VOWEL_LETTERS):
            i += 1
            continue
        for pat, out in _RULES:
            at_end = pat.endswith("@")
            pat_core = pat.rstrip("@")
            if not word.startswith(pat_core, i):
                continue
            if at_end and i + len(pat_core) != len(word):
                continue
            units.extend(out)
            i += len(pat_core)
            break
        else:
            i += 1  # untranscribable character, skip
    # Collapse doubled consonants produced by double letters ("ll", "ss").
    deduped: list[str] = []
    for u in units:
        if deduped and deduped[-1] == u and u not in ("a", "e", "i", "o", "u",
                                                      "I", "E", "V", "@"):
            continue
        deduped.append(u)
    return tuple(deduped)
