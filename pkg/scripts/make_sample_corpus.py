#!/usr/bin/env python3
"""Build the sample lyrics corpus and its pronunciation lexicon.

Everything here is deterministic: re-running the script reproduces the
shipped data files byte for byte. The vocabulary is closed — every word
that can appear in a generated line carries a hand-written ARPABET
pronunciation, so the lexicon fully covers the corpus and the rhyme
structure of the songs is known by construction.

Outputs (relative to the repo root):
    src/versecraft/data/sample_corpus.jsonl
    src/versecraft/data/lexicon.txt
"""
from __future__ import annotations

import json
import random
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
DATA_DIR = REPO / "src" / "versecraft" / "data"

SEED = 20151104

# ---------------------------------------------------------------------------
# Pronunciations. ARPABET with stress digits, one pronunciation per word.
# Organized by role; merged (and conflict-checked) into one lexicon below.
# ---------------------------------------------------------------------------

# Pre-ender adjectives, grouped so each group shares its vowel content.
PENULT_CLASSES: dict[str, dict[str, str]] = {
    "ay": {
        "bright": "B R AY1 T", "tight": "T AY1 T", "white": "W AY1 T",
        "wild": "W AY1 L D", "blind": "B L AY1 N D", "fine": "F AY1 N",
        "high": "HH AY1", "wide": "W AY1 D",
    },
    "ow": {
        "cold": "K OW1 L D", "gold": "G OW1 L D", "old": "OW1 L D",
        "bold": "B OW1 L D", "slow": "S L OW1", "low": "L OW1",
        "whole": "HH OW1 L", "broke": "B R OW1 K",
    },
    "iy": {
        "deep": "D IY1 P", "clean": "K L IY1 N", "green": "G R IY1 N",
        "mean": "M IY1 N", "sweet": "S W IY1 T", "free": "F R IY1",
        "real": "R IY1 L", "brief": "B R IY1 F",
    },
    "ey": {
        "great": "G R EY1 T", "late": "L EY1 T", "straight": "S T R EY1 T",
        "brave": "B R EY1 V", "strange": "S T R EY1 N JH",
        "plain": "P L EY1 N", "grey": "G R EY1", "same": "S EY1 M",
    },
    "aa": {
        "dark": "D AA1 R K", "hard": "HH AA1 R D", "sharp": "SH AA1 R P",
        "far": "F AA1 R", "calm": "K AA1 M", "hot": "HH AA1 T",
        "smart": "S M AA1 R T",
    },
    "er": {
        "first": "F ER1 S T", "worst": "W ER1 S T", "third": "TH ER1 D",
        "firm": "F ER1 M",
    },
    "aw": {
        "loud": "L AW1 D", "proud": "P R AW1 D", "round": "R AW1 N D",
    },
    "eh": {
        "fresh": "F R EH1 SH", "best": "B EH1 S T", "blessed": "B L EH1 S T",
        "red": "R EH1 D", "wet": "W EH1 T", "next": "N EH1 K S T",
    },
    "ah": {
        "rough": "R AH1 F", "tough": "T AH1 F", "young": "Y AH1 NG",
        "blunt": "B L AH1 N T",
    },
    "ao": {
        "strong": "S T R AO1 NG", "long": "L AO1 NG", "lost": "L AO1 S T",
        "raw": "R AO1", "tall": "T AO1 L", "small": "S M AO1 L",
        "warm": "W AO1 R M", "soft": "S AO1 F T",
    },
    "ih": {
        "quick": "K W IH1 K", "slick": "S L IH1 K", "rich": "R IH1 CH",
        "thick": "TH IH1 K", "big": "B IH1 G", "swift": "S W IH1 F T",
    },
    "ae": {
        "fast": "F AE1 S T", "vast": "V AE1 S T", "black": "B L AE1 K",
        "flat": "F L AE1 T", "bad": "B AE1 D", "mad": "M AE1 D",
        "glad": "G L AE1 D",
    },
    "en": {
        "golden": "G OW1 L D AH0 N", "frozen": "F R OW1 Z AH0 N",
        "broken": "B R OW1 K AH0 N", "chosen": "CH OW1 Z AH0 N",
        "molten": "M OW1 L T AH0 N",
    },
    "ing": {
        "burning": "B ER1 N IH0 NG", "turning": "T ER1 N IH0 NG",
        "searching": "S ER1 CH IH0 NG", "working": "W ER1 K IH0 NG",
    },
}

# Line-final nouns, grouped the same way.
ENDER_CLASSES: dict[str, dict[str, str]] = {
    "ey": {
        "way": "W EY1", "day": "D EY1", "game": "G EY1 M",
        "flame": "F L EY1 M", "rain": "R EY1 N", "chain": "CH EY1 N",
        "wave": "W EY1 V", "stage": "S T EY1 JH", "space": "S P EY1 S",
        "place": "P L EY1 S", "name": "N EY1 M", "fame": "F EY1 M",
        "face": "F EY1 S", "race": "R EY1 S",
    },
    "ay": {
        "sky": "S K AY1", "mind": "M AY1 N D", "line": "L AY1 N",
        "sign": "S AY1 N", "vibe": "V AY1 B", "life": "L AY1 F",
        "time": "T AY1 M", "rhyme": "R AY1 M", "shine": "SH AY1 N",
        "tide": "T AY1 D", "pride": "P R AY1 D", "night": "N AY1 T",
        "light": "L AY1 T",
    },
    "ow": {
        "road": "R OW1 D", "soul": "S OW1 L", "stone": "S T OW1 N",
        "home": "HH OW1 M", "zone": "Z OW1 N", "flow": "F L OW1",
        "glow": "G L OW1", "smoke": "S M OW1 K", "code": "K OW1 D",
        "throne": "TH R OW1 N", "tone": "T OW1 N", "globe": "G L OW1 B",
    },
    "iy": {
        "dream": "D R IY1 M", "scene": "S IY1 N", "street": "S T R IY1 T",
        "beat": "B IY1 T", "heat": "HH IY1 T", "sea": "S IY1",
        "key": "K IY1", "field": "F IY1 L D", "steel": "S T IY1 L",
        "queen": "K W IY1 N", "team": "T IY1 M", "theme": "TH IY1 M",
    },
    "aa": {
        "heart": "HH AA1 R T", "star": "S T AA1 R", "art": "AA1 R T",
        "spark": "S P AA1 R K", "card": "K AA1 R D", "yard": "Y AA1 R D",
        "bar": "B AA1 R", "scar": "S K AA1 R",
    },
    "aw": {
        "crowd": "K R AW1 D", "sound": "S AW1 N D", "ground": "G R AW1 N D",
        "town": "T AW1 N", "crown": "K R AW1 N", "cloud": "K L AW1 D",
    },
    "ao": {
        "dawn": "D AO1 N", "song": "S AO1 NG", "storm": "S T AO1 R M",
        "war": "W AO1 R", "door": "D AO1 R", "floor": "F L AO1 R",
        "shore": "SH AO1 R", "cause": "K AO1 Z", "thought": "TH AO1 T",
        "north": "N AO1 R TH",
    },
    "er": {
        "world": "W ER1 L D", "word": "W ER1 D", "work": "W ER1 K",
        "verse": "V ER1 S", "earth": "ER1 TH", "surge": "S ER1 JH",
    },
    "ity": {
        "city": "S IH1 T IY0", "pity": "P IH1 T IY0",
        "gritty": "G R IH1 T IY0", "ditty": "D IH1 T IY0",
    },
    "oney": {
        "money": "M AH1 N IY0", "honey": "HH AH1 N IY0",
        "sunny": "S AH1 N IY0", "funny": "F AH1 N IY0",
    },
    "ory": {
        "story": "S T AO1 R IY0", "glory": "G L AO1 R IY0",
        "forty": "F AO1 R T IY0",
    },
    "edy": {
        "heavy": "HH EH1 V IY0", "ready": "R EH1 D IY0",
        "steady": "S T EH1 D IY0", "medley": "M EH1 D L IY0",
    },
    "ation": {
        "nation": "N EY1 SH AH0 N", "station": "S T EY1 SH AH0 N",
        "vibration": "V AY0 B R EY1 SH AH0 N",
        "creation": "K R IY0 EY1 SH AH0 N",
        "formation": "F AO0 R M EY1 SH AH0 N",
        "rotation": "R OW0 T EY1 SH AH0 N",
        "celebration": "S EH2 L AH0 B R EY1 SH AH0 N",
        "education": "EH2 JH AH0 K EY1 SH AH0 N",
        "elevation": "EH2 L AH0 V EY1 SH AH0 N",
        "motivation": "M OW2 T AH0 V EY1 SH AH0 N",
        "innovation": "IH2 N AH0 V EY1 SH AH0 N",
        "dedication": "D EH2 D AH0 K EY1 SH AH0 N",
        "inspiration": "IH2 N S P ER0 EY1 SH AH0 N",
        "imagination": "IH0 M AE2 JH AH0 N EY1 SH AH0 N",
    },
    "ision": {
        "vision": "V IH1 ZH AH0 N", "mission": "M IH1 SH AH0 N",
        "system": "S IH1 S T AH0 M", "prism": "P R IH1 Z AH0 M",
    },
    "otion": {
        "motion": "M OW1 SH AH0 N", "potion": "P OW1 SH AH0 N",
        "emotion": "IH0 M OW1 SH AH0 N", "devotion": "D IH0 V OW1 SH AH0 N",
        "promotion": "P R AH0 M OW1 SH AH0 N",
        "explosion": "IH0 K S P L OW1 ZH AH0 N",
        "erosion": "IH0 R OW1 ZH AH0 N",
        "corrosion": "K ER0 OW1 ZH AH0 N",
    },
}

TOPICS: dict[str, dict[str, str]] = {
    "city": {
        "block": "B L AA1 K", "corner": "K AO1 R N ER0",
        "sidewalk": "S AY1 D W AO2 K", "subway": "S AH1 B W EY2",
        "uptown": "AH1 P T AW2 N", "downtown": "D AW1 N T AW2 N",
        "concrete": "K AA1 N K R IY0 T", "asphalt": "AE1 S F AO2 L T",
        "alley": "AE1 L IY0", "avenue": "AE1 V AH0 N UW2",
        "skyline": "S K AY1 L AY2 N", "pavement": "P EY1 V M AH0 N T",
        "neon": "N IY1 AA0 N", "bricks": "B R IH1 K S",
        "rooftop": "R UW1 F T AA2 P", "traffic": "T R AE1 F IH0 K",
        "window": "W IH1 N D OW0", "tunnel": "T AH1 N AH0 L",
        "streets": "S T R IY1 T S", "district": "D IH1 S T R IH0 K T",
    },
    "hustle": {
        "hustle": "HH AH1 S AH0 L", "grind": "G R AY1 N D",
        "paper": "P EY1 P ER0", "stack": "S T AE1 K",
        "profit": "P R AA1 F IH0 T", "pocket": "P AA1 K AH0 T",
        "market": "M AA1 R K AH0 T", "trade": "T R EY1 D",
        "cash": "K AE1 SH", "coin": "K OY1 N", "vault": "V AO1 L T",
        "fortune": "F AO1 R CH AH0 N", "ledger": "L EH1 JH ER0",
        "bank": "B AE1 NG K", "dollar": "D AA1 L ER0",
        "salary": "S AE1 L ER0 IY0", "budget": "B AH1 JH AH0 T",
        "wallet": "W AA1 L AH0 T", "receipt": "R IH0 S IY1 T",
        "invoice": "IH1 N V OY2 S",
    },
    "music": {
        "music": "M Y UW1 Z IH0 K", "microphone": "M AY1 K R AH0 F OW2 N",
        "speaker": "S P IY1 K ER0", "melody": "M EH1 L AH0 D IY2",
        "chorus": "K AO1 R AH0 S", "tempo": "T EH1 M P OW0",
        "studio": "S T UW1 D IY0 OW2", "record": "R EH1 K ER0 D",
        "vinyl": "V AY1 N AH0 L", "lyric": "L IH1 R IH0 K",
        "anthem": "AE1 N TH AH0 M", "echo": "EH1 K OW0",
        "bass": "B EY1 S", "drum": "D R AH1 M",
        "signal": "S IH1 G N AH0 L", "volume": "V AA1 L Y UW0 M",
        "rhythm": "R IH1 DH AH0 M", "harmony": "HH AA1 R M AH0 N IY0",
        "stanza": "S T AE1 N Z AH0", "cadence": "K EY1 D AH0 N S",
    },
    "nightsky": {
        "moon": "M UW1 N", "midnight": "M IH1 D N AY2 T",
        "comet": "K AA1 M AH0 T", "orbit": "AO1 R B AH0 T",
        "galaxy": "G AE1 L AH0 K S IY0", "eclipse": "IH0 K L IH1 P S",
        "horizon": "HH ER0 AY1 Z AH0 N", "shadow": "SH AE1 D OW0",
        "planet": "P L AE1 N AH0 T", "thunder": "TH AH1 N D ER0",
        "lightning": "L AY1 T N IH0 NG", "winter": "W IH1 N T ER0",
        "summer": "S AH1 M ER0", "evening": "IY1 V N IH0 NG",
        "morning": "M AO1 R N IH0 NG", "meteor": "M IY1 T IY0 ER0",
        "twilight": "T W AY1 L AY2 T", "sunrise": "S AH1 N R AY2 Z",
        "sunset": "S AH1 N S EH2 T", "aurora": "ER0 AO1 R AH0",
    },
    "road": {
        "engine": "EH1 N JH AH0 N", "wheel": "W IY1 L",
        "highway": "HH AY1 W EY2", "mileage": "M AY1 L IH0 JH",
        "lane": "L EY1 N", "dashboard": "D AE1 SH B AO2 R D",
        "gasoline": "G AE1 S AH0 L IY2 N", "motor": "M OW1 T ER0",
        "journey": "JH ER1 N IY0", "compass": "K AH1 M P AH0 S",
        "map": "M AE1 P", "bridge": "B R IH1 JH",
        "border": "B AO1 R D ER0", "mile": "M AY1 L",
        "pedal": "P EH1 D AH0 L", "exit": "EH1 G Z IH0 T",
        "detour": "D IY1 T UH2 R", "freeway": "F R IY1 W EY2",
        "tire": "T AY1 ER0", "travel": "T R AE1 V AH0 L",
    },
    "water": {
        "ocean": "OW1 SH AH0 N", "current": "K ER1 AH0 N T",
        "harbor": "HH AA1 R B ER0", "anchor": "AE1 NG K ER0",
        "river": "R IH1 V ER0", "island": "AY1 L AH0 N D",
        "lagoon": "L AH0 G UW1 N", "sailor": "S EY1 L ER0",
        "vessel": "V EH1 S AH0 L", "salt": "S AO1 L T",
        "coral": "K AO1 R AH0 L", "pearl": "P ER1 L",
        "water": "W AO1 T ER0", "mist": "M IH1 S T",
        "fountain": "F AW1 N T AH0 N", "rapids": "R AE1 P IH0 D Z",
        "delta": "D EH1 L T AH0", "marina": "M ER0 IY1 N AH0",
        "lighthouse": "L AY1 T HH AW2 S", "wake": "W EY1 K",
    },
    "fire": {
        "ember": "EH1 M B ER0", "blaze": "B L EY1 Z",
        "furnace": "F ER1 N AH0 S", "ash": "AE1 SH",
        "candle": "K AE1 N D AH0 L", "torch": "T AO1 R CH",
        "lantern": "L AE1 N T ER0 N", "inferno": "IH0 N F ER1 N OW0",
        "phoenix": "F IY1 N IH0 K S", "bonfire": "B AA1 N F AY2 ER0",
        "burn": "B ER1 N", "flare": "F L EH1 R",
        "kindling": "K IH1 N D L IH0 NG", "volcano": "V AA0 L K EY1 N OW0",
        "lava": "L AA1 V AH0", "oven": "AH1 V AH0 N",
        "chimney": "CH IH1 M N IY0", "matchstick": "M AE1 CH S T IH2 K",
        "sizzle": "S IH1 Z AH0 L", "furnaces": "F ER1 N AH0 S IH0 Z",
    },
    "mind": {
        "memory": "M EH1 M ER0 IY0", "lesson": "L EH1 S AH0 N",
        "wisdom": "W IH1 Z D AH0 M", "question": "K W EH1 S CH AH0 N",
        "answer": "AE1 N S ER0", "reason": "R IY1 Z AH0 N",
        "pattern": "P AE1 T ER0 N", "theory": "TH IY1 R IY0",
        "logic": "L AA1 JH IH0 K", "puzzle": "P AH1 Z AH0 L",
        "riddle": "R IH1 D AH0 L", "notion": "N OW1 SH AH0 N",
        "spirit": "S P IH1 R AH0 T", "focus": "F OW1 K AH0 S",
        "balance": "B AE1 L AH0 N S", "secret": "S IY1 K R AH0 T",
        "knowledge": "N AA1 L AH0 JH", "instinct": "IH1 N S T IH0 NG K T",
        "idea": "AY0 D IY1 AH0", "temple": "T EH1 M P AH0 L",
    },
}

VERBS: dict[str, str] = {
    "chase": "CH EY1 S", "build": "B IH1 L D", "break": "B R EY1 K",
    "ride": "R AY1 D", "roll": "R OW1 L", "write": "R AY1 T",
    "speak": "S P IY1 K", "sing": "S IH1 NG", "hold": "HH OW1 L D",
    "keep": "K IY1 P", "make": "M EY1 K", "take": "T EY1 K",
    "bring": "B R IH1 NG", "know": "N OW1", "see": "S IY1",
    "feel": "F IY1 L", "run": "R AH1 N", "move": "M UW1 V",
    "find": "F AY1 N D", "follow": "F AA1 L OW0", "carry": "K AE1 R IY0",
    "watch": "W AA1 CH", "catch": "K AE1 CH", "throw": "TH R OW1",
    "count": "K AW1 N T", "paint": "P EY1 N T", "craft": "K R AE1 F T",
    "gather": "G AE1 DH ER0", "scatter": "S K AE1 T ER0",
    "push": "P UH1 SH", "pull": "P UH1 L", "climb": "K L AY1 M",
    "shout": "SH AW1 T", "whisper": "W IH1 S P ER0",
    "measure": "M EH1 ZH ER0", "search": "S ER1 CH",
    "trust": "T R AH1 S T", "raise": "R EY1 Z", "chart": "CH AA1 R T",
    "spin": "S P IH1 N",
}

FUNCTION_WORDS: dict[str, str] = {
    "i": "AY1", "you": "Y UW1", "we": "W IY1", "they": "DH EY1",
    "she": "SH IY1", "he": "HH IY1", "it": "IH1 T",
    "my": "M AY1", "your": "Y AO1 R", "our": "AW1 R",
    "their": "DH EH1 R", "her": "HH ER1", "his": "HH IH1 Z",
    "the": "DH AH0", "a": "AH0", "an": "AE1 N",
    "in": "IH1 N", "on": "AA1 N", "at": "AE1 T", "to": "T UW1",
    "of": "AH1 V", "from": "F R AH1 M", "with": "W IH1 DH",
    "for": "F AO1 R", "and": "AE1 N D", "but": "B AH1 T",
    "or": "AO1 R", "so": "S OW1", "like": "L AY1 K",
    "through": "TH R UW1", "over": "OW1 V ER0", "under": "AH1 N D ER0",
    "up": "AH1 P", "down": "D AW1 N", "out": "AW1 T", "off": "AO1 F",
    "past": "P AE1 S T", "across": "AH0 K R AO1 S",
    "around": "ER0 AW1 N D", "against": "AH0 G EH1 N S T",
    "behind": "B IH0 HH AY1 N D", "beyond": "B IY0 AA1 N D",
    "inside": "IH2 N S AY1 D", "outside": "AW1 T S AY2 D",
    "into": "IH1 N T UW0", "toward": "T AH0 W AO1 R D",
    "got": "G AA1 T", "get": "G EH1 T", "let": "L EH1 T",
    "put": "P UH1 T", "stand": "S T AE1 N D", "stay": "S T EY1",
    "go": "G OW1", "come": "K AH1 M",
    "is": "IH1 Z", "was": "W AA1 Z", "are": "AA1 R", "were": "W ER1",
    "be": "B IY1", "been": "B IH1 N", "am": "AE1 M",
    "do": "D UW1", "does": "D AH1 Z", "did": "D IH1 D",
    "will": "W IH1 L", "can": "K AE1 N", "could": "K UH1 D",
    "would": "W UH1 D", "should": "SH UH1 D",
    "not": "N AA1 T", "no": "N OW1", "never": "N EH1 V ER0",
    "always": "AO1 L W EY2 Z", "every": "EH1 V R IY0",
    "all": "AO1 L", "some": "S AH1 M", "more": "M AO1 R",
    "most": "M OW1 S T", "just": "JH AH1 S T", "only": "OW1 N L IH0",
    "still": "S T IH1 L", "even": "IY1 V AH0 N", "back": "B AE1 K",
    "away": "AH0 W EY1", "again": "AH0 G EH1 N",
    "about": "AH0 B AW1 T", "when": "W EH1 N", "where": "W EH1 R",
    "what": "W AH1 T", "who": "HH UW1", "how": "HH AW1", "why": "W AY1",
    "then": "DH EH1 N", "than": "DH AE1 N", "here": "HH IY1 R",
    "there": "DH EH1 R", "this": "DH IH1 S", "that": "DH AE1 T",
    "these": "DH IY1 Z", "those": "DH OW1 Z", "them": "DH EH1 M",
    "him": "HH IH1 M", "us": "AH1 S", "me": "M IY1",
    "one": "W AH1 N", "two": "T UW1", "three": "TH R IY1",
    "new": "N UW1", "own": "OW1 N", "till": "T IH1 L",
    "because": "B IH0 K AO1 Z", "before": "B IH0 F AO1 R",
    "after": "AE1 F T ER0", "tonight": "T AH0 N AY1 T",
    "today": "T AH0 D EY1", "forever": "F ER0 EH1 V ER0",
    "together": "T AH0 G EH1 DH ER0", "another": "AH0 N AH1 DH ER0",
    "brother": "B R AH1 DH ER0", "sister": "S IH1 S T ER0",
    "people": "P IY1 P AH0 L", "nothing": "N AH1 TH IH0 NG",
    "something": "S AH1 M TH IH0 NG", "everything": "EH1 V R IY0 TH IH2 NG",
    "yeah": "Y AE1", "now": "N AW1",
    "don't": "D OW1 N T", "can't": "K AE1 N T", "it's": "IH1 T S",
    "i'm": "AY1 M", "we're": "W IY1 R", "you're": "Y UH1 R",
    "ain't": "EY1 N T", "won't": "W OW1 N T", "let's": "L EH1 T S",
    "i'll": "AY1 L", "she's": "SH IY1 Z", "he's": "HH IY1 Z",
    "they're": "DH EH1 R", "'cause": "K AH0 Z",
}

# Words needed by documented examples and tests but not used in templates.
# The multisyllabic-rhyme demo words carry the lax final vowel the
# American-English synthesizer emits for -y endings, which is what makes
# the nine-vowel span line up.
EXTRA_WORDS: dict[str, str] = {
    "pay": "P EY1", "crazy": "K R EY1 Z IY0", "baby": "B EY1 B IY0",
    "slang": "S L AE1 NG", "sang": "S AE1 NG", "gang": "G AE1 NG",
    "zero": "Z IY1 R OW0", "four": "F AO1 R", "five": "F AY1 V",
    "six": "S IH1 K S", "seven": "S EH1 V AH0 N", "eight": "EY1 T",
    "nine": "N AY1 N", "ten": "T EH1 N",
    "intro": "IH1 N T R OW0", "test": "T EH1 S T",
    "check": "CH EH1 K", "track": "T R AE1 K", "mic": "M AY1 K",
    "drink": "D R IH1 NG K", "drown": "D R AW1 N",
    "iniquity": "IH0 N IH1 K W IH0 T IH0", "smile": "S M AY1 L",
    "style": "S T AY1 L", "grin": "G R IH1 N",
    "strictly": "S T R IH1 K T L IH0",
}


def build_lexicon() -> dict[str, str]:
    lex: dict[str, str] = {}
    banks: list[dict[str, str]] = [FUNCTION_WORDS, VERBS, EXTRA_WORDS]
    banks.extend(PENULT_CLASSES.values())
    banks.extend(ENDER_CLASSES.values())
    banks.extend(TOPICS.values())
    for bank in banks:
        for word, pron in bank.items():
            if word in lex and lex[word] != pron:
                raise ValueError(f"conflicting pronunciation for {word!r}")
            lex[word] = pron
    return lex


# ---------------------------------------------------------------------------
# Song construction.
# ---------------------------------------------------------------------------

ARTISTS = [
    "MC Meridian", "Lady Lumen", "Young Axiom", "Sir Cipher",
    "Queen Quasar", "Kid Catalyst", "Big Tempo", "DJ Delta",
    "Ivory Echo", "Mister Mosaic", "Nova North", "Silver Syntax",
    "Madam Mirage", "Captain Current", "Doctor Drift", "Luna Ledger",
    "Prof Pinnacle", "Rico Rhythm", "Sky Sovereign", "Vera Verse",
]

SONGS_PER_ARTIST = 3
VERSES_PER_SONG = 6          # 6 verses x 16 lines = 96 lines per song
LINES_PER_VERSE = 16
COMBOS_PER_SONG = 10

OPENERS = ["and", "so", "but", "now", "then", "yeah", "still", "'cause"]
PRONOUNS = ["i", "we", "you", "they", "she", "he"]
POSSESSIVES = ["my", "our", "your", "their", "her", "his"]
PREPS = ["in", "on", "through", "over", "under", "past", "across",
         "around", "against", "behind", "beyond", "toward"]
DETS = ["the", "a", "this", "that", "my", "our", "your", "every", "some"]
AUXES = ["will", "can", "could", "would"]
ADVERBS = ["tonight", "today", "forever", "again", "outside", "inside"]

# Approximate character targets; each song sticks to one meter.
METERS = [34, 42, 50, 58]


# Two-word bridges that can sit between the body and the rhyme tail.
CONNECTORS = [("through", "the"), ("over", "the"), ("under", "the"),
              ("past", "the"), ("across", "the"), ("behind", "the"),
              ("beyond", "the"), ("toward", "the"), ("inside", "the"),
              ("against", "the"), ("around", "the"), ("like", "a"),
              ("in", "the"), ("on", "the")]


def line_body(rng: random.Random, template_id: int, topic_words: list[str],
              carry_word: str | None) -> tuple[list[str], str]:
    """The part of a line before the rhyme tail. Returns (words, topic)."""
    topic = carry_word if carry_word is not None else rng.choice(topic_words)
    pron = rng.choice(PRONOUNS)
    verb = rng.choice(list(VERBS))
    if template_id == 0:
        words = [pron, verb, "the", topic]
    elif template_id == 1:
        words = [pron, verb, rng.choice(POSSESSIVES), topic]
    elif template_id == 2:
        words = ["the", topic, "can", verb]
    elif template_id == 3:
        words = [pron, "got", rng.choice(DETS), topic]
    elif template_id == 4:
        words = [rng.choice(OPENERS), pron, verb, "the", topic]
    elif template_id == 5:
        words = [pron, rng.choice(AUXES), verb, "the", topic]
    elif template_id == 6:
        words = [rng.choice(ADVERBS), pron, verb, "the", topic]
    else:
        pron2 = rng.choice([p for p in PRONOUNS if p != pron])
        words = [pron, "and", pron2, verb, "the", topic]
    return words, topic


def line_words(rng: random.Random, template_id: int, topic_words: list[str],
               penult: str, ender: str, echo: str | None,
               carry_word: str | None,
               connector: tuple[str, str] | None) -> tuple[list[str], str]:
    """Fill one line. The last two words are always penult + ender; a
    fixed connector deepens the shared tail of a rhyme pair, otherwise
    a random one is drawn. Returns (words, topic_word_used)."""
    words, topic = line_body(rng, template_id, topic_words, carry_word)
    if echo is not None:
        # Internal rhyme: drop the echo word in front of the topic word.
        idx = words.index(topic)
        words = words[:idx] + [echo] + words[idx:]
    bridge = connector if connector is not None else rng.choice(CONNECTORS)
    return words + list(bridge) + [penult, ender], topic


def render(words: list[str]) -> str:
    text = " ".join(words)
    return text[0].upper() + text[1:]


def make_line(rng: random.Random, topic_words: list[str],
              combo: tuple[str, str], meter: int,
              prev_topic: str | None, used_enders: set[str],
              lexicon: dict[str, str],
              connector: tuple[str, str] | None = None) -> tuple[str, str]:
    """Build one line for a rhyme combo, aiming near the meter target.

    Returns (text, topic_word_used).
    """
    p_class, e_class = combo
    penult_pool = list(PENULT_CLASSES[p_class])
    ender_pool = [w for w in ENDER_CLASSES[e_class] if w not in used_enders]
    if not ender_pool:
        ender_pool = list(ENDER_CLASSES[e_class])
    carry = prev_topic if prev_topic is not None and rng.random() < 0.12 else None
    echo_pool = penult_pool + list(ENDER_CLASSES[e_class])

    best: tuple[int, list[str], str] | None = None
    for _ in range(8):
        penult = rng.choice(penult_pool)
        ender = rng.choice(ender_pool)
        echo = rng.choice(echo_pool) if rng.random() < 0.20 else None
        if echo in (penult, ender):
            echo = None
        template_id = rng.randrange(8)
        words, topic_used = line_words(rng, template_id, topic_words, penult,
                                       ender, echo, carry, connector)
        for w in words:
            assert w in lexicon, f"word {w!r} missing from lexicon"
        text = render(words)
        gap = abs(len(text) - meter)
        if best is None or gap < best[0]:
            best = (gap, words, topic_used)
        if best[0] <= 3:
            break
    _, words, topic_used = best
    used_enders.add(words[-1])
    return render(words), topic_used


# Ender classes large enough to fill an 8-line same-rhyme run.
BIG_E = {e for e, words in ENDER_CLASSES.items() if len(words) >= 8}

# Vowel units contributed by each class (diphthongs count two).
_P_UNITS = {"ay": 2, "ow": 2, "iy": 1, "ey": 2, "aa": 1, "er": 1, "aw": 2,
            "eh": 1, "ah": 1, "ao": 1, "ih": 1, "ae": 1, "en": 3, "ing": 2}
_E_UNITS = {"ey": 2, "ay": 2, "ow": 2, "iy": 1, "aa": 1, "aw": 2, "ao": 1,
            "er": 1, "ity": 2, "oney": 2, "ory": 2, "edy": 2, "ation": 3,
            "ision": 2, "otion": 3}


def combo_depth(combo: tuple[str, str]) -> int:
    return _P_UNITS[combo[0]] + _E_UNITS[combo[1]]


# Same-rhyme runs and couplets draw from this wide pool of deep combos
# (each ends up rare corpus-wide). Alternating blocks interleave two
# heavily reused combos whose enders share only the final vowel ("i"),
# so neighbours half-rhyme while the two-back line rhymes in full.
ALT_E_CLASSES = ("ity", "oney", "ory", "edy")


def run_pool() -> list[tuple[str, str]]:
    return [(p, e) for p in PENULT_CLASSES for e in ENDER_CLASSES
            if combo_depth((p, e)) >= 3 and len(ENDER_CLASSES[e]) >= 6
            and e not in ALT_E_CLASSES]


def alt_pool() -> list[tuple[str, str]]:
    return [(p, e) for p in PENULT_CLASSES for e in ALT_E_CLASSES
            if _P_UNITS[p] == 1]


def _verse_blocks(rng: random.Random) -> list[tuple[str, int]]:
    """Rhyme-run structure of one 16-line verse.

    Long same-rhyme runs dominate (the end rhyme is held for several
    consecutive lines); alternating runs mix in abab-style schemes.
    """
    blocks: list[tuple[str, int]] = []
    remaining = LINES_PER_VERSE
    while remaining > 0:
        if remaining >= 8:
            kind = rng.choices(
                [("mono", 4), ("mono", 8), ("alt", 8), ("aabb", 4)],
                weights=[0.20, 0.25, 0.45, 0.10])[0]
        else:
            kind = rng.choices([("mono", 4), ("aabb", 4)],
                               weights=[0.60, 0.40])[0]
        blocks.append(kind)
        remaining -= kind[1]
    return blocks


def make_song(rng: random.Random, runs: list[tuple[str, str]],
              alts: list[tuple[str, str]], topic: str, meter: int,
              lexicon: dict[str, str],
              tails: dict[tuple[str, str], list[tuple[str, str]]]
              ) -> list[str]:
    """Runs and couplets hold a deep shared tail (connector + penult +
    ender classes); alternating blocks rhyme on shallow two-unit tails
    with free connectors."""
    topic_words = list(TOPICS[topic])
    big_runs = [c for c in runs if c[1] in BIG_E]
    lines: list[str] = []
    prev_topic: str | None = None
    prev_combo: tuple[str, str] | None = None

    def tail_of(combo):
        return rng.choice(tails[combo])

    for _ in range(VERSES_PER_SONG):
        for kind, length in _verse_blocks(rng):
            if kind == "mono":
                pool = big_runs if length == 8 else runs
                if length == 8 and not big_runs:
                    length, pool = 4, runs
                if (prev_combo is not None and prev_combo in pool
                        and rng.random() < 0.25):
                    combo = prev_combo  # continue the previous run
                else:
                    combo = rng.choice(pool)
                scheme = [(combo, tail_of(combo))] * length
            elif kind == "alt":
                combo_a = rng.choice(alts)
                others = [c for c in alts if c[1] != combo_a[1]]
                combo_b = rng.choice(others or
                                     [c for c in alts if c != combo_a]
                                     or [combo_a])
                scheme = [(combo_a, None), (combo_b, None)] * (length // 2)
            else:  # aabb
                combo_a = rng.choice(runs)
                combo_b = rng.choice([c for c in runs if c != combo_a]
                                     or [combo_a])
                scheme = [(combo_a, tail_of(combo_a))] * 2 \
                    + [(combo_b, tail_of(combo_b))] * 2
            used: set[str] = set()
            for combo, connector in scheme:
                text, prev_topic = make_line(
                    rng, topic_words, combo, meter, prev_topic, used,
                    lexicon, connector)
                lines.append(text)
            prev_combo = scheme[-1][0]
    return lines


def song_title(rng: random.Random, combos: list[tuple[str, str]],
               taken: set[str]) -> str:
    for _ in range(50):
        p_class, e_class = rng.choice(combos)
        penult = rng.choice(list(PENULT_CLASSES[p_class]))
        ender = rng.choice(list(ENDER_CLASSES[e_class]))
        title = f"{penult.title()} {ender.title()}"
        if title not in taken:
            taken.add(title)
            return title
    raise RuntimeError("could not find a fresh title")


def main() -> None:
    rng = random.Random(SEED)
    lexicon = build_lexicon()

    run_all = run_pool()
    run_big = [c for c in run_all if c[1] in BIG_E]
    run_rest = [c for c in run_all if c[1] not in BIG_E]
    alt_all = alt_pool()
    for pool in (run_big, run_rest, alt_all):
        rng.shuffle(pool)
    # Each run combo gets two preferred connectors, shared corpus-wide,
    # so different songs carry full-depth matches of the same tail.
    tails = {c: rng.sample(CONNECTORS, 2) for c in sorted(run_all)}

    def deal(pool: list, cursor: int, n: int) -> tuple[list, int]:
        picked = [pool[(cursor + j) % len(pool)] for j in range(n)]
        return picked, (cursor + n) % len(pool)

    topics = list(TOPICS)
    taken_titles: set[str] = set()
    records: list[dict] = []
    cur_big = cur_rest = cur_alt = 0
    n_songs = len(ARTISTS) * SONGS_PER_ARTIST
    for song_idx in range(n_songs):
        artist = ARTISTS[song_idx % len(ARTISTS)]
        # Deal rhyme combos round-robin per pool so every combo lands in
        # a few songs; cross-song sharing is what generation rhymes on.
        p1, cur_big = deal(run_big, cur_big, 4)
        p2, cur_rest = deal(run_rest, cur_rest, 3)
        p3, cur_alt = deal(alt_all, cur_alt, 3)
        runs = p1 + p2
        topic = topics[song_idx % len(topics)]
        meter = METERS[song_idx % len(METERS)]
        lines = make_song(rng, runs, p3, topic, meter, lexicon, tails)
        records.append({
            "artist": artist,
            "title": song_title(rng, runs, taken_titles),
            "lines": lines,
        })

    # Two extra records exercising the normalization rules: a spoken intro
    # track (dropped by title) and a song with a repeated chorus (deduped).
    records.append({
        "artist": ARTISTS[0],
        "title": "Intro",
        "lines": ["Yeah yeah check the mic", "One two one two",
                  "Let's go", "You know how we do"],
    })
    chorus = ["We keep the music in the cold night",
              "They chase the rhythm through the gold light",
              "I hold my pattern like a bright flame",
              "You know the system and the white rain"]
    verse_rng = random.Random(SEED + 1)
    filler_runs = [("ow", "ay"), ("ay", "ey"), ("iy", "ow"),
                   ("ey", "iy"), ("ih", "ay"), ("aw", "ow")]
    filler = make_song(verse_rng, filler_runs,
                       [("eh", "ity"), ("ao", "oney"), ("aa", "ory")],
                       "music", 42, lexicon,
                       {c: tails.get(c, CONNECTORS[:2]) for c in filler_runs})[:24]
    records.append({
        "artist": ARTISTS[1],
        "title": "Chorus Carousel",
        "lines": chorus + filler[:8] + chorus + filler[8:16] + chorus
        + filler[16:24],
    })

    DATA_DIR.mkdir(parents=True, exist_ok=True)
    corpus_path = DATA_DIR / "sample_corpus.jsonl"
    with corpus_path.open("w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")

    lex_path = DATA_DIR / "lexicon.txt"
    with lex_path.open("w", encoding="utf-8") as fh:
        for word in sorted(lexicon):
            fh.write(f"{word}\t{lexicon[word]}\n")

    n_lines = sum(len(r["lines"]) for r in records)
    print(f"wrote {corpus_path} ({len(records)} songs, {n_lines} lines)")
    print(f"wrote {lex_path} ({len(lexicon)} entries)")


if __name__ == "__main__":
    main()
