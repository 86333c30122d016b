"""Four-class label policy over IEMOCAP's 11 raw labels.

Class codes are alphabetical (angry 0, happy 1, neutral 2, sad 3), matching
the engine's canonical order.  The low-frequency excited label folds into
happy; everything else outside the four classes is excluded.
"""

from __future__ import annotations

__all__ = ["CLASS_WORDS", "IEMOCAP_LABEL_TABLE", "map_label"]

CLASS_WORDS = ("angry", "happy", "neutral", "sad")

ANGRY, HAPPY, NEUTRAL, SAD = range(4)

# Both the corpus' three-letter codes and the spelled-out words.
IEMOCAP_LABEL_TABLE = {
    "ang": ANGRY,
    "anger": ANGRY,
    "angry": ANGRY,
    "hap": HAPPY,
    "happiness": HAPPY,
    "happy": HAPPY,
    "exc": HAPPY,
    "excited": HAPPY,
    "neu": NEUTRAL,
    "neutral": NEUTRAL,
    "sad": SAD,
    "sadness": SAD,
}


def map_label(raw_label: str) -> int | None:
    """Class code for a raw label word/code, or None when excluded."""
    return IEMOCAP_LABEL_TABLE.get(raw_label.strip().lower())
