"""Suffix-heuristic part-of-speech tagging with an annotation override path.

Only the adjective/adverb distinction matters downstream (the word table and
lexicon-expansion filters), so the tagger is deliberately small: closed-class
words are never tagged, "-ly" marks adverbs, and a fixed set of derivational
suffixes marks adjectives. A per-corpus annotation mapping takes precedence
over the heuristics so mistags can be corrected without code changes.
"""

from __future__ import annotations

from typing import Mapping, Optional

ADJECTIVE = "adjective"
ADVERB = "adverb"

_ADJ_SUFFIXES = ("ous", "ful", "ive", "able", "ible", "ic", "al", "ish", "less")

_CLOSED_CLASS = frozenset(
    """
    the a an and or but if of in on at to for with by from as so not no nor
    is are was were be been being am do does did has have had will would can
    could may might must shall should he she it they we you i me him her them
    us this that these those there here who whom whose which what when where
    why how only any all each every some most both few many much several such
    own same very too also just than then once while because until about
    against
    """.split()
)

# Common "-ly" nouns/verbs the adverb rule would otherwise catch.
_NON_ADVERB_LY = frozenset(
    "family belly jelly rally tally supply apply reply assembly monopoly ally".split()
)


def heuristic_pos(word: str) -> Optional[str]:
    w = word.lower()
    if not w.isalpha() or w in _CLOSED_CLASS:
        return None
    if len(w) > 3 and w.endswith("ly") and w not in _NON_ADVERB_LY:
        return ADVERB
    if len(w) > 4 and w.endswith(_ADJ_SUFFIXES):
        return ADJECTIVE
    return None


def tag_word(word: str, annotations: Optional[Mapping[str, str]] = None) -> Optional[str]:
    """Annotation override first, heuristics second."""
    if annotations:
        override = annotations.get(word.lower())
        if override:
            return override
    return heuristic_pos(word)
