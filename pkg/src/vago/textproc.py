"""Sentence segmentation, tokenization, and EN/FR language identification.

All functions are pure; the language profiles are built once from the bundled
sample texts and cached.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

from .errors import EmptyText, InsufficientText
from .lexicon import Language

TokenKind = Literal["word", "punctuation", "number"]

# Numbers first so "2pm", "3.14", "1,000" and "10:30" stay single tokens;
# words keep internal hyphens and apostrophes ("state-of-the-art", "don't").
_TOKEN_RE = re.compile(
    r"\d+(?:[.,:]\d+)*(?:[^\W\d_]+)?"
    r"|[^\W\d_]+(?:[-'’][^\W\d_]+)*"
    r"|\S",
    re.UNICODE,
)

_NUMBER_START_RE = re.compile(r"\d")
_WORD_START_RE = re.compile(r"[^\W\d_]", re.UNICODE)


@dataclass(frozen=True)
class Token:
    surface: str
    kind: TokenKind
    char_span: tuple[int, int]  # codepoint offsets into the source text

    @property
    def is_countable(self) -> bool:
        """True for tokens that count toward a sentence's word total."""
        return self.kind != "punctuation"


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    source_span: tuple[int, int]

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("sentence must contain at least one token")

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(t.surface for t in self.tokens)


def _classify(surface: str) -> TokenKind:
    first = surface[0]
    if _NUMBER_START_RE.match(first):
        return "number"
    if _WORD_START_RE.match(first):
        return "word"
    return "punctuation"


def tokenize(text: str, base_offset: int = 0) -> list[Token]:
    """Split ``text`` into word, number, and punctuation tokens.

    Spans are offsets into the string the text was taken from;
    ``base_offset`` shifts them when ``text`` is a slice of a larger source.
    """
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        surface = m.group(0)
        tokens.append(
            Token(
                surface=surface,
                kind=_classify(surface),
                char_span=(base_offset + m.start(), base_offset + m.end()),
            )
        )
    return tokens


# Words after which a period does not end the sentence. Single letters
# (initials like "J.") are handled separately.
_ABBREVIATIONS = {
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "no", "vs", "cf",
    "etc", "e.g", "i.e", "fig", "eq", "al", "approx",
}

_BOUNDARY_RE = re.compile(r"[.!?]+")


def _is_abbreviation(text: str, punct_start: int) -> bool:
    prefix = text[:punct_start]
    m = re.search(r"([^\W\d_](?:[^\W\d_]*\.?)*)$", prefix, re.UNICODE)
    if not m:
        return False
    word = m.group(1).rstrip(".").lower()
    if not word:
        return False
    return word in _ABBREVIATIONS or len(word) == 1


def _sentence_spans(text: str) -> list[tuple[int, int]]:
    spans = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        end = m.end()
        if "." in m.group(0) and len(m.group(0)) == 1 and _is_abbreviation(text, m.start()):
            continue
        rest = text[end:]
        stripped = rest.lstrip()
        if stripped and not (stripped[0].isupper() or stripped[0].isdigit()):
            continue
        if stripped and rest[0] == rest.lstrip()[0]:
            # boundary punctuation must be followed by whitespace or EOT
            continue
        spans.append((start, end))
        start = end
    if text[start:].strip():
        spans.append((start, len(text)))
    return spans


def split_sentences(text: str) -> list[Sentence]:
    """Segment ``text`` into sentences with source-anchored tokens.

    Sentences end at ``.``, ``!`` or ``?`` followed by whitespace and an
    uppercase letter or digit (or end of text); common abbreviations and
    initials do not split. Fragments containing only punctuation are dropped.
    """
    sentences = []
    for raw_start, raw_end in _sentence_spans(text):
        chunk = text[raw_start:raw_end]
        lead = len(chunk) - len(chunk.lstrip())
        trail = len(chunk) - len(chunk.rstrip())
        start = raw_start + lead
        end = raw_end - trail
        if start >= end:
            continue
        tokens = tokenize(text[start:end], base_offset=start)
        if not tokens:
            continue
        sentences.append(Sentence(tokens=tuple(tokens), source_span=(start, end)))
    return sentences


MIN_DETECTION_CHARS = 20
PROFILE_SIZE = 300

_LETTER_RUN_RE = re.compile(r"[^\W\d_]+", re.UNICODE)


def trigram_profile(text: str, size: int = PROFILE_SIZE) -> list[str]:
    """Ranked character-trigram profile of ``text``.

    Words are lowercased and padded with spaces; trigrams are ranked by
    descending frequency with lexicographic tie-breaking so the profile is
    deterministic.
    """
    counts: dict[str, int] = {}
    for m in _LETTER_RUN_RE.finditer(text.lower()):
        padded = f" {m.group(0)} "
        for i in range(len(padded) - 2):
            tri = padded[i : i + 3]
            counts[tri] = counts.get(tri, 0) + 1
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [tri for tri, _ in ranked[:size]]


def _rank_distance(
    text_profile: list[str], lang_profile: list[str], keep: set[str]
) -> int:
    """Out-of-place measure; missing trigrams cost the profile size.

    Only trigrams in ``keep`` (those known to at least one language) are
    summed: trigrams foreign to every profile shift all distances by the same
    penalty and would only wash out the margin between languages.
    """
    lang_rank = {tri: i for i, tri in enumerate(lang_profile)}
    penalty = len(lang_profile)
    return sum(
        abs(i - lang_rank[tri]) if tri in lang_rank else penalty
        for i, tri in enumerate(text_profile)
        if tri in keep
    )


def _builtin_profiles() -> dict[Language, list[str]]:
    data_dir = Path(__file__).parent / "data"
    return {
        lang: trigram_profile(
            (data_dir / f"sample.{lang.value.lower()}.txt").read_text("utf-8")
        )
        for lang in Language
    }


_PROFILE_CACHE: dict[Language, list[str]] | None = None


def detect_language(text: str) -> tuple[Language, float]:
    """Identify the text's language by rank-order trigram comparison.

    Returns ``(language, confidence)`` where confidence is the normalized
    margin between the best and second-best profile distances.
    """
    if len(text) < MIN_DETECTION_CHARS:
        raise InsufficientText(
            f"need at least {MIN_DETECTION_CHARS} characters, got {len(text)}"
        )
    global _PROFILE_CACHE
    if _PROFILE_CACHE is None:
        _PROFILE_CACHE = _builtin_profiles()
    profile = trigram_profile(text)
    if not profile:
        raise InsufficientText("text contains no letters")
    known = set().union(*_PROFILE_CACHE.values())
    distances = sorted(
        (_rank_distance(profile, lang_profile, known), lang.value)
        for lang, lang_profile in _PROFILE_CACHE.items()
    )
    (best_d, best_tag), (second_d, _) = distances[0], distances[1]
    mean_d = (best_d + second_d) / 2.0
    confidence = 0.0 if mean_d == 0 else min(1.0, (second_d - best_d) / mean_d)
    return Language(best_tag), confidence


def require_sentences(text: str) -> list[Sentence]:
    sentences = split_sentences(text)
    if not sentences:
        raise EmptyText("text yields no sentences")
    return sentences
