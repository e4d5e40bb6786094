"""Sentence- and text-level vagueness/subjectivity scoring.

Scores are exact rationals: a sentence's vagueness is the ratio of vague-term
occurrences to its word count, its subjectivity the same ratio restricted to
degree/combinatorial triggers. At text level both become the proportion of
sentences whose sentence-level score is nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import EmptySentence, EmptyText
from .lexicon import Language, Lexicon, VaguenessCategory
from .textproc import Sentence, detect_language, require_sentences


@dataclass(frozen=True)
class TriggerMatch:
    surface: str  # matched text, lowercased, tokens joined by spaces
    category: VaguenessCategory
    token_span: tuple[int, int]  # (start index in sentence tokens, length)
    sentence_idx: int
    char_span: tuple[int, int]  # codepoint offsets into the source text


@dataclass(frozen=True)
class SentenceAnalysis:
    sentence: Sentence
    n_words: int
    category_counts: dict[VaguenessCategory, int]
    r_vague: Fraction
    r_subjective: Fraction
    triggers: tuple[TriggerMatch, ...]


@dataclass(frozen=True)
class TextReport:
    language: Language
    sentence_analyses: tuple[SentenceAnalysis, ...]
    r_vague_text: Fraction
    r_subjective_text: Fraction
    source_text: str = field(repr=False, default="")

    @property
    def n_sentences(self) -> int:
        return len(self.sentence_analyses)

    @property
    def triggers(self) -> list[TriggerMatch]:
        return [t for sa in self.sentence_analyses for t in sa.triggers]


def score_sentence(
    sentence: Sentence,
    lexicon: Lexicon,
    sentence_idx: int = 0,
    count_punctuation: bool = False,
    count_repeats: bool = True,
) -> SentenceAnalysis:
    """Score one sentence against the lexicon.

    Triggers are found by a left-to-right longest-match scan; tokens consumed
    by a multi-word match are not re-matched. ``count_punctuation`` switches
    the word-total denominator to include punctuation tokens;
    ``count_repeats=False`` counts each distinct trigger surface once.
    """
    n_words = sum(
        1 for t in sentence.tokens if (count_punctuation or t.is_countable)
    )
    if sum(1 for t in sentence.tokens if t.is_countable) == 0:
        raise EmptySentence("sentence has no word tokens")

    surfaces = sentence.surfaces
    triggers: list[TriggerMatch] = []
    seen_surfaces: set[str] = set()
    counts = {cat: 0 for cat in VaguenessCategory}
    i = 0
    while i < len(surfaces):
        hit = lexicon.lookup_longest(surfaces, i)
        if hit is None:
            i += 1
            continue
        entry, length = hit
        match = TriggerMatch(
            surface=entry.surface_text,
            category=entry.category,
            token_span=(i, length),
            sentence_idx=sentence_idx,
            char_span=(
                sentence.tokens[i].char_span[0],
                sentence.tokens[i + length - 1].char_span[1],
            ),
        )
        if count_repeats or entry.surface_text not in seen_surfaces:
            triggers.append(match)
            counts[entry.category] += 1
            seen_surfaces.add(entry.surface_text)
        i += length

    n_vague = sum(counts.values())
    n_subjective = sum(n for cat, n in counts.items() if cat.subjective)
    return SentenceAnalysis(
        sentence=sentence,
        n_words=n_words,
        category_counts=counts,
        r_vague=Fraction(n_vague, n_words),
        r_subjective=Fraction(n_subjective, n_words),
        triggers=tuple(triggers),
    )


def score_text(
    text: str,
    lexicon: Lexicon,
    count_punctuation: bool = False,
    count_repeats: bool = True,
) -> TextReport:
    """Score a whole text: per-sentence analyses plus the text-level ratios.

    Sentence fragments without any word token (stray punctuation) are not
    counted toward the sentence total.
    """
    analyses = []
    for sentence in require_sentences(text):
        if not any(t.is_countable for t in sentence.tokens):
            continue
        analyses.append(
            score_sentence(
                sentence,
                lexicon,
                sentence_idx=len(analyses),
                count_punctuation=count_punctuation,
                count_repeats=count_repeats,
            )
        )
    if not analyses:
        raise EmptyText("text contains only punctuation")
    n = len(analyses)
    n_vague = sum(1 for sa in analyses if sa.r_vague > 0)
    n_subjective = sum(1 for sa in analyses if sa.r_subjective > 0)
    return TextReport(
        language=lexicon.language,
        sentence_analyses=tuple(analyses),
        r_vague_text=Fraction(n_vague, n),
        r_subjective_text=Fraction(n_subjective, n),
        source_text=text,
    )


def score_text_autodetect(
    text: str, lexicons: dict[Language, Lexicon], language: Optional[Language] = None
) -> TextReport:
    """Score with an explicit language, or detect it from the text."""
    if language is None:
        language, _ = detect_language(text)
    return score_text(text, lexicons[language])


def round_half_up_percent(ratio: Fraction) -> int:
    """Round 100*ratio to the nearest integer, halves away from zero."""
    scaled = 100 * Fraction(ratio)
    floor = scaled.numerator // scaled.denominator
    remainder = Fraction(scaled - floor)
    return int(floor + 1) if remainder >= Fraction(1, 2) else int(floor)


def barometer_summary(report: TextReport) -> tuple[int, int]:
    """The two 0..100 gauges: overall vagueness and opinion (subjectivity)."""
    return (
        round_half_up_percent(report.r_vague_text),
        round_half_up_percent(report.r_subjective_text),
    )


def _fraction_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator, "value": float(x)}


def report_to_dict(report: TextReport) -> dict:
    """The documented report JSON schema."""
    sentences = []
    for sa in report.sentence_analyses:
        start, end = sa.sentence.source_span
        sentences.append(
            {
                "text_span": [start, end],
                "text": report.source_text[start:end] if report.source_text else None,
                "n_words": sa.n_words,
                "triggers": [
                    {
                        "surface": t.surface,
                        "category": t.category.value,
                        "span": [t.token_span[0], t.token_span[1]],
                        "char_span": [t.char_span[0], t.char_span[1]],
                    }
                    for t in sa.triggers
                ],
                "r_vague": _fraction_json(sa.r_vague),
                "r_subjective": _fraction_json(sa.r_subjective),
            }
        )
    return {
        "language": report.language.value,
        "n_sentences": report.n_sentences,
        "r_vague": _fraction_json(report.r_vague_text),
        "r_subjective": _fraction_json(report.r_subjective_text),
        "sentences": sentences,
    }
