"""Corpus handling, statistics, and the scorer/classifier comparison study."""

from ..corpus import (
    BIASED,
    LABEL_BIASED,
    LABEL_LEGITIMATE,
    LABELS,
    LEGITIMATE,
    Corpus,
    Document,
    ingest_corpus,
    label_index,
    normalize_label,
    split_corpus,
)
from .postag import ADJECTIVE, ADVERB, heuristic_pos, tag_word
from .stats import (
    ClassificationMetrics,
    CorrelationReport,
    LetterValueSummary,
    classification_metrics,
    letter_values,
    pearson,
)
from .synth import (
    LEGIT_TOKENS,
    LEXICON_BIAS_TOKENS,
    NEUTRAL_VOCAB,
    NOVEL_BIAS_TOKENS,
    SyntheticSpec,
    generate_synthetic_corpus,
    manifest_json,
)

# The study module depends on the classifier package, which itself uses the
# corpus/stats helpers above; import it lazily to keep the package acyclic.
_STUDY_EXPORTS = (
    "EvaluationReport",
    "StudyReport",
    "WordScoreRow",
    "candidates_to_tsv",
    "corpus_bias_scores",
    "evaluate",
    "expansion_candidates",
    "vagueness_bias_study",
    "word_cam_table",
    "word_table_text",
)


def __getattr__(name):
    if name in _STUDY_EXPORTS:
        from . import study

        value = getattr(study, name)
        globals()[name] = value
        return value
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    "ADJECTIVE",
    "ADVERB",
    "BIASED",
    "ClassificationMetrics",
    "CorrelationReport",
    "Corpus",
    "Document",
    "LABELS",
    "LABEL_BIASED",
    "LABEL_LEGITIMATE",
    "LEGITIMATE",
    "LEGIT_TOKENS",
    "LEXICON_BIAS_TOKENS",
    "LetterValueSummary",
    "NEUTRAL_VOCAB",
    "NOVEL_BIAS_TOKENS",
    "SyntheticSpec",
    "classification_metrics",
    "generate_synthetic_corpus",
    "heuristic_pos",
    "ingest_corpus",
    "label_index",
    "letter_values",
    "manifest_json",
    "normalize_label",
    "pearson",
    "split_corpus",
    "tag_word",
    *_STUDY_EXPORTS,
]
