"""Vagueness/subjectivity scoring and explainable bias classification."""

from .errors import (
    CheckpointError,
    CorpusError,
    DegenerateVariance,
    EmptySentence,
    EmptyText,
    InsufficientText,
    LexiconFormatError,
    VagoError,
    VectorFormatError,
)
from .lexicon import (
    Language,
    Lexicon,
    LexiconEntry,
    VaguenessCategory,
    load_builtin_lexicon,
    load_lexicon,
    load_lexicon_file,
)
from .scoring import (
    SentenceAnalysis,
    TextReport,
    TriggerMatch,
    barometer_summary,
    report_to_dict,
    score_sentence,
    score_text,
)
from .textproc import Sentence, Token, detect_language, split_sentences, tokenize

__version__ = "0.1.0"

__all__ = [
    "CheckpointError",
    "CorpusError",
    "DegenerateVariance",
    "EmptySentence",
    "EmptyText",
    "InsufficientText",
    "Language",
    "Lexicon",
    "LexiconEntry",
    "LexiconFormatError",
    "Sentence",
    "SentenceAnalysis",
    "TextReport",
    "Token",
    "TriggerMatch",
    "VagoError",
    "VaguenessCategory",
    "VectorFormatError",
    "barometer_summary",
    "detect_language",
    "load_builtin_lexicon",
    "load_lexicon",
    "load_lexicon_file",
    "report_to_dict",
    "score_sentence",
    "score_text",
    "split_sentences",
    "tokenize",
    "__version__",
]
