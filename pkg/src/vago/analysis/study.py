"""Corpus-level evaluation and the scorer-vs-classifier comparison study.

The study replicates the two-variable design: the x variable is the
classifier's thresholded prediction (biased = 1), the y variable the
text-level vagueness (then subjectivity) ratio, correlated by Pearson's r.
Word-level analysis averages each token's biased-class activation over all
its occurrences and proposes high-scoring non-lexicon adjectives/adverbs as
lexicon-expansion candidates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

import numpy as np

from ..clf.model import ModelParams
from ..clf.training import batch_probabilities, predict
from ..embeddings import EmbeddingTable, embed_tokens
from ..errors import CorpusError
from ..lexicon import Lexicon, VaguenessCategory
from ..scoring import score_text
from ..textproc import tokenize
from ..corpus import BIASED, Corpus, label_index
from .stats import (
    ClassificationMetrics,
    CorrelationReport,
    LetterValueSummary,
    classification_metrics,
    letter_values,
    pearson,
)
from .postag import ADJECTIVE, ADVERB, tag_word

PREDICTION_THRESHOLD = 0.5


@dataclass(frozen=True)
class EvaluationReport:
    metrics: ClassificationMetrics
    per_source: dict[str, LetterValueSummary]  # bias-score distributions
    bias_scores: tuple[float, ...]

    def as_dict(self) -> dict:
        return {
            **self.metrics.as_dict(),
            "per_source": {k: v.as_dict() for k, v in sorted(self.per_source.items())},
        }


def corpus_bias_scores(
    params: ModelParams, corpus: Corpus, table: EmbeddingTable, batch_size: int = 32
) -> np.ndarray:
    inputs = []
    for doc in corpus:
        tokens = tokenize(doc.text)
        if not tokens:
            raise CorpusError(f"document {doc.id!r} has no tokens")
        inputs.append(embed_tokens(table, tokens))
    probs = batch_probabilities(params, inputs, batch_size)
    return probs[:, BIASED]


def evaluate(
    params: ModelParams, corpus: Corpus, table: EmbeddingTable
) -> EvaluationReport:
    """Classify every document and report F1/precision/recall/accuracy for
    the biased class plus per-source bias-score distributions."""
    if len(corpus) == 0:
        raise CorpusError("evaluation corpus is empty")
    labels = []
    for doc in corpus:
        if doc.label is None:
            raise CorpusError(f"document {doc.id!r} is unlabeled")
        labels.append(label_index(doc.label))
    scores = corpus_bias_scores(params, corpus, table)
    preds = (scores >= PREDICTION_THRESHOLD).astype(int)
    metrics = classification_metrics(labels, preds, positive=BIASED)
    per_source: dict[str, list[float]] = {}
    for doc, score in zip(corpus, scores):
        per_source.setdefault(doc.source, []).append(float(score))
    return EvaluationReport(
        metrics=metrics,
        per_source={src: letter_values(vals) for src, vals in per_source.items()},
        bias_scores=tuple(float(s) for s in scores),
    )


@dataclass(frozen=True)
class StudyReport:
    vague: CorrelationReport
    subjective: CorrelationReport
    vague_continuous: CorrelationReport
    subjective_continuous: CorrelationReport
    per_source_vague: dict[str, LetterValueSummary]
    per_source_subjective: dict[str, LetterValueSummary]

    def as_dict(self) -> dict:
        def corr(c: CorrelationReport) -> dict:
            return {"x": c.variable_x, "y": c.variable_y, "r": c.r, "n": c.n}

        return {
            "vague": corr(self.vague),
            "subjective": corr(self.subjective),
            "vague_continuous": corr(self.vague_continuous),
            "subjective_continuous": corr(self.subjective_continuous),
            "per_source_vague": {
                k: v.as_dict() for k, v in sorted(self.per_source_vague.items())
            },
            "per_source_subjective": {
                k: v.as_dict() for k, v in sorted(self.per_source_subjective.items())
            },
        }


def vagueness_bias_study(
    params: ModelParams, corpus: Corpus, lexicon: Lexicon, table: EmbeddingTable
) -> StudyReport:
    if len(corpus) == 0:
        raise CorpusError("study corpus is empty")
    scores = corpus_bias_scores(params, corpus, table)
    predicted = (scores >= PREDICTION_THRESHOLD).astype(float)
    vague_ratios, subjective_ratios = [], []
    per_source_v: dict[str, list[float]] = {}
    per_source_s: dict[str, list[float]] = {}
    for doc in corpus:
        report = score_text(doc.text, lexicon)
        v = float(report.r_vague_text)
        s = float(report.r_subjective_text)
        vague_ratios.append(v)
        subjective_ratios.append(s)
        per_source_v.setdefault(doc.source, []).append(v)
        per_source_s.setdefault(doc.source, []).append(s)
    return StudyReport(
        vague=pearson(predicted, vague_ratios, "predicted_biased", "r_vague_text"),
        subjective=pearson(
            predicted, subjective_ratios, "predicted_biased", "r_subjective_text"
        ),
        vague_continuous=pearson(scores, vague_ratios, "bias_score", "r_vague_text"),
        subjective_continuous=pearson(
            scores, subjective_ratios, "bias_score", "r_subjective_text"
        ),
        per_source_vague={s: letter_values(v) for s, v in per_source_v.items()},
        per_source_subjective={s: letter_values(v) for s, v in per_source_s.items()},
    )


@dataclass(frozen=True)
class WordScoreRow:
    word: str
    occurrences: int
    avg_cam: float
    vago_category: Optional[VaguenessCategory]
    pos: Optional[str]

    def as_dict(self) -> dict:
        return {
            "word": self.word,
            "occ": self.occurrences,
            "avg": self.avg_cam,
            "vago": self.vago_category.value if self.vago_category else None,
            "pos": self.pos,
        }


def word_cam_table(
    params: ModelParams,
    corpus: Corpus,
    lexicon: Lexicon,
    table: EmbeddingTable,
    min_occurrences: int = 10,
    pos_filter: Optional[Iterable[str]] = (ADJECTIVE, ADVERB),
    annotations: Optional[Mapping[str, str]] = None,
) -> list[WordScoreRow]:
    """Average biased-class activation per word, across all its occurrences.

    Every word/number token occurrence contributes its raw activation-map
    value at its position; rows aggregate by lowercased surface, then filter
    by occurrence count and (optionally) part of speech. Rows are sorted by
    descending average score.
    """
    if len(corpus) == 0:
        raise CorpusError("corpus is empty")
    totals: dict[str, float] = {}
    counts: dict[str, int] = {}
    for doc in corpus:
        _, cam, tokens = predict(params, doc.text, table)
        for token, value in zip(tokens, cam.scores):
            if token.kind == "punctuation":
                continue
            key = token.surface.lower()
            totals[key] = totals.get(key, 0.0) + float(value)
            counts[key] = counts.get(key, 0) + 1

    pos_allowed = set(pos_filter) if pos_filter is not None else None
    rows = []
    for word, count in counts.items():
        if count < min_occurrences:
            continue
        entry = lexicon.get(word)
        pos = (entry.part_of_speech if entry else None) or tag_word(word, annotations)
        if pos_allowed is not None and pos not in pos_allowed:
            continue
        rows.append(
            WordScoreRow(
                word=word,
                occurrences=count,
                avg_cam=totals[word] / count,
                vago_category=entry.category if entry else None,
                pos=pos,
            )
        )
    rows.sort(key=lambda r: (-r.avg_cam, r.word))
    return rows


def expansion_candidates(
    rows: list[WordScoreRow], top_n: int = 20
) -> list[WordScoreRow]:
    """Highest-scoring adjectives/adverbs not yet in the lexicon."""
    eligible = [
        r
        for r in rows
        if r.vago_category is None and r.pos in (ADJECTIVE, ADVERB)
    ]
    eligible.sort(key=lambda r: (-r.avg_cam, r.word))
    return eligible[:top_n]


def candidates_to_tsv(candidates: list[WordScoreRow]) -> str:
    """Loadable lexicon-format TSV proposing the candidates as V_C entries."""
    lines = ["#proposed lexicon-expansion candidates (review before merging)"]
    for row in candidates:
        lines.append(f"#proposed avg_cam={row.avg_cam:.4f} occ={row.occurrences}")
        entry = f"{row.word}\tVC"
        if row.pos:
            entry += f"\t{row.pos}"
        lines.append(entry)
    return "\n".join(lines) + "\n"


def word_table_text(rows: list[WordScoreRow]) -> str:
    """Aligned-column rendering of the word table."""
    header = f"{'word':<20} {'occ':>6} {'avg':>10}  {'VAGO':<5} {'pos':<10}"
    lines = [header, "-" * len(header)]
    for r in rows:
        vago = r.vago_category.label if r.vago_category else ""
        lines.append(
            f"{r.word:<20} {r.occurrences:>6} {r.avg_cam:>10.2f}  {vago:<5} {r.pos or '':<10}"
        )
    return "\n".join(lines) + "\n"
