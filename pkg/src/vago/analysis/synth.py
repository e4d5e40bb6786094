"""Deterministic synthetic news corpus with planted class signals.

Biased documents draw "bias tokens" (a mix of subjective lexicon entries and
novel evaluative words that are *not* in the lexicon) at a high per-sentence
rate; legitimate documents instead draw dry procedural vocabulary. The
generator emits a ground-truth manifest naming every planted token, which the
tests use as an oracle for classifier attention and lexicon-expansion checks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..errors import CorpusError
from ..corpus import Corpus, Document, LABEL_BIASED, LABEL_LEGITIMATE

# Subjective (V_C) entries of the bundled English lexicon.
LEXICON_BIAS_TOKENS = (
    "sensational", "disgusting", "idiotic", "delusional",
    "astonishing", "massive", "deplorable", "pitiful",
)

# Factual vague entries (V_A/V_G) planted evenly in both classes: they raise
# vagueness without raising subjectivity, mirroring corpora where the classes
# differ in subjective vocabulary much more than in overall vagueness.
FACTUAL_VAGUE_TOKENS = ("around", "some", "nearly", "roughly", "sometimes")

# Evaluative words deliberately absent from the lexicon; all carry a suffix
# the heuristic tagger resolves so they can surface as expansion candidates.
NOVEL_BIAS_TOKENS = (
    "outrageous", "shameless", "monstrous", "deceitful",
    "manipulative", "laughable", "freakish", "blatantly",
    "scandalous", "preposterous",
)

LEGIT_TOKENS = (
    "provisionally", "quarterly", "sectoral", "procedural",
    "topographic", "interactive", "municipal", "statistical",
)

NEUTRAL_VOCAB = (
    "committee", "report", "meeting", "budget", "school", "road", "market",
    "company", "workers", "officials", "statement", "figures", "water",
    "energy", "project", "region", "council", "minister", "agency", "season",
    "weather", "traffic", "hospital", "students", "teachers", "election",
    "votes", "policy", "system", "network", "service", "program", "research",
    "study", "data", "visit", "plan", "group", "leader", "member",
)


@dataclass(frozen=True)
class SyntheticSpec:
    n_docs: int = 2000
    bias_fraction: float = 0.5
    seed: int = 0
    sentences_per_doc: tuple[int, int] = (4, 8)
    words_per_sentence: tuple[int, int] = (6, 12)
    # per-sentence probability of planting a class-signal token
    bias_plant_rate: float = 0.85
    legit_plant_rate: float = 0.85
    cross_noise_rate: float = 0.05  # class-signal tokens leaking into the other class
    factual_vague_rate: float = 0.3  # class-independent V_A/V_G insertions
    lexicon_bias_tokens: tuple[str, ...] = LEXICON_BIAS_TOKENS
    novel_bias_tokens: tuple[str, ...] = NOVEL_BIAS_TOKENS
    legit_tokens: tuple[str, ...] = LEGIT_TOKENS
    factual_vague_tokens: tuple[str, ...] = FACTUAL_VAGUE_TOKENS
    neutral_vocab: tuple[str, ...] = NEUTRAL_VOCAB

    def validate(self):
        if self.n_docs < 1:
            raise CorpusError("n_docs must be positive")
        if not 0 <= self.bias_fraction <= 1:
            raise CorpusError("bias_fraction must be in [0, 1]")
        lo, hi = self.sentences_per_doc
        if not 1 <= lo <= hi:
            raise CorpusError("bad sentences_per_doc range")
        lo, hi = self.words_per_sentence
        if not 1 <= lo <= hi:
            raise CorpusError("bad words_per_sentence range")
        sets = {
            "lexicon_bias_tokens": set(self.lexicon_bias_tokens),
            "novel_bias_tokens": set(self.novel_bias_tokens),
            "legit_tokens": set(self.legit_tokens),
            "factual_vague_tokens": set(self.factual_vague_tokens),
            "neutral_vocab": set(self.neutral_vocab),
        }
        names = list(sets)
        for i, a in enumerate(names):
            for b in names[i + 1 :]:
                overlap = sets[a] & sets[b]
                if overlap:
                    raise CorpusError(
                        f"token sets {a} and {b} overlap: {sorted(overlap)}"
                    )

    @property
    def bias_tokens(self) -> tuple[str, ...]:
        return self.lexicon_bias_tokens + self.novel_bias_tokens


def _make_sentence(rng, spec: SyntheticSpec, planted: Sequence[str]) -> str:
    lo, hi = spec.words_per_sentence
    n = int(rng.integers(lo, hi + 1))
    words = [spec.neutral_vocab[i] for i in rng.integers(0, len(spec.neutral_vocab), n)]
    for token in planted:
        pos = int(rng.integers(0, len(words) + 1))
        words.insert(pos, token)
    words[0] = words[0].capitalize()
    return " ".join(words) + "."


def generate_synthetic_corpus(spec: SyntheticSpec = SyntheticSpec()) -> Corpus:
    """Build the corpus; the manifest records every planted token occurrence."""
    spec.validate()
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    n_biased = int(spec.n_docs * spec.bias_fraction + 0.5)
    label_order = np.zeros(spec.n_docs, dtype=int)
    label_order[:n_biased] = 1
    label_order = label_order[rng.permutation(spec.n_docs)]

    docs = []
    planted_by_doc: dict[str, list[str]] = {}
    width = len(str(max(spec.n_docs - 1, 1)))
    for i in range(spec.n_docs):
        biased = bool(label_order[i])
        own_pool = spec.bias_tokens if biased else spec.legit_tokens
        other_pool = spec.legit_tokens if biased else spec.bias_tokens
        plant_rate = spec.bias_plant_rate if biased else spec.legit_plant_rate
        lo, hi = spec.sentences_per_doc
        n_sentences = int(rng.integers(lo, hi + 1))
        sentences, planted = [], []
        for _ in range(n_sentences):
            inserts = []
            if rng.random() < plant_rate:
                inserts.append(own_pool[int(rng.integers(0, len(own_pool)))])
            elif rng.random() < spec.cross_noise_rate:
                inserts.append(other_pool[int(rng.integers(0, len(other_pool)))])
            if spec.factual_vague_tokens and rng.random() < spec.factual_vague_rate:
                inserts.append(
                    spec.factual_vague_tokens[
                        int(rng.integers(0, len(spec.factual_vague_tokens)))
                    ]
                )
            planted.extend(inserts)
            sentences.append(_make_sentence(rng, spec, inserts))
        doc_id = f"synth-{i:0{width}d}"
        source = ("tabloid-" if biased else "wire-") + ("a" if rng.random() < 0.5 else "b")
        docs.append(
            Document(
                id=doc_id,
                text=" ".join(sentences),
                label=LABEL_BIASED if biased else LABEL_LEGITIMATE,
                source=source,
            )
        )
        planted_by_doc[doc_id] = planted

    manifest = {
        "generator": "synthetic",
        "seed": spec.seed,
        "n_docs": spec.n_docs,
        "n_biased": int(n_biased),
        "bias_fraction": spec.bias_fraction,
        "lexicon_bias_tokens": list(spec.lexicon_bias_tokens),
        "novel_bias_tokens": list(spec.novel_bias_tokens),
        "legit_tokens": list(spec.legit_tokens),
        "factual_vague_tokens": list(spec.factual_vague_tokens),
        "planted": planted_by_doc,
    }
    return Corpus(docs, manifest=manifest)


def manifest_json(corpus: Corpus) -> str:
    return json.dumps(corpus.manifest, indent=2, sort_keys=True) + "\n"
