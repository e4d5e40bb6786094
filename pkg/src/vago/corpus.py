"""Corpus containers, file adapters, and the train/test splitter.

Label policy: source datasets tag low-quality content in several ways
("fake", "bullshit", "biased"); all collapse to the single ``biased`` label.
Class indices are fixed: legitimate = 0, biased = 1.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import CorpusError

LABEL_LEGITIMATE = "legitimate"
LABEL_BIASED = "biased"
LABELS = (LABEL_LEGITIMATE, LABEL_BIASED)

LEGITIMATE, BIASED = 0, 1

_LABEL_ALIASES = {
    "legitimate": LABEL_LEGITIMATE,
    "legit": LABEL_LEGITIMATE,
    "true": LABEL_LEGITIMATE,
    "real": LABEL_LEGITIMATE,
    "0": LABEL_LEGITIMATE,
    "biased": LABEL_BIASED,
    "fake": LABEL_BIASED,
    "bullshit": LABEL_BIASED,
    "1": LABEL_BIASED,
}


def normalize_label(raw, row_ref: str = "?") -> Optional[str]:
    if raw is None:
        return None
    text = str(raw).strip().lower()
    if not text:
        return None
    try:
        return _LABEL_ALIASES[text]
    except KeyError:
        raise CorpusError(f"unknown label {raw!r} at {row_ref}")


def label_index(label: str) -> int:
    try:
        return LABELS.index(label)
    except ValueError:
        raise CorpusError(f"unknown label {label!r}")


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    label: Optional[str] = None
    source: str = ""

    def __post_init__(self):
        if not self.text:
            raise CorpusError(f"document {self.id!r} has empty text")
        if self.label is not None and self.label not in LABELS:
            raise CorpusError(f"document {self.id!r} has bad label {self.label!r}")


@dataclass
class Corpus:
    documents: list[Document]
    manifest: dict = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for doc in self.documents:
            if doc.id in seen:
                raise CorpusError(f"duplicate document id {doc.id!r}")
            seen.add(doc.id)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def labels(self) -> list[Optional[str]]:
        return [d.label for d in self.documents]

    def sources(self) -> list[str]:
        return sorted({d.source for d in self.documents})

    def to_jsonl(self) -> str:
        lines = []
        for doc in self.documents:
            record = {"id": doc.id, "text": doc.text, "source": doc.source}
            if doc.label is not None:
                record["label"] = doc.label
            lines.append(json.dumps(record, ensure_ascii=False, sort_keys=True))
        return "\n".join(lines) + "\n"


def _ingest_jsonl(content: str, column_map: dict) -> tuple[list[Document], int]:
    id_key = column_map.get("id", "id")
    text_key = column_map.get("text", "text")
    label_key = column_map.get("label", "label")
    source_key = column_map.get("source", "source")
    docs, dropped = [], 0
    for line_no, line in enumerate(content.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"line {line_no}: invalid JSON ({exc})")
        text = str(record.get(text_key, "") or "").strip()
        if not text:
            dropped += 1
            continue
        docs.append(
            Document(
                id=str(record.get(id_key, f"doc-{line_no}")),
                text=text,
                label=normalize_label(record.get(label_key), f"line {line_no}"),
                source=str(record.get(source_key, "") or ""),
            )
        )
    return docs, dropped


def _ingest_csv(content: str, column_map: dict) -> tuple[list[Document], int]:
    text_col = column_map.get("text")
    if not text_col:
        raise CorpusError("CSV ingestion requires a 'text' column mapping")
    label_col = column_map.get("label")
    source_col = column_map.get("source")
    id_col = column_map.get("id")
    reader = csv.DictReader(io.StringIO(content))
    if reader.fieldnames is None:
        raise CorpusError("CSV file has no header row")
    for col in filter(None, (text_col, label_col, source_col, id_col)):
        if col not in reader.fieldnames:
            raise CorpusError(f"CSV file has no column {col!r}")
    docs, dropped = [], 0
    for row_no, row in enumerate(reader, start=2):
        text = (row.get(text_col) or "").strip()
        if not text:
            dropped += 1
            continue
        docs.append(
            Document(
                id=str(row[id_col]) if id_col else f"row-{row_no}",
                text=text,
                label=normalize_label(
                    row.get(label_col) if label_col else None, f"row {row_no}"
                ),
                source=(row.get(source_col) or "") if source_col else "",
            )
        )
    return docs, dropped


def ingest_corpus(
    path, format: str = "jsonl", column_map: Optional[dict] = None
) -> Corpus:
    """Load a corpus file; returns a Corpus whose manifest records the source
    path and how many empty-text records were dropped."""
    column_map = column_map or {}
    content = Path(path).read_text(encoding="utf-8")
    if format == "jsonl":
        docs, dropped = _ingest_jsonl(content, column_map)
    elif format == "csv":
        docs, dropped = _ingest_csv(content, column_map)
    else:
        raise CorpusError(f"unknown corpus format {format!r}")
    return Corpus(docs, manifest={"path": str(path), "dropped_empty": dropped})


def split_corpus(
    corpus: Corpus, test_fraction: float = 0.2, seed: int = 0
) -> tuple[Corpus, Corpus]:
    """Seeded shuffle-then-partition split.

    The shuffle is a backward Fisher-Yates over document indices: with
    ``rng = numpy.random.Generator(numpy.random.PCG64(seed))``, for
    i = n-1 .. 1 draw ``j = rng.integers(0, i + 1)`` and swap positions i, j.
    The first ``ceil(n * test_fraction)`` shuffled documents form the test
    set, the rest the training set.
    """
    if not 0 < test_fraction < 1:
        raise CorpusError("test_fraction must be in (0, 1)")
    n = len(corpus)
    if n < 2:
        raise CorpusError("need at least 2 documents to split")
    indices = list(range(n))
    rng = np.random.Generator(np.random.PCG64(seed))
    for i in range(n - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        indices[i], indices[j] = indices[j], indices[i]
    n_test = math.ceil(n * test_fraction)
    test_docs = [corpus.documents[i] for i in indices[:n_test]]
    train_docs = [corpus.documents[i] for i in indices[n_test:]]
    meta = {"seed": seed, "test_fraction": test_fraction}
    return (
        Corpus(train_docs, manifest={**corpus.manifest, **meta, "part": "train"}),
        Corpus(test_docs, manifest={**corpus.manifest, **meta, "part": "test"}),
    )
