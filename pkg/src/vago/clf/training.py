"""Mini-batch training of the convolutional classifier, plus inference.

Training is deterministic for a fixed seed: parameter initialization, the
validation split, and every epoch's shuffle draw from seeded generators in a
fixed order, so two runs with the same options produce bitwise-identical
parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..corpus import BIASED, Corpus, label_index
from ..analysis.stats import classification_metrics
from ..embeddings import EmbeddingTable, embed_tokens
from ..errors import CorpusError, EmptyText
from ..textproc import Token, tokenize
from .model import (
    CamVector,
    ModelConfig,
    ModelParams,
    batch_forward,
    batch_loss_and_grads,
    compute_cam,
    forward,
    init_params,
)


@dataclass(frozen=True)
class TrainOptions:
    epochs: int = 20
    batch_size: int = 32
    learning_rate: float = 1e-3
    seed: int = 0
    max_tokens: int = 512
    val_fraction: float = 0.1
    beta1: float = 0.9
    beta2: float = 0.999
    adam_eps: float = 1e-8


@dataclass(frozen=True)
class EpochStats:
    epoch: int
    train_loss: float
    val_f1: Optional[float]


@dataclass
class TrainingLog:
    epochs: list[EpochStats] = field(default_factory=list)
    n_train: int = 0
    n_val: int = 0

    @property
    def final_loss(self) -> Optional[float]:
        return self.epochs[-1].train_loss if self.epochs else None


class _Adam:
    def __init__(self, params: ModelParams, lr: float, beta1: float, beta2: float, eps: float):
        self.lr, self.beta1, self.beta2, self.eps = lr, beta1, beta2, eps
        self.t = 0
        self.m = [np.zeros_like(a) for a in params.arrays()]
        self.v = [np.zeros_like(a) for a in params.arrays()]

    def step(self, params: ModelParams, grads: ModelParams):
        self.t += 1
        bc1 = 1.0 - self.beta1**self.t
        bc2 = 1.0 - self.beta2**self.t
        for i, (p, g) in enumerate(zip(params.arrays(), grads.arrays())):
            self.m[i] = self.beta1 * self.m[i] + (1 - self.beta1) * g
            self.v[i] = self.beta2 * self.v[i] + (1 - self.beta2) * (g * g)
            m_hat = self.m[i] / bc1
            v_hat = self.v[i] / bc2
            p -= (self.lr * m_hat / (np.sqrt(v_hat) + self.eps)).astype(p.dtype)


def prepare_inputs(
    corpus: Corpus, table: EmbeddingTable, max_tokens: Optional[int] = None
) -> tuple[list[np.ndarray], np.ndarray]:
    """Tokenize and embed every document; labels as class indices."""
    inputs, labels = [], []
    for doc in corpus:
        if doc.label is None:
            raise CorpusError(f"document {doc.id!r} is unlabeled")
        tokens = tokenize(doc.text)
        if max_tokens is not None:
            tokens = tokens[:max_tokens]
        if not tokens:
            raise CorpusError(f"document {doc.id!r} has no tokens")
        inputs.append(embed_tokens(table, tokens))
        labels.append(label_index(doc.label))
    return inputs, np.array(labels, dtype=np.int64)


def batch_probabilities(
    params: ModelParams, inputs: list[np.ndarray], batch_size: int = 32
) -> np.ndarray:
    """Class probabilities for many sequences, batched for speed."""
    out = np.empty((len(inputs), params.config.n_classes), dtype=np.float64)
    for start in range(0, len(inputs), batch_size):
        chunk = inputs[start : start + batch_size]
        probs = batch_forward(params, chunk)[3]
        out[start : start + len(chunk)] = probs
    return out


def _validation_f1(params: ModelParams, inputs, labels, batch_size) -> float:
    probs = batch_probabilities(params, inputs, batch_size)
    preds = (probs[:, BIASED] >= 0.5).astype(int)
    return classification_metrics(labels, preds, positive=BIASED).f1


def train(
    config: ModelConfig,
    corpus: Corpus,
    table: EmbeddingTable,
    options: TrainOptions = TrainOptions(),
) -> tuple[ModelParams, TrainingLog]:
    """Minimize cross-entropy with Adam over shuffled mini-batches.

    A validation fraction is carved off the corpus for the per-epoch held-out
    F1 in the log; set ``val_fraction=0`` to train on everything.
    """
    if len(corpus) == 0:
        raise CorpusError("training corpus is empty")
    inputs, labels = prepare_inputs(corpus, table, options.max_tokens)
    if len(set(labels.tolist())) < 2:
        raise CorpusError("training corpus contains a single class")
    if table.dimension != config.embed_dim:
        raise ValueError(
            f"embedding dimension {table.dimension} != config {config.embed_dim}"
        )

    params = init_params(config, seed=options.seed)
    n = len(inputs)
    split_rng = np.random.Generator(
        np.random.PCG64(np.random.SeedSequence([options.seed, 1]))
    )
    epoch_rng = np.random.Generator(
        np.random.PCG64(np.random.SeedSequence([options.seed, 2]))
    )

    n_val = int(n * options.val_fraction) if options.val_fraction > 0 else 0
    order = split_rng.permutation(n)
    val_idx = order[:n_val]
    train_idx = order[n_val:]
    train_inputs = [inputs[i] for i in train_idx]
    train_labels = labels[train_idx]
    val_inputs = [inputs[i] for i in val_idx]
    val_labels = labels[val_idx]
    if len(set(train_labels.tolist())) < 2:
        raise CorpusError("training split contains a single class")

    log = TrainingLog(n_train=len(train_inputs), n_val=len(val_inputs))
    adam = _Adam(params, options.learning_rate, options.beta1, options.beta2, options.adam_eps)
    n_train = len(train_inputs)
    for epoch in range(options.epochs):
        perm = epoch_rng.permutation(n_train)
        total_loss = 0.0
        for start in range(0, n_train, options.batch_size):
            idx = perm[start : start + options.batch_size]
            batch = [train_inputs[i] for i in idx]
            batch_labels = train_labels[idx]
            loss, grads, _ = batch_loss_and_grads(params, batch, batch_labels)
            total_loss += loss
            scale = np.float32(1.0 / len(batch))
            for g in grads.arrays():
                g *= scale
            adam.step(params, grads)
        val_f1 = (
            _validation_f1(params, val_inputs, val_labels, options.batch_size)
            if len(val_inputs)
            else None
        )
        log.epochs.append(EpochStats(epoch + 1, total_loss / n_train, val_f1))
    return params, log


def predict(
    params: ModelParams, text: str, table: EmbeddingTable
) -> tuple[float, CamVector, list[Token]]:
    """Bias probability plus the biased-class activation map, token-aligned."""
    tokens = tokenize(text)
    if not tokens:
        raise EmptyText("cannot classify empty text")
    x = embed_tokens(table, tokens)
    fm = forward(params, x)
    cam = compute_cam(params, fm, BIASED)
    return float(fm.probs[BIASED]), cam, tokens
