"""Token vectors: text-format loading plus a deterministic hashed fallback.

Vectors are stored as 32-bit floats. Lookup never fails: out-of-vocabulary
tokens resolve to either a zero vector or a hash-derived pseudo-random vector
(useful as a self-contained stand-in for pre-trained embeddings in tests and
synthetic experiments).
"""

from __future__ import annotations

import hashlib
from typing import Iterable, Literal, Sequence

import numpy as np

from .errors import VectorFormatError

DEFAULT_DIMENSION = 300

OovPolicy = Literal["zero_vector", "hashed"]


def hashed_vector(token: str, dimension: int, seed: int = 0) -> np.ndarray:
    """Deterministic pseudo-vector with components in [-0.1, 0.1].

    Component i is derived from a 64-bit hash of (token, seed, i), so the
    result is stable across processes and platforms.
    """
    if dimension < 1:
        raise ValueError("dimension must be >= 1")
    out = np.empty(dimension, dtype=np.float32)
    prefix = f"{token}\x00{seed}\x00".encode("utf-8")
    for i in range(dimension):
        digest = hashlib.blake2b(prefix + str(i).encode(), digest_size=8).digest()
        h = int.from_bytes(digest, "little")
        out[i] = (h / 2**64) * 0.2 - 0.1
    return out


class EmbeddingTable:
    """Immutable after construction; concurrent lookups are safe."""

    def __init__(
        self,
        dimension: int,
        vocab: dict[str, np.ndarray] | None = None,
        oov_policy: OovPolicy = "zero_vector",
        seed: int = 0,
    ):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.dimension = dimension
        self.oov_policy = oov_policy
        self.seed = seed
        self._vocab: dict[str, np.ndarray] = {}
        self._oov_cache: dict[str, np.ndarray] = {}
        if vocab:
            for token, vec in vocab.items():
                arr = np.asarray(vec, dtype=np.float32)
                if arr.shape != (dimension,):
                    raise VectorFormatError(
                        f"vector for {token!r} has shape {arr.shape}, "
                        f"expected ({dimension},)"
                    )
                self._vocab[token] = arr

    def __len__(self) -> int:
        return len(self._vocab)

    def __contains__(self, token: str) -> bool:
        return token.lower() in self._vocab

    def vector(self, token: str) -> np.ndarray:
        key = token.lower()
        vec = self._vocab.get(key)
        if vec is not None:
            return vec
        if self.oov_policy == "zero_vector":
            return np.zeros(self.dimension, dtype=np.float32)
        cached = self._oov_cache.get(key)
        if cached is None:
            cached = hashed_vector(key, self.dimension, self.seed)
            self._oov_cache[key] = cached
        return cached

    def tokens(self) -> list[str]:
        return sorted(self._vocab)


def embed_tokens(table: EmbeddingTable, tokens: Sequence) -> np.ndarray:
    """Stack per-token vectors into a (T, d) float32 matrix.

    Accepts Token objects or plain strings; row order follows token order so
    downstream per-position scores stay aligned with the input.
    """
    if len(tokens) == 0:
        raise ValueError("cannot embed an empty token sequence")
    surfaces = [getattr(t, "surface", t) for t in tokens]
    return np.stack([table.vector(s) for s in surfaces]).astype(np.float32)


def parse_vectors(
    source: str, oov_policy: OovPolicy = "zero_vector", seed: int = 0
) -> EmbeddingTable:
    """Parse the word-vector text format.

    First line: ``<count> <dimension>``; each following line:
    ``token v1 ... vd``. Dimension or count mismatches raise
    VectorFormatError with the offending line number.
    """
    lines = source.splitlines()
    if not lines or not lines[0].strip():
        raise VectorFormatError("missing header line", 1)
    header = lines[0].split()
    if len(header) != 2:
        raise VectorFormatError("header must be '<count> <dimension>'", 1)
    try:
        count, dimension = int(header[0]), int(header[1])
    except ValueError:
        raise VectorFormatError("header must be two integers", 1)
    if count < 0 or dimension < 1:
        raise VectorFormatError("header values out of range", 1)

    vocab: dict[str, np.ndarray] = {}
    for line_no, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        fields = raw.split()
        if len(fields) != dimension + 1:
            raise VectorFormatError(
                f"expected {dimension} components, got {len(fields) - 1}",
                line_no,
            )
        token = fields[0]
        if token in vocab:
            raise VectorFormatError(f"duplicate token {token!r}", line_no)
        try:
            vec = np.array([float(x) for x in fields[1:]], dtype=np.float32)
        except ValueError:
            raise VectorFormatError("non-numeric vector component", line_no)
        vocab[token.lower()] = vec
    if len(vocab) != count:
        raise VectorFormatError(
            f"header declares {count} entries, file has {len(vocab)}"
        )
    return EmbeddingTable(dimension, vocab, oov_policy=oov_policy, seed=seed)


load_vectors = parse_vectors


def load_vectors_file(path, oov_policy: OovPolicy = "zero_vector", seed: int = 0):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_vectors(fh.read(), oov_policy=oov_policy, seed=seed)


def dump_vectors(table: EmbeddingTable) -> str:
    """Serialize to the same text format (6 decimal places)."""
    lines = [f"{len(table)} {table.dimension}"]
    for token in table.tokens():
        vec = table.vector(token)
        comps = " ".join(f"{x:.6f}" for x in vec)
        lines.append(f"{token} {comps}")
    return "\n".join(lines) + "\n"
