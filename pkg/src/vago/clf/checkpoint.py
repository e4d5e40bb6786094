"""Versioned binary checkpoint container.

Layout (all integers little-endian u32, tensors little-endian float32):

    magic "FCLF" | version | n_layers | kernels | kernel_size | embed_dim |
    n_classes | layer-1 kernel | layer-1 bias | ... | final W | final b

Tensors are serialized in C order with the shapes implied by the header.
Version 1 containers always describe a relu/gap model.
"""

from __future__ import annotations

import struct

import numpy as np

from ..errors import CheckpointError
from .model import ModelConfig, ModelParams

MAGIC = b"FCLF"
VERSION = 1
_HEADER = struct.Struct("<4sIIIIII")


def save_checkpoint(params: ModelParams) -> bytes:
    cfg = params.config
    header = _HEADER.pack(
        MAGIC,
        VERSION,
        cfg.n_layers,
        cfg.kernels_per_layer,
        cfg.kernel_size,
        cfg.embed_dim,
        cfg.n_classes,
    )
    chunks = [header]
    for arr in params.arrays():
        chunks.append(np.ascontiguousarray(arr, dtype="<f4").tobytes())
    return b"".join(chunks)


def load_checkpoint(data: bytes) -> ModelParams:
    if len(data) < _HEADER.size:
        raise CheckpointError("checkpoint truncated: header incomplete")
    magic, version, n_layers, kernels, kernel_size, embed_dim, n_classes = (
        _HEADER.unpack_from(data)
    )
    if magic != MAGIC:
        raise CheckpointError(f"bad magic bytes {magic!r}")
    if version != VERSION:
        raise CheckpointError(f"unsupported checkpoint version {version}")
    try:
        config = ModelConfig(
            n_layers=n_layers,
            kernels_per_layer=kernels,
            kernel_size=kernel_size,
            embed_dim=embed_dim,
            n_classes=n_classes,
        )
    except ValueError as exc:
        raise CheckpointError(f"invalid header: {exc}")

    shapes = []
    k_in = embed_dim
    for _ in range(n_layers):
        shapes.append((kernels, kernel_size, k_in))
        shapes.append((kernels,))
        k_in = kernels
    shapes.append((kernels, n_classes))
    shapes.append((n_classes,))

    offset = _HEADER.size
    tensors = []
    for shape in shapes:
        count = int(np.prod(shape))
        nbytes = count * 4
        if offset + nbytes > len(data):
            raise CheckpointError("checkpoint truncated: tensor data incomplete")
        tensors.append(
            np.frombuffer(data, dtype="<f4", count=count, offset=offset)
            .reshape(shape)
            .copy()
        )
        offset += nbytes
    if offset != len(data):
        raise CheckpointError(f"{len(data) - offset} trailing bytes after tensors")

    conv_kernels = [tensors[2 * i] for i in range(n_layers)]
    conv_biases = [tensors[2 * i + 1] for i in range(n_layers)]
    return ModelParams(
        config=config,
        conv_kernels=conv_kernels,
        conv_biases=conv_biases,
        final_weights=tensors[-2],
        final_biases=tensors[-1],
    )


def read_header(data: bytes) -> tuple[int, int, int, int, int]:
    """The (n_layers, kernels, kernel_size, embed_dim, n_classes) header."""
    if len(data) < _HEADER.size:
        raise CheckpointError("checkpoint truncated: header incomplete")
    magic, version, *rest = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise CheckpointError(f"bad magic bytes {magic!r}")
    if version != VERSION:
        raise CheckpointError(f"unsupported checkpoint version {version}")
    return tuple(rest)
