"""Fully-convolutional text classifier: parameters, forward pass, CAM.

Every convolution uses same padding, so each layer keeps one output position
per input token; after global average pooling the affine head produces the
class scores. Because pooling is a plain mean, the per-position contribution
of the features to a class score (the class activation map) is exact:
``cam[t] = sum_k W[k, c] * F[t, k]`` and its positional mean recovers the
class score minus the bias.

Parameters are float32 by default; pooling and loss accumulate in float64.
float64 parameters are supported end to end for gradient verification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

ACTIVATIONS = ("relu",)
POOLINGS = ("gap", "gmp")


@dataclass(frozen=True)
class ModelConfig:
    n_layers: int = 3
    kernels_per_layer: int = 128
    kernel_size: int = 5
    embed_dim: int = 300
    n_classes: int = 2
    activation: str = "relu"
    pooling: str = "gap"

    def __post_init__(self):
        for name in ("n_layers", "kernels_per_layer", "kernel_size", "embed_dim", "n_classes"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.kernel_size % 2 == 0:
            raise ValueError("kernel_size must be odd for symmetric same padding")
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"unknown activation {self.activation!r}")
        if self.pooling not in POOLINGS:
            raise ValueError(f"unknown pooling {self.pooling!r}")


@dataclass
class ModelParams:
    config: ModelConfig
    conv_kernels: list[np.ndarray]  # layer l: (K_out, kernel_size, K_in)
    conv_biases: list[np.ndarray]  # layer l: (K_out,)
    final_weights: np.ndarray  # (K, C)
    final_biases: np.ndarray  # (C,)

    def arrays(self) -> list[np.ndarray]:
        """All parameter tensors in checkpoint order."""
        out = []
        for kernel, bias in zip(self.conv_kernels, self.conv_biases):
            out.extend([kernel, bias])
        out.extend([self.final_weights, self.final_biases])
        return out

    def astype(self, dtype) -> "ModelParams":
        return ModelParams(
            config=self.config,
            conv_kernels=[k.astype(dtype) for k in self.conv_kernels],
            conv_biases=[b.astype(dtype) for b in self.conv_biases],
            final_weights=self.final_weights.astype(dtype),
            final_biases=self.final_biases.astype(dtype),
        )

    def copy(self) -> "ModelParams":
        return self.astype(self.final_weights.dtype)

    @property
    def dtype(self):
        return self.final_weights.dtype


def init_params(
    config: ModelConfig, seed: int = 0, dtype=np.float32
) -> ModelParams:
    """Uniform(-a, a) weights with a = sqrt(6 / (fan_in + fan_out)); zero biases."""
    rng = np.random.Generator(np.random.PCG64(seed))
    kernels, biases = [], []
    k_in = config.embed_dim
    for _ in range(config.n_layers):
        k_out = config.kernels_per_layer
        fan_in = k_in * config.kernel_size
        fan_out = k_out * config.kernel_size
        a = np.sqrt(6.0 / (fan_in + fan_out))
        kernels.append(
            rng.uniform(-a, a, size=(k_out, config.kernel_size, k_in)).astype(dtype)
        )
        biases.append(np.zeros(k_out, dtype=dtype))
        k_in = k_out
    a = np.sqrt(6.0 / (config.kernels_per_layer + config.n_classes))
    final_w = rng.uniform(
        -a, a, size=(config.kernels_per_layer, config.n_classes)
    ).astype(dtype)
    final_b = np.zeros(config.n_classes, dtype=dtype)
    return ModelParams(config, kernels, biases, final_w, final_b)


@dataclass(frozen=True)
class FeatureMaps:
    F: np.ndarray  # (T, K) last conv layer activations
    F_g: np.ndarray  # (K,) pooled features, float64
    S: np.ndarray  # (C,) softmax input, float64
    probs: np.ndarray  # (C,) float64


@dataclass(frozen=True)
class CamVector:
    scores: np.ndarray  # (T,) signed per-token contributions, float64
    class_index: int


def softmax(s: np.ndarray, axis: int = -1) -> np.ndarray:
    s = np.asarray(s, dtype=np.float64)
    shifted = s - s.max(axis=axis, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=axis, keepdims=True)


def _windows(x_padded: np.ndarray, kernel_size: int) -> np.ndarray:
    """Sliding windows over the time axis, flattened to (T, kernel_size*K_in).

    Works for (T+2p, K_in) or batched (B, T+2p, K_in) input. The result is
    materialized contiguously: the raw reshape would alias overlapping
    windows, and matmul on such views bypasses BLAS entirely.
    """
    k_in = x_padded.shape[-1]
    t_out = x_padded.shape[-2] - kernel_size + 1
    view = np.lib.stride_tricks.sliding_window_view(
        x_padded, (kernel_size, k_in), axis=(-2, -1)
    )
    return np.ascontiguousarray(
        view.reshape(x_padded.shape[:-2] + (t_out, kernel_size * k_in))
    )


def _conv_same(x: np.ndarray, kernel: np.ndarray, bias: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Same-padded 1-D convolution of (T, K_in) input; returns (output, windows)."""
    t = x.shape[0]
    k_out, ks, k_in = kernel.shape
    p = ks // 2
    xp = np.zeros((t + 2 * p, k_in), dtype=x.dtype)
    xp[p : p + t] = x
    win = _windows(xp, ks)  # (T, ks*K_in)
    out = win @ kernel.reshape(k_out, ks * k_in).T + bias
    return out, win


def _pool(f: np.ndarray, pooling: str) -> np.ndarray:
    if pooling == "gap":
        return f.mean(axis=0, dtype=np.float64)
    return f.max(axis=0).astype(np.float64)


def forward(params: ModelParams, x: np.ndarray, cache: Optional[dict] = None) -> FeatureMaps:
    """Run one sequence of shape (T, embed_dim) through the network.

    Same padding keeps T positions at every layer. When ``cache`` is a dict
    it is filled with the intermediates the backward pass needs.
    """
    x = np.asarray(x, dtype=params.dtype)
    if x.ndim != 2 or x.shape[1] != params.config.embed_dim:
        raise ValueError(
            f"input must be (T, {params.config.embed_dim}), got {x.shape}"
        )
    if x.shape[0] < 1:
        raise ValueError("input must contain at least one position")
    a = x
    zs, wins = [], []
    for kernel, bias in zip(params.conv_kernels, params.conv_biases):
        z, win = _conv_same(a, kernel, bias)
        a = np.maximum(z, 0)
        zs.append(z)
        wins.append(win)
    f = a
    f_g = _pool(f, params.config.pooling)
    s = f_g @ params.final_weights.astype(np.float64) + params.final_biases
    probs = softmax(s)
    if cache is not None:
        cache.update({"x": x, "zs": zs, "wins": wins, "f": f, "f_g": f_g})
    return FeatureMaps(F=f, F_g=f_g, S=s, probs=probs)


def compute_cam(params: ModelParams, features: FeatureMaps, class_index: int) -> CamVector:
    """Per-token signed contribution to class ``class_index``."""
    c = params.config.n_classes
    if not 0 <= class_index < c:
        raise ValueError(f"class index {class_index} out of range [0, {c})")
    w_c = params.final_weights[:, class_index].astype(np.float64)
    scores = features.F.astype(np.float64) @ w_c
    return CamVector(scores=scores, class_index=class_index)


def sample_loss(params: ModelParams, x: np.ndarray, label: int) -> float:
    """Cross-entropy of one sample, in float64."""
    fm = forward(params, x)
    return float(-np.log(fm.probs[label]))


def sample_grads(params: ModelParams, x: np.ndarray, label: int) -> tuple[float, ModelParams]:
    """Loss and analytic gradients for a single sample."""
    loss, grads, _ = batch_loss_and_grads(params, [np.asarray(x)], np.array([label]))
    return loss, grads


def _pad_batch(batch: Sequence[np.ndarray], dtype) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    b = len(batch)
    lengths = np.array([len(x) for x in batch])
    t_max = int(lengths.max())
    d = batch[0].shape[1]
    x = np.zeros((b, t_max, d), dtype=dtype)
    mask = np.zeros((b, t_max, 1), dtype=dtype)
    for i, seq in enumerate(batch):
        x[i, : len(seq)] = seq
        mask[i, : len(seq)] = 1
    return x, mask, lengths


def _conv_same_batched(x, kernel, bias):
    b, t, k_in = x.shape
    k_out, ks, _ = kernel.shape
    p = ks // 2
    xp = np.zeros((b, t + 2 * p, k_in), dtype=x.dtype)
    xp[:, p : p + t] = x
    win = _windows(xp, ks)  # (B, T, ks*K_in)
    out = (
        win.reshape(-1, ks * k_in) @ kernel.reshape(k_out, ks * k_in).T
    ).reshape(b, t, k_out) + bias
    return out, win


def batch_forward(params: ModelParams, batch: Sequence[np.ndarray], cache: Optional[dict] = None):
    """Forward a batch of variable-length sequences.

    Sequences are zero-padded to the batch maximum; activations at padded
    positions are masked to zero after every layer, which makes the result
    identical to running each sequence through :func:`forward` alone.
    Returns (F (B,Tmax,K), F_g (B,K), S (B,C), probs (B,C), mask, lengths).
    """
    dtype = params.dtype
    x, mask, lengths = _pad_batch(batch, dtype)
    a = x * mask
    zs, wins = [], []
    for kernel, bias in zip(params.conv_kernels, params.conv_biases):
        z, win = _conv_same_batched(a, kernel, bias)
        a = np.maximum(z, 0) * mask
        zs.append(z)
        wins.append(win)
    f = a  # (B, Tmax, K)
    if params.config.pooling == "gap":
        f_g = f.sum(axis=1, dtype=np.float64) / lengths[:, None]
    else:
        masked = np.where(mask > 0, f, -np.inf)
        f_g = masked.max(axis=1).astype(np.float64)
    s = f_g @ params.final_weights.astype(np.float64) + params.final_biases
    probs = softmax(s, axis=1)
    if cache is not None:
        cache.update(
            {"x": x, "mask": mask, "lengths": lengths, "zs": zs, "wins": wins, "f": f, "f_g": f_g}
        )
    return f, f_g, s, probs, mask, lengths


def batch_loss_and_grads(
    params: ModelParams, batch: Sequence[np.ndarray], labels: np.ndarray
) -> tuple[float, ModelParams, np.ndarray]:
    """Summed cross-entropy over the batch with gradients for every parameter.

    The loss is the *sum* of per-sample losses, so duplicating a sample
    exactly doubles its gradient contribution; the optimizer rescales.
    """
    dtype = params.dtype
    cfg = params.config
    cache: dict = {}
    _, f_g, _, probs, mask, lengths = batch_forward(params, batch, cache=cache)
    b = len(batch)
    labels = np.asarray(labels)
    loss = float(-np.log(probs[np.arange(b), labels]).sum())

    d_s = probs.copy()
    d_s[np.arange(b), labels] -= 1.0  # (B, C) float64
    g_final_w = (f_g.T @ d_s).astype(dtype)
    g_final_b = d_s.sum(axis=0).astype(dtype)

    d_fg = d_s @ params.final_weights.astype(np.float64).T  # (B, K)
    f = cache["f"]
    if cfg.pooling == "gap":
        d_f = (d_fg / lengths[:, None])[:, None, :].astype(dtype) * mask
    else:
        masked = np.where(mask > 0, f, -np.inf)
        arg = masked.argmax(axis=1)  # (B, K)
        d_f = np.zeros_like(f)
        bi = np.arange(b)[:, None]
        ki = np.arange(f.shape[2])[None, :]
        d_f[bi, arg, ki] = d_fg.astype(dtype)

    g_kernels = [np.zeros_like(k) for k in params.conv_kernels]
    g_biases = [np.zeros_like(bb) for bb in params.conv_biases]
    d_a = d_f
    for layer in reversed(range(cfg.n_layers)):
        z = cache["zs"][layer]
        win = cache["wins"][layer]
        kernel = params.conv_kernels[layer]
        k_out, ks, k_in = kernel.shape
        d_z = d_a * (z > 0) * mask  # (B, T, K_out)
        t = d_z.shape[1]
        g_kernels[layer] = (
            d_z.reshape(-1, k_out).T @ win.reshape(-1, ks * k_in)
        ).reshape(k_out, ks, k_in)
        g_biases[layer] = d_z.sum(axis=(0, 1))
        if layer > 0:
            d_win = (
                d_z.reshape(-1, k_out) @ kernel.reshape(k_out, ks * k_in)
            ).reshape(d_z.shape[0], t, ks * k_in)
            p = ks // 2
            d_xp = np.zeros((d_z.shape[0], t + 2 * p, k_in), dtype=dtype)
            for j in range(ks):
                d_xp[:, j : j + t] += d_win[:, :, j * k_in : (j + 1) * k_in]
            d_a = d_xp[:, p : p + t]
    grads = ModelParams(cfg, g_kernels, g_biases, g_final_w, g_final_b)
    return loss, grads, probs
