"""Verification of the analytic gradients against central finite differences.

Runs entirely in float64. Test cases are resampled when any pre-activation
sits within the ReLU kink's reach of the perturbation step, so the loss is
smooth at every checked point and the comparison is meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ModelConfig, ModelParams, forward, init_params, sample_grads, sample_loss

DEFAULT_STEP = 1e-4
_KINK_MARGIN = 1e-2


@dataclass(frozen=True)
class GradCheckResult:
    max_relative_error: float
    n_parameters: int


def gradient_check(
    params: ModelParams, x: np.ndarray, label: int, step: float = DEFAULT_STEP
) -> GradCheckResult:
    """Compare every analytic parameter gradient with (f(p+h)-f(p-h))/2h."""
    if params.dtype != np.float64:
        params = params.astype(np.float64)
    x = np.asarray(x, dtype=np.float64)
    _, grads = sample_grads(params, x, label)
    max_rel = 0.0
    n_params = 0
    for p_arr, g_arr in zip(params.arrays(), grads.arrays()):
        flat_p = p_arr.reshape(-1)
        flat_g = g_arr.reshape(-1)
        for i in range(flat_p.size):
            n_params += 1
            orig = flat_p[i]
            flat_p[i] = orig + step
            loss_plus = sample_loss(params, x, label)
            flat_p[i] = orig - step
            loss_minus = sample_loss(params, x, label)
            flat_p[i] = orig
            numeric = (loss_plus - loss_minus) / (2 * step)
            analytic = float(flat_g[i])
            denom = max(abs(analytic), abs(numeric))
            if denom > 1e-10:
                max_rel = max(max_rel, abs(analytic - numeric) / denom)
    return GradCheckResult(max_relative_error=max_rel, n_parameters=n_params)


def random_tiny_case(rng: np.random.Generator, pooling: str = "gap"):
    """A random small model and sample suitable for finite-difference checks."""
    for _ in range(50):
        config = ModelConfig(
            n_layers=int(rng.integers(1, 4)),
            kernels_per_layer=int(rng.integers(1, 5)),
            kernel_size=int(rng.choice([1, 3, 5])),
            embed_dim=int(rng.integers(1, 6)),
            n_classes=2,
            pooling=pooling,
        )
        params = init_params(config, seed=int(rng.integers(2**31)), dtype=np.float64)
        t = int(rng.integers(1, 9))
        x = rng.normal(0.0, 1.0, size=(t, config.embed_dim))
        label = int(rng.integers(config.n_classes))
        cache: dict = {}
        forward(params, x, cache=cache)
        closest = min(float(np.abs(z).min()) for z in cache["zs"])
        if closest > _KINK_MARGIN:
            return config, params, x, label
    raise RuntimeError("could not sample a kink-free gradient check case")


def run_gradient_checks(
    n_models: int = 20, seed: int = 0, step: float = DEFAULT_STEP, pooling: str = "gap"
) -> float:
    """Max relative gradient error over ``n_models`` random tiny models."""
    rng = np.random.Generator(np.random.PCG64(seed))
    worst = 0.0
    for _ in range(n_models):
        config, params, x, label = random_tiny_case(rng, pooling=pooling)
        result = gradient_check(params, x, label, step=step)
        worst = max(worst, result.max_relative_error)
    return worst
