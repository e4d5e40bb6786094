"""Convolutional bias classifier with class-activation-map explanations."""

from .checkpoint import load_checkpoint, read_header, save_checkpoint
from .gradcheck import GradCheckResult, gradient_check, random_tiny_case, run_gradient_checks
from .model import (
    CamVector,
    FeatureMaps,
    ModelConfig,
    ModelParams,
    batch_forward,
    batch_loss_and_grads,
    compute_cam,
    forward,
    init_params,
    sample_grads,
    sample_loss,
    softmax,
)
from .training import (
    EpochStats,
    TrainingLog,
    TrainOptions,
    batch_probabilities,
    predict,
    prepare_inputs,
    train,
)

__all__ = [
    "CamVector",
    "EpochStats",
    "FeatureMaps",
    "GradCheckResult",
    "ModelConfig",
    "ModelParams",
    "TrainOptions",
    "TrainingLog",
    "batch_forward",
    "batch_loss_and_grads",
    "batch_probabilities",
    "compute_cam",
    "forward",
    "gradient_check",
    "init_params",
    "load_checkpoint",
    "predict",
    "prepare_inputs",
    "random_tiny_case",
    "read_header",
    "run_gradient_checks",
    "sample_grads",
    "sample_loss",
    "save_checkpoint",
    "softmax",
    "train",
]
