"""Order statistics and correlation used by the comparison study."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..errors import DegenerateVariance


@dataclass(frozen=True)
class CorrelationReport:
    variable_x: str
    variable_y: str
    r: float
    n: int


def pearson(
    xs: Sequence[float],
    ys: Sequence[float],
    variable_x: str = "x",
    variable_y: str = "y",
) -> CorrelationReport:
    """Product-moment correlation with 64-bit accumulation.

    Raises DegenerateVariance when either variable is constant.
    """
    if len(xs) != len(ys):
        raise ValueError(f"length mismatch: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 2:
        raise ValueError("need at least two samples")
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateVariance(
            f"zero variance in {'x' if sxx == 0.0 else 'y'}"
        )
    r = float(dx @ dy) / np.sqrt(sxx * syy)
    r = min(1.0, max(-1.0, r))
    return CorrelationReport(variable_x, variable_y, r, n)


@dataclass(frozen=True)
class LetterValueSummary:
    median: float
    lower_quartile: float
    upper_quartile: float
    lower_octile: float
    upper_octile: float
    lower_hexadecile: float
    upper_hexadecile: float

    def as_dict(self) -> dict:
        return {
            "median": self.median,
            "quartiles": [self.lower_quartile, self.upper_quartile],
            "octiles": [self.lower_octile, self.upper_octile],
            "hexadeciles": [self.lower_hexadecile, self.upper_hexadecile],
        }


def _value_at_depth(sorted_x: np.ndarray, depth: float, from_top: bool) -> float:
    n = len(sorted_x)
    lo = int(np.floor(depth)) - 1
    hi = int(np.ceil(depth)) - 1
    if from_top:
        lo, hi = n - 1 - lo, n - 1 - hi
    return float((sorted_x[lo] + sorted_x[hi]) / 2.0)


def letter_values(samples: Sequence[float]) -> LetterValueSummary:
    """Median / quartiles / octiles / hexadeciles by the half-sample rule.

    Depths follow the classic recursion d_1 = (1 + n) / 2 and
    d_{k+1} = (1 + floor(d_k)) / 2; half-integer depths average the two
    neighboring order statistics. The summaries nest by construction.
    """
    if len(samples) == 0:
        raise ValueError("need at least one sample")
    x = np.sort(np.asarray(samples, dtype=np.float64))
    n = len(x)
    depths = []
    d = (1 + n) / 2.0
    for _ in range(4):  # median, quartile, octile, hexadecile
        depths.append(d)
        d = (1 + np.floor(d)) / 2.0
    return LetterValueSummary(
        median=_value_at_depth(x, depths[0], from_top=False),
        lower_quartile=_value_at_depth(x, depths[1], from_top=False),
        upper_quartile=_value_at_depth(x, depths[1], from_top=True),
        lower_octile=_value_at_depth(x, depths[2], from_top=False),
        upper_octile=_value_at_depth(x, depths[2], from_top=True),
        lower_hexadecile=_value_at_depth(x, depths[3], from_top=False),
        upper_hexadecile=_value_at_depth(x, depths[3], from_top=True),
    )


@dataclass(frozen=True)
class ClassificationMetrics:
    f1: float
    precision: float
    recall: float
    accuracy: float
    n: int

    def as_dict(self) -> dict:
        return {
            "f1": self.f1,
            "precision": self.precision,
            "recall": self.recall,
            "accuracy": self.accuracy,
            "n": self.n,
        }


def classification_metrics(
    y_true: Sequence[int], y_pred: Sequence[int], positive: int = 1
) -> ClassificationMetrics:
    """Precision/recall/F1 for the positive class; empty denominators give 0."""
    if len(y_true) != len(y_pred):
        raise ValueError("length mismatch")
    if len(y_true) == 0:
        raise ValueError("need at least one sample")
    t = np.asarray(y_true)
    p = np.asarray(y_pred)
    tp = int(((t == positive) & (p == positive)).sum())
    fp = int(((t != positive) & (p == positive)).sum())
    fn = int(((t == positive) & (p != positive)).sum())
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = (
        2 * precision * recall / (precision + recall)
        if precision + recall
        else 0.0
    )
    accuracy = float((t == p).mean())
    return ClassificationMetrics(f1, precision, recall, accuracy, len(t))
