"""Image-quality metrics: Pearson correlation coefficient and MSE.

The correlation coefficient is the standard figure of merit for comparing a
reconstruction f against its ground truth f0:

    C = cov(f, f0) / (sigma_f * sigma_f0)

computed over all pixels with population (divide-by-n) statistics. The
choice of divisor cancels in C but is fixed here so that cov/std helpers
stay mutually consistent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, UndefinedMetricError

__all__ = ["MetricReport", "correlation_coefficient", "mse", "report"]


@dataclass(frozen=True)
class MetricReport:
    """Correlation coefficient, mean squared error and pixel count."""

    cc: float
    mse: float
    n_pixels: int


def _paired(f, f0):
    a = np.asarray(f, dtype=np.float64)
    b = np.asarray(f0, dtype=np.float64)
    if a.shape != b.shape:
        raise ParameterError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.size < 2:
        raise ParameterError("metrics need at least 2 pixels")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ParameterError("metric inputs contain NaN or Inf")
    return a.ravel(), b.ravel()


def correlation_coefficient(f, f0) -> float:
    """Pearson correlation over all pixels of two equal-shaped arrays.

    Raises :class:`UndefinedMetricError` when either input is constant
    (zero standard deviation): the coefficient is undefined there and a
    silent 0 or NaN would corrupt experiment tables.
    """
    a, b = _paired(f, f0)
    a = a - a.mean()
    b = b - b.mean()
    sa = np.sqrt(np.mean(a**2))
    sb = np.sqrt(np.mean(b**2))
    if sa == 0.0 or sb == 0.0:
        raise UndefinedMetricError(
            "correlation coefficient undefined: constant input image"
        )
    c = float(np.mean(a * b) / (sa * sb))
    # Rounding can push |c| infinitesimally past 1.
    return float(np.clip(c, -1.0, 1.0))


def mse(f, f0) -> float:
    """Mean squared difference over all pixels."""
    a, b = _paired(f, f0)
    return float(np.mean((a - b) ** 2))


def report(f, f0) -> MetricReport:
    """Bundle CC and MSE for one (reconstruction, ground truth) pair."""
    a, b = _paired(f, f0)
    return MetricReport(
        cc=correlation_coefficient(a, b),
        mse=float(np.mean((a - b) ** 2)),
        n_pixels=int(a.size),
    )
