"""Stationary-phase reference values for the complex entropy of a Gaussian."""

from __future__ import annotations

import math
from dataclasses import dataclass

# Peak phase (lambda * beta, radians) above which the leading-order
# asymptotic is treated as meaningful.
REGIME_THRESHOLD = 50.0


@dataclass(frozen=True)
class AsymptoticCe:
    value: float
    lam: float
    regime_ok: bool


def gaussian_ce_asymptotic(sigma: float, beta: float) -> AsymptoticCe:
    """Leading-order small-``sigma`` complex entropy of ``N(mu, sigma^2)``.

    The value is ``(2 pi)^(1/4) sqrt(sigma / beta)``; ``lam`` is the peak
    density ``1 / (sqrt(2 pi) sigma)`` and ``regime_ok`` reports whether
    ``lam * beta`` is large enough for the approximation to be trusted.
    """
    if not (sigma > 0 and beta > 0):
        raise ValueError(f"sigma and beta must be positive, got sigma={sigma}, beta={beta}")
    lam = 1.0 / (math.sqrt(2.0 * math.pi) * sigma)
    value = (2.0 * math.pi) ** 0.25 * math.sqrt(sigma / beta)
    return AsymptoticCe(value, lam, lam * beta >= REGIME_THRESHOLD)
