"""Complex entropy: exact sums, adaptive quadrature, and Monte-Carlo estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .distributions import DiscretePmf, Density, Distribution, draw_samples
from .quadrature import DEFAULT_TOL, integrate


@dataclass(frozen=True)
class CeEstimate:
    value: float
    method: str
    beta: float
    n_samples: Optional[int] = None
    stderr: Optional[float] = None
    seed: Optional[int] = None
    amplitude: complex = 0j


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not (beta > 0 and math.isfinite(beta)):
        raise ValueError(f"beta must be positive and finite, got {beta}")
    return beta


def phase_weighted(p: np.ndarray, beta: float) -> np.ndarray:
    """``p * exp(i beta p)``, the integrand whose modulus-of-integral is CE."""
    return p * np.exp(1j * beta * p)


def ce_discrete(p: DiscretePmf, beta: float, degenerate: str = "one") -> CeEstimate:
    """|sum_x p(x) e^{i beta p(x)}| summed in canonical atom order.

    ``degenerate`` picks the value reported for a single-atom PMF: ``"one"``
    (the sum itself) or ``"zero"`` (treat a point mass as carrying no
    uncertainty).
    """
    beta = _check_beta(beta)
    if degenerate not in ("one", "zero"):
        raise ValueError("degenerate must be 'one' or 'zero'")
    masses = np.asarray(p.masses)
    amp = complex(np.sum(phase_weighted(masses, beta)))
    value = abs(amp)
    if np.count_nonzero(masses) == 1 and degenerate == "zero":
        value = 0.0
    return CeEstimate(value, "exact-sum", beta, amplitude=amp)


def ce_amplitude(d: Density, beta: float, tol: float = DEFAULT_TOL) -> complex:
    """The complex integral of ``p e^{i beta p}`` over the density's window."""

    def integrand(x):
        px = d.pdf(x)
        return phase_weighted(px, beta), beta * px

    return integrate(integrand, d.breakpoints(), tol=tol).value


def ce_quadrature(d: Density, beta: float, tol: float = DEFAULT_TOL) -> CeEstimate:
    beta = _check_beta(beta)
    amp = ce_amplitude(d, beta, tol)
    return CeEstimate(abs(amp), "quadrature", beta, amplitude=amp)


def ce_monte_carlo(d: Distribution, beta: float, n: int, seed: int) -> CeEstimate:
    """Sample-average estimate of |E exp(i beta p(X))|.

    ``stderr`` is the larger of the real- and imaginary-part standard errors
    of the sample mean.
    """
    beta = _check_beta(beta)
    if n < 2:
        raise ValueError("Monte-Carlo estimate needs n >= 2")
    xs = draw_samples(d, n, seed).array()
    px = d.pmf(xs) if isinstance(d, DiscretePmf) else d.pdf(xs)
    theta = beta * px
    re, im = np.cos(theta), np.sin(theta)
    amp = complex(re.mean(), im.mean())
    stderr = max(re.std(ddof=1), im.std(ddof=1)) / math.sqrt(n)
    return CeEstimate(abs(amp), "monte-carlo", beta, n_samples=n, stderr=float(stderr),
                      seed=seed, amplitude=amp)


def complex_entropy(d: Distribution, beta: float, method: str = "auto", n: int = 1000,
                    seed: int = 0, degenerate: str = "one") -> CeEstimate:
    """Dispatch to the exact sum, quadrature, or Monte-Carlo estimator."""
    if method == "mc":
        return ce_monte_carlo(d, beta, n, seed)
    if isinstance(d, DiscretePmf):
        return ce_discrete(d, beta, degenerate)
    if method in ("auto", "quad"):
        return ce_quadrature(d, beta)
    raise ValueError(f"unknown method {method!r}")
