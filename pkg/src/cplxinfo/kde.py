"""Gaussian kernel density estimates tabulated on a uniform grid."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .distributions import Grid, SampleSet

_CHUNK = 4096


class KdeError(ValueError):
    pass


@dataclass(frozen=True)
class KdeConfig:
    bandwidth: Optional[float] = None  # None selects Silverman's rule
    grid_points: int = 512
    grid_padding: float = 4.0

    def __post_init__(self):
        if self.grid_points < 64:
            raise KdeError("grid_points must be >= 64")
        if self.bandwidth is not None and not self.bandwidth > 0:
            raise KdeError("explicit bandwidth must be positive")
        if self.grid_padding < 0:
            raise KdeError("grid_padding must be nonnegative")


def _values(s) -> np.ndarray:
    return s.array() if isinstance(s, SampleSet) else np.asarray(s, dtype=float)


def silverman_bandwidth(s) -> float:
    """``0.9 min(sd, IQR/1.34) n^(-1/5)``, falling back to whichever spread is nonzero."""
    x = _values(s)
    if x.size < 2:
        raise KdeError("bandwidth needs at least 2 samples")
    sd = float(np.std(x, ddof=1))
    q75, q25 = np.percentile(x, [75, 25])
    iqr = float(q75 - q25) / 1.34
    spreads = [v for v in (sd, iqr) if v > 0]
    if not spreads:
        raise KdeError("samples have zero spread")
    return 0.9 * min(spreads) * x.size ** -0.2


def kde_grid(lo: float, hi: float, bandwidth: float, cfg: KdeConfig) -> np.ndarray:
    pad = cfg.grid_padding * bandwidth
    return np.linspace(lo - pad, hi + pad, cfg.grid_points)


def gaussian_kde_values(x: np.ndarray, grid: np.ndarray, bandwidth: float) -> np.ndarray:
    """Unnormalized-by-grid Gaussian KDE at ``grid``; deterministic summation order."""
    out = np.zeros_like(grid)
    for start in range(0, x.size, _CHUNK):
        z = (grid[:, None] - x[None, start:start + _CHUNK]) / bandwidth
        out += np.exp(-0.5 * z * z).sum(axis=1)
    return out / (x.size * bandwidth * math.sqrt(2.0 * math.pi))


def fit_kde(s, cfg: KdeConfig = KdeConfig(), grid: Optional[np.ndarray] = None) -> Grid:
    """Fit a Gaussian KDE and return it as a :class:`Grid` density.

    The grid defaults to ``grid_points`` nodes over the sample range padded
    by ``grid_padding`` bandwidths; pass ``grid`` to share one grid between
    fits. Values are rescaled so the trapezoid mass is exactly one.
    """
    x = _values(s)
    if x.size < 2:
        raise KdeError("KDE needs at least 2 samples")
    h = cfg.bandwidth if cfg.bandwidth is not None else silverman_bandwidth(x)
    if grid is None:
        grid = kde_grid(float(x.min()), float(x.max()), h, cfg)
    vals = gaussian_kde_values(x, grid, h)
    mass = np.trapezoid(vals, grid)
    if not mass > 0:
        raise KdeError("KDE has no mass on the grid")
    return Grid(grid, vals / mass)
