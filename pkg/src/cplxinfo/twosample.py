"""Two-sample permutation test using the complex metric as its statistic."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .comparison import cm
from .distributions import DiscretePmf, SampleSet
from .kde import KdeConfig, fit_kde, kde_grid, silverman_bandwidth

MIN_PERMUTATIONS = 100
MIN_CONTINUOUS_SIZE = 5


class PermTestError(ValueError):
    pass


@dataclass(frozen=True)
class PermTestConfig:
    beta: Optional[float] = None  # None selects 1 / median pooled density
    permutations: int = 1000
    seed: int = 0
    alpha: float = 0.05
    kde: KdeConfig = field(default_factory=KdeConfig)
    discrete: bool = False
    workers: int = 1


@dataclass(frozen=True)
class PermTestResult:
    t_obs: float
    t_perm: tuple[float, ...]
    p_value: float
    p_value_adjusted: float
    beta_used: float
    reject: bool
    seed: int
    alpha: float
    bandwidth: Optional[float]
    grid_points: Optional[int]
    m: int
    n: int
    discrete: bool
    elapsed: float = field(default=0.0, compare=False)

    @property
    def permutations(self) -> int:
        return len(self.t_perm)


def beta_heuristic(pooled_density_values) -> float:
    """Reciprocal of the median density height at the pooled sample points."""
    vals = np.asarray(pooled_density_values, dtype=float)
    if vals.size == 0:
        raise PermTestError("no density values for the beta heuristic")
    med = float(np.median(vals))
    if not med > 0:
        raise PermTestError(f"median density {med} is not positive")
    return 1.0 / med


def empirical_pmf(values: np.ndarray) -> DiscretePmf:
    pts, counts = np.unique(values, return_counts=True)
    return DiscretePmf(tuple(pts.tolist()), tuple((counts / values.size).tolist()))


@dataclass(frozen=True)
class _Statistic:
    """CM between density estimates of two samples; picklable for workers."""

    beta: float
    discrete: bool
    bandwidth: Optional[float] = None
    grid: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    kde: Optional[KdeConfig] = None

    def estimate(self, values: np.ndarray):
        if self.discrete:
            return empirical_pmf(values)
        return fit_kde(values, self.kde, self.grid)

    def __call__(self, xs: np.ndarray, ys: np.ndarray) -> float:
        return cm(self.estimate(xs), self.estimate(ys), self.beta).value


def permutation_indices(seed: int, k: int, size: int) -> np.ndarray:
    """Shuffle for permutation ``k``, seeded by the pair ``(seed, k)`` only."""
    return np.random.default_rng(np.random.SeedSequence([seed, k])).permutation(size)


def _run_block(args) -> list[float]:
    stat, z, m, seed, ks = args
    out = []
    for k in ks:
        perm = permutation_indices(seed, k, z.size)
        out.append(stat(z[perm[:m]], z[perm[m:]]))
    return out


def _null_statistics(stat: _Statistic, z: np.ndarray, m: int, seed: int, K: int,
                     workers: int) -> list[float]:
    if workers <= 1:
        return _run_block((stat, z, m, seed, range(K)))
    blocks = [range(i, K, workers * 4) for i in range(workers * 4)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_run_block, [(stat, z, m, seed, b) for b in blocks]))
    out = [0.0] * K
    for block, vals in zip(blocks, parts):
        for k, v in zip(block, vals):
            out[k] = v
    return out


def resolve_statistic(z: np.ndarray, cfg: PermTestConfig) -> _Statistic:
    """Fix beta, bandwidth and grid from the pooled sample (permutation invariant)."""
    if cfg.discrete:
        beta = cfg.beta
        if beta is None:
            beta = beta_heuristic(empirical_pmf(z).pmf(z))
        return _Statistic(beta=beta, discrete=True)
    h = cfg.kde.bandwidth if cfg.kde.bandwidth is not None else silverman_bandwidth(z)
    kcfg = replace(cfg.kde, bandwidth=h)
    grid = kde_grid(float(z.min()), float(z.max()), h, kcfg)
    beta = cfg.beta
    if beta is None:
        beta = beta_heuristic(fit_kde(z, kcfg, grid).pdf(z))
    return _Statistic(beta=beta, discrete=False, bandwidth=h, grid=grid, kde=kcfg)


def perm_test(x: SampleSet, y: SampleSet, cfg: PermTestConfig = PermTestConfig()) -> PermTestResult:
    """Permutation test of ``P = Q`` with the complex metric between density estimates.

    Densities are Gaussian KDEs sharing one bandwidth and grid (taken from
    the pooled sample), or empirical PMFs in discrete mode. The p-value
    counts permuted statistics at or above the observed one, over ``K``.
    """
    start = time.perf_counter()
    K = cfg.permutations
    if K < MIN_PERMUTATIONS:
        raise PermTestError(f"need at least {MIN_PERMUTATIONS} permutations, got {K}")
    if not 0 < cfg.alpha < 1:
        raise PermTestError("alpha must lie in (0, 1)")
    if cfg.beta is not None and not cfg.beta > 0:
        raise PermTestError("beta must be positive")
    if cfg.seed < 0:
        raise PermTestError("seed must be nonnegative")
    min_size = 1 if cfg.discrete else MIN_CONTINUOUS_SIZE
    if len(x) < min_size or len(y) < min_size:
        raise PermTestError(f"each sample needs at least {min_size} values")

    xv, yv = x.array(), y.array()
    z = np.concatenate([xv, yv])
    stat = resolve_statistic(z, cfg)
    t_obs = stat(xv, yv)
    t_perm = _null_statistics(stat, z, xv.size, cfg.seed, K, cfg.workers)
    count = sum(t >= t_obs for t in t_perm)
    p_value = count / K
    return PermTestResult(
        t_obs=t_obs,
        t_perm=tuple(t_perm),
        p_value=p_value,
        p_value_adjusted=(count + 1) / (K + 1),
        beta_used=stat.beta,
        reject=p_value < cfg.alpha,
        seed=cfg.seed,
        alpha=cfg.alpha,
        bandwidth=stat.bandwidth,
        grid_points=None if cfg.discrete else stat.kde.grid_points,
        m=xv.size,
        n=yv.size,
        discrete=cfg.discrete,
        elapsed=time.perf_counter() - start,
    )
