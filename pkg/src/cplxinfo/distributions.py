"""Discrete and continuous distributions, sampling, and global-phase measures.

Every object here is immutable. Continuous densities share a small protocol:
vectorized ``pdf``/``cdf``, the true ``support``, a finite integration
window ``bounds`` (tails truncated below 1e-12 mass), and the ``breakpoints``
where the density has jumps or kinks so quadrature panels never straddle one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np
from scipy import special

PMF_SUM_TOL = 1e-9
DENSITY_MASS_TOL = 1e-8
NORMAL_TAIL_SIGMAS = 8.5
LAPLACE_TAIL_SCALES = 28.0


class DistributionError(ValueError):
    """Raised for malformed distribution parameters or events."""


# --------------------------------------------------------------------------
# Discrete


@dataclass(frozen=True)
class DiscretePmf:
    """Finite PMF with strictly increasing support points."""

    points: tuple[float, ...]
    masses: tuple[float, ...]

    def __post_init__(self):
        if len(self.points) != len(self.masses) or not self.points:
            raise DistributionError("PMF needs at least one atom")
        if any(b <= a for a, b in zip(self.points, self.points[1:])):
            raise DistributionError("PMF points must be strictly increasing")
        if any(m < 0 for m in self.masses):
            raise DistributionError("PMF masses must be nonnegative")
        if abs(math.fsum(self.masses) - 1.0) > 1e-12:
            raise DistributionError("PMF masses must sum to 1")

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return list(zip(self.points, self.masses))

    def mass_at(self, x: float) -> float:
        i = np.searchsorted(self.points, x)
        if i < len(self.points) and self.points[i] == x:
            return self.masses[i]
        return 0.0

    def pmf(self, x) -> np.ndarray:
        """Mass at each of ``x`` (0 off the atoms)."""
        x = np.asarray(x, dtype=float)
        pts = np.asarray(self.points)
        idx = np.clip(np.searchsorted(pts, x), 0, len(pts) - 1)
        hit = pts[idx] == x
        return np.where(hit, np.asarray(self.masses)[idx], 0.0)

    def probability(self, lo: float, hi: float) -> float:
        return math.fsum(m for x, m in self.atoms if lo <= x <= hi)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        idx = rng.choice(len(self.points), size=n, p=np.asarray(self.masses))
        return np.asarray(self.points)[idx]


def validate_pmf(atoms: Iterable[Sequence[float]]) -> DiscretePmf:
    """Canonicalize ``(point, mass)`` pairs into a :class:`DiscretePmf`.

    Atoms are sorted by point. A mass sum within ``1e-9`` of one is
    renormalized; anything further off is rejected.
    """
    pairs = []
    for atom in atoms:
        if len(atom) != 2:
            raise DistributionError(f"atom must be (point, mass), got {atom!r}")
        x, m = float(atom[0]), float(atom[1])
        if not (math.isfinite(x) and math.isfinite(m)):
            raise DistributionError("atoms must be finite")
        if m < 0:
            raise DistributionError(f"negative mass {m} at point {x}")
        pairs.append((x, m))
    if not pairs:
        raise DistributionError("PMF needs at least one atom")
    pairs.sort()
    for (a, _), (b, _) in zip(pairs, pairs[1:]):
        if a == b:
            raise DistributionError(f"duplicate point {a}")
    total = math.fsum(m for _, m in pairs)
    if abs(total - 1.0) > PMF_SUM_TOL:
        raise DistributionError(f"masses sum to {total:.12g}, expected 1")
    return DiscretePmf(
        tuple(x for x, _ in pairs), tuple(m / total for _, m in pairs)
    )


def bernoulli(p: float) -> DiscretePmf:
    """Two-point PMF on {0, 1} with mass ``p`` at 1 (atoms of zero mass dropped)."""
    if not 0.0 <= p <= 1.0:
        raise DistributionError(f"Bernoulli parameter must be in [0, 1], got {p}")
    atoms = [(0.0, 1.0 - p), (1.0, p)]
    return validate_pmf([a for a in atoms if a[1] > 0])


def point_mass(x: float) -> DiscretePmf:
    return validate_pmf([(x, 1.0)])


# --------------------------------------------------------------------------
# Continuous


class Density:
    """Base class for continuous densities on the real line."""

    def pdf(self, x) -> np.ndarray:
        raise NotImplementedError

    def cdf(self, x) -> np.ndarray:
        raise NotImplementedError

    @property
    def support(self) -> tuple[float, float]:
        raise NotImplementedError

    @property
    def bounds(self) -> tuple[float, float]:
        """Finite integration window; equals ``support`` when that is bounded."""
        return self.support

    def breakpoints(self) -> np.ndarray:
        """Sorted points (including the window ends) where pdf may be non-smooth."""
        return np.asarray(self.bounds, dtype=float)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        raise NotImplementedError

    def probability(self, lo: float, hi: float) -> float:
        return float(self.cdf(hi) - self.cdf(lo))

    def max_density(self) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class Uniform(Density):
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
            raise DistributionError(f"uniform needs finite a < b, got ({self.a}, {self.b})")

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where((x >= self.a) & (x <= self.b), 1.0 / (self.b - self.a), 0.0)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.clip((x - self.a) / (self.b - self.a), 0.0, 1.0)

    @property
    def support(self):
        return (self.a, self.b)

    def sample(self, rng, n):
        return rng.uniform(self.a, self.b, size=n)

    def max_density(self):
        return 1.0 / (self.b - self.a)


@dataclass(frozen=True)
class Normal(Density):
    mu: float
    sigma: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and self.sigma > 0 and math.isfinite(self.sigma)):
            raise DistributionError(f"normal needs sigma > 0, got {self.sigma}")

    def pdf(self, x):
        z = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        return np.exp(-0.5 * z * z) / (math.sqrt(2.0 * math.pi) * self.sigma)

    def cdf(self, x):
        return special.ndtr((np.asarray(x, dtype=float) - self.mu) / self.sigma)

    @property
    def support(self):
        return (-math.inf, math.inf)

    @property
    def bounds(self):
        w = NORMAL_TAIL_SIGMAS * self.sigma
        return (self.mu - w, self.mu + w)

    def breakpoints(self):
        lo, hi = self.bounds
        return np.array([lo, self.mu, hi])

    def sample(self, rng, n):
        return rng.normal(self.mu, self.sigma, size=n)

    def max_density(self):
        return 1.0 / (math.sqrt(2.0 * math.pi) * self.sigma)


@dataclass(frozen=True)
class Laplace(Density):
    mu: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and self.b > 0 and math.isfinite(self.b)):
            raise DistributionError(f"Laplace needs b > 0, got {self.b}")

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(-np.abs(x - self.mu) / self.b) / (2.0 * self.b)

    def cdf(self, x):
        z = (np.asarray(x, dtype=float) - self.mu) / self.b
        return np.where(z < 0, 0.5 * np.exp(np.minimum(z, 0.0)),
                        1.0 - 0.5 * np.exp(-np.maximum(z, 0.0)))

    @property
    def support(self):
        return (-math.inf, math.inf)

    @property
    def bounds(self):
        w = LAPLACE_TAIL_SCALES * self.b
        return (self.mu - w, self.mu + w)

    def breakpoints(self):
        lo, hi = self.bounds
        return np.array([lo, self.mu, hi])

    def sample(self, rng, n):
        return rng.laplace(self.mu, self.b, size=n)

    def max_density(self):
        return 1.0 / (2.0 * self.b)


@dataclass(frozen=True)
class PiecewiseConst(Density):
    """Step density: ``levels[i]`` on ``[breaks[i], breaks[i+1])``."""

    breaks: tuple[float, ...]
    levels: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "breaks", tuple(float(v) for v in self.breaks))
        object.__setattr__(self, "levels", tuple(float(v) for v in self.levels))
        if len(self.breaks) != len(self.levels) + 1 or not self.levels:
            raise DistributionError("piecewise density needs len(breaks) == len(levels) + 1")
        if not all(math.isfinite(v) for v in self.breaks):
            raise DistributionError("breaks must be finite")
        if any(b <= a for a, b in zip(self.breaks, self.breaks[1:])):
            raise DistributionError("breaks must be strictly increasing")
        if any(v < 0 for v in self.levels):
            raise DistributionError("levels must be nonnegative")
        mass = math.fsum(l * w for l, w in zip(self.levels, self.widths))
        if abs(mass - 1.0) > DENSITY_MASS_TOL:
            raise DistributionError(f"piecewise density integrates to {mass:.12g}, expected 1")

    @property
    def widths(self) -> list[float]:
        return [b - a for a, b in zip(self.breaks, self.breaks[1:])]

    def _index(self, x):
        idx = np.searchsorted(self.breaks, x, side="right") - 1
        # the right end point belongs to the last piece
        return np.where(x == self.breaks[-1], len(self.levels) - 1, idx)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        idx = self._index(x)
        inside = (x >= self.breaks[0]) & (x <= self.breaks[-1])
        lv = np.asarray(self.levels)
        return np.where(inside, lv[np.clip(idx, 0, len(lv) - 1)], 0.0)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        cum = np.concatenate([[0.0], np.cumsum(np.asarray(self.levels) * self.widths)])
        idx = np.clip(np.searchsorted(self.breaks, x, side="right") - 1, 0, len(self.levels) - 1)
        lv = np.asarray(self.levels)
        val = cum[idx] + lv[idx] * (x - np.asarray(self.breaks)[idx])
        return np.clip(np.where(x < self.breaks[0], 0.0, np.where(x >= self.breaks[-1], 1.0, val)), 0.0, 1.0)

    @property
    def support(self):
        return (self.breaks[0], self.breaks[-1])

    def breakpoints(self):
        return np.asarray(self.breaks)

    def sample(self, rng, n):
        probs = np.asarray(self.levels) * np.asarray(self.widths)
        probs = probs / probs.sum()
        piece = rng.choice(len(probs), size=n, p=probs)
        lo = np.asarray(self.breaks[:-1])[piece]
        return lo + rng.uniform(size=n) * np.asarray(self.widths)[piece]

    def max_density(self):
        return max(self.levels)


@dataclass(frozen=True)
class Grid(Density):
    """Tabulated density, linearly interpolated and zero outside the grid."""

    points: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        vals = np.array(self.values, dtype=float)
        if pts.ndim != 1 or pts.shape != vals.shape or pts.size < 2:
            raise DistributionError("grid needs matching 1-D points and values (>= 2)")
        if not np.all(np.isfinite(pts)) or not np.all(np.isfinite(vals)):
            raise DistributionError("grid entries must be finite")
        if np.any(np.diff(pts) <= 0):
            raise DistributionError("grid points must be strictly increasing")
        if np.any(vals < 0):
            raise DistributionError("grid values must be nonnegative")
        mass = np.trapezoid(vals, pts)
        if abs(mass - 1.0) > DENSITY_MASS_TOL:
            raise DistributionError(f"grid density integrates to {mass:.12g}, expected 1")
        pts.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)

    def __eq__(self, other):
        return (isinstance(other, Grid) and np.array_equal(self.points, other.points)
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.points.tobytes(), self.values.tobytes()))

    def pdf(self, x):
        return np.interp(np.asarray(x, dtype=float), self.points, self.values, left=0.0, right=0.0)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        pts, vals = self.points, self.values
        cum = np.concatenate([[0.0], np.cumsum(0.5 * (vals[1:] + vals[:-1]) * np.diff(pts))])
        i = np.clip(np.searchsorted(pts, x, side="right") - 1, 0, pts.size - 2)
        t = x - pts[i]
        slope = (vals[i + 1] - vals[i]) / (pts[i + 1] - pts[i])
        val = cum[i] + vals[i] * t + 0.5 * slope * t * t
        return np.clip(np.where(x <= pts[0], 0.0, np.where(x >= pts[-1], 1.0, val)), 0.0, 1.0)

    @property
    def support(self):
        return (float(self.points[0]), float(self.points[-1]))

    def breakpoints(self):
        return self.points

    def sample(self, rng, n):
        pts, vals = self.points, self.values
        widths = np.diff(pts)
        cell_mass = 0.5 * (vals[1:] + vals[:-1]) * widths
        cell = rng.choice(widths.size, size=n, p=cell_mass / cell_mass.sum())
        u = rng.uniform(size=n)
        f0, f1, w = vals[cell], vals[cell + 1], widths[cell]
        # invert the quadratic cell CDF  f0*t + (f1-f0)*t^2/(2w) = u*(f0+f1)*w/2
        slope = (f1 - f0) / w
        target = u * cell_mass[cell]
        with np.errstate(divide="ignore", invalid="ignore"):
            disc = np.sqrt(np.maximum(f0 * f0 + 2.0 * slope * target, 0.0))
            t = np.where(np.abs(slope) > 1e-300, 2.0 * target / (f0 + disc), target / np.where(f0 > 0, f0, 1.0))
        t = np.where(np.isfinite(t), np.clip(t, 0.0, w), u * w)
        return pts[cell] + t

    def max_density(self):
        return float(self.values.max())


@dataclass(frozen=True)
class Mixture(Density):
    """Weighted sum of densities; ``disjoint=True`` asserts non-overlapping supports."""

    weights: tuple[float, ...]
    components: tuple[Density, ...]
    disjoint: bool = False

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.weights) != len(self.components) or not self.components:
            raise DistributionError("mixture needs one weight per component")
        if any(not isinstance(c, Density) for c in self.components):
            raise DistributionError("mixture components must be continuous densities")
        if any(w < 0 for w in self.weights):
            raise DistributionError("mixture weights must be nonnegative")
        total = math.fsum(self.weights)
        if abs(total - 1.0) > PMF_SUM_TOL:
            raise DistributionError(f"mixture weights sum to {total:.12g}, expected 1")
        object.__setattr__(self, "weights", tuple(w / total for w in self.weights))
        if self.disjoint:
            spans = sorted(c.support for c in self.components)
            for (_, hi), (lo, _) in zip(spans, spans[1:]):
                if lo < hi:
                    raise DistributionError("mixture components flagged disjoint overlap")

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for w, c in zip(self.weights, self.components):
            out = out + w * c.pdf(x)
        return out

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return sum(w * c.cdf(x) for w, c in zip(self.weights, self.components))

    @property
    def support(self):
        return (min(c.support[0] for c in self.components),
                max(c.support[1] for c in self.components))

    @property
    def bounds(self):
        return (min(c.bounds[0] for c in self.components),
                max(c.bounds[1] for c in self.components))

    def breakpoints(self):
        return np.unique(np.concatenate([c.breakpoints() for c in self.components]))

    def sample(self, rng, n):
        which = rng.choice(len(self.weights), size=n, p=np.asarray(self.weights))
        out = np.empty(n)
        for i, comp in enumerate(self.components):
            mask = which == i
            k = int(mask.sum())
            if k:
                out[mask] = comp.sample(rng, k)
        return out

    def max_density(self):
        if self.disjoint:
            return max(w * c.max_density() for w, c in zip(self.weights, self.components))
        return sum(w * c.max_density() for w, c in zip(self.weights, self.components))


Distribution = Union[DiscretePmf, Density]


def pdf_eval(d: Density, x: float) -> float:
    return float(d.pdf(x))


def translate(d: Distribution, offset: float) -> Distribution:
    """Distribution of ``X + offset``."""
    if isinstance(d, DiscretePmf):
        return DiscretePmf(tuple(x + offset for x in d.points), d.masses)
    if isinstance(d, Uniform):
        return Uniform(d.a + offset, d.b + offset)
    if isinstance(d, Normal):
        return Normal(d.mu + offset, d.sigma)
    if isinstance(d, Laplace):
        return Laplace(d.mu + offset, d.b)
    if isinstance(d, PiecewiseConst):
        return PiecewiseConst(tuple(b + offset for b in d.breaks), d.levels)
    if isinstance(d, Grid):
        return Grid(d.points + offset, d.values)
    if isinstance(d, Mixture):
        return Mixture(d.weights, tuple(translate(c, offset) for c in d.components), d.disjoint)
    raise TypeError(f"cannot translate {type(d).__name__}")


def scale(d: Density, a: float) -> Density:
    """Density ``a * p(a * x)``, i.e. the law of ``X / a`` for ``a > 0``."""
    if a <= 0:
        raise DistributionError("scale factor must be positive")
    if isinstance(d, Uniform):
        return Uniform(d.a / a, d.b / a)
    if isinstance(d, Normal):
        return Normal(d.mu / a, d.sigma / a)
    if isinstance(d, Laplace):
        return Laplace(d.mu / a, d.b / a)
    if isinstance(d, PiecewiseConst):
        return PiecewiseConst(tuple(b / a for b in d.breaks), tuple(l * a for l in d.levels))
    if isinstance(d, Grid):
        return Grid(d.points / a, d.values * a)
    if isinstance(d, Mixture):
        return Mixture(d.weights, tuple(scale(c, a) for c in d.components), d.disjoint)
    raise TypeError(f"cannot scale {type(d).__name__}")


# --------------------------------------------------------------------------
# Samples


@dataclass(frozen=True)
class SampleSet:
    values: tuple[float, ...]
    label: str = ""

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise DistributionError(f"sample set {self.label!r} is empty")
        if not all(math.isfinite(v) for v in vals):
            raise DistributionError(f"sample set {self.label!r} has non-finite values")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def array(self) -> np.ndarray:
        return np.asarray(self.values)


def draw_samples(d: Distribution, n: int, seed: int, label: str = "") -> SampleSet:
    """Draw ``n`` i.i.d. values; a pure function of ``(d, n, seed)``."""
    if n < 1:
        raise DistributionError("need n >= 1 samples")
    rng = np.random.default_rng(seed)
    return SampleSet(tuple(d.sample(rng, n).tolist()), label or type(d).__name__)


# --------------------------------------------------------------------------
# Global phase


@dataclass(frozen=True)
class PhasedMeasure:
    """Probability measure rotated by a constant phase ``theta``."""

    base: Distribution
    theta: float = 0.0


def phased_event_measure(q: PhasedMeasure, event) -> complex:
    """``e^{i theta} P(event)``.

    ``event`` is either a closed interval ``(lo, hi)`` or a set/list of points.
    """
    if isinstance(event, (set, frozenset, list)):
        if isinstance(q.base, DiscretePmf):
            prob = math.fsum(q.base.mass_at(float(x)) for x in set(event))
        else:
            prob = 0.0
    else:
        lo, hi = (float(v) for v in event)
        if lo > hi:
            raise DistributionError(f"malformed interval [{lo}, {hi}]")
        prob = q.base.probability(lo, hi)
    return cmath.exp(1j * q.theta) * prob
