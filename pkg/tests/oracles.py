"""Independent reference computations used to freeze expected values."""

import cmath
import math

import numpy as np
from scipy import integrate


def piecewise_ce(breaks, levels, beta):
    """Closed form: each constant piece contributes width * level * e^{i beta level}."""
    total = sum((b - a) * l * cmath.exp(1j * beta * l)
                for a, b, l in zip(breaks, breaks[1:], levels))
    return abs(total)


def grid_ce(points, values, beta):
    """Closed form for a piecewise-linear density: per cell h/(p1-p0) * ∫ t e^{i beta t} dt."""
    def anti(t):
        return cmath.exp(1j * beta * t) * (t / (1j * beta) + 1.0 / beta ** 2)

    total = 0j
    for x0, x1, p0, p1 in zip(points, points[1:], values, values[1:]):
        h = x1 - x0
        if abs(p1 - p0) < 1e-9:
            pm = 0.5 * (p0 + p1)
            total += h * pm * cmath.exp(1j * beta * pm)
        else:
            total += h / (p1 - p0) * (anti(p1) - anti(p0))
    return abs(total)


def quadpack_ce(pdf, lo, hi, beta, points=()):
    """Real and imaginary parts integrated separately with QUADPACK."""
    kw = dict(points=list(points) or None, limit=2000, epsabs=1e-13, epsrel=1e-12)
    re = integrate.quad(lambda x: pdf(x) * math.cos(beta * pdf(x)), lo, hi, **kw)[0]
    im = integrate.quad(lambda x: pdf(x) * math.sin(beta * pdf(x)), lo, hi, **kw)[0]
    return abs(complex(re, im))


def discrete_cm(p: dict, q: dict, beta):
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) * cmath.exp(1j * beta * p.get(k, 0.0))
                         - q.get(k, 0.0) * cmath.exp(1j * beta * q.get(k, 0.0))) for k in keys)


def random_piecewise(rng, n_pieces=None, lo=0.0, span=None):
    n = n_pieces or int(rng.integers(2, 8))
    widths = rng.uniform(0.05, 1.0, size=n) * (span or 1.0)
    levels = rng.uniform(0.0, 1.0, size=n)
    levels[rng.integers(n)] += 0.1
    levels = levels / np.dot(levels, widths)
    breaks = lo + np.concatenate([[0.0], np.cumsum(widths)])
    return tuple(breaks.tolist()), tuple(levels.tolist())
