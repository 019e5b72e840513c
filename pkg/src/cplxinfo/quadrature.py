"""Vectorized adaptive composite Simpson quadrature with an oscillation guard.

All active panels are refined together in numpy, one bisection level per
pass. A panel is accepted once

* its Simpson/half-Simpson discrepancy is below its share of ``tol``
  (share proportional to width), and
* the phase reported by the integrand varies by less than
  ``max_phase_step`` across the panel's sample points.

The second condition matters for integrands like ``p(x) exp(i beta p(x))``,
which oscillate in density space rather than in ``x``: panel width has to
shrink where the density moves fast.

Endpoints are sampled one ulp inside each panel so one-sided limits are used
at jump discontinuities; callers pass jump locations as ``edges``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

DEFAULT_TOL = 1e-10
MAX_PHASE_STEP = math.pi / 8


class QuadratureError(RuntimeError):
    """Adaptive refinement did not converge within the panel budget."""


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error: float
    panels: int


Integrand = Callable[[np.ndarray], "tuple[np.ndarray, Optional[np.ndarray]]"]


def integrate(
    func: Integrand,
    edges,
    tol: float = DEFAULT_TOL,
    max_phase_step: float = MAX_PHASE_STEP,
    min_panels: int = 4,
    max_panels: int = 4_000_000,
    max_levels: int = 80,
) -> QuadResult:
    """Integrate ``func`` over the segments delimited by ``edges``.

    Args:
        func: Maps an array of abscissae to ``(values, phase)``. ``values``
            may be real or complex. ``phase`` is ``None`` or an array whose
            trailing dimensions match ``x`` (extra leading axes allowed, e.g.
            one per density); it drives the oscillation guard.
        edges: Breakpoints; the integral runs from the first to the last and
            no panel straddles an interior one.
        tol: Absolute error target for the whole integral.
        max_phase_step: Largest phase change tolerated inside one panel.
        min_panels: Initial equal subdivision of every segment.
        max_panels: Active-panel budget; exceeding it raises.
        max_levels: Bisection depth limit.

    Returns:
        :class:`QuadResult` with the Richardson-corrected value, the summed
        error estimate, and the number of accepted panels.

    Raises:
        QuadratureError: If the budget or depth limit is exhausted.
    """
    edges = np.unique(np.asarray(edges, dtype=float))
    if edges.size < 2:
        return QuadResult(0.0j, 0.0, 0)
    total_width = edges[-1] - edges[0]
    frac = (np.arange(min_panels + 1) / min_panels)[:, None]
    nodes = edges[:-1] + frac * np.diff(edges)
    a = nodes[:-1].T.ravel()
    b = nodes[1:].T.ravel()
    b[min_panels - 1 :: min_panels] = edges[1:]

    value = 0.0j
    error = 0.0
    accepted = 0
    floor = 64 * np.finfo(float).eps * max(total_width, np.abs(edges).max())
    for _ in range(max_levels):
        m = 0.5 * (a + b)
        xs = np.stack([np.nextafter(a, b), 0.5 * (a + m), m, 0.5 * (m + b), np.nextafter(b, a)])
        fx, phase = func(xs)
        fx = np.asarray(fx)
        h = b - a
        s1 = h / 6.0 * (fx[0] + 4.0 * fx[2] + fx[4])
        s2 = h / 12.0 * (fx[0] + 4.0 * fx[1] + 2.0 * fx[2] + 4.0 * fx[3] + fx[4])
        diff = np.abs(s2 - s1) / 15.0
        ok = diff <= tol * h / total_width
        if phase is not None:
            spread = np.ptp(np.asarray(phase), axis=-2)
            if spread.ndim > 1:
                spread = spread.max(axis=0)
            ok &= spread < max_phase_step
        ok |= h <= floor
        est = s2 + (s2 - s1) / 15.0
        value += complex(np.sum(est[ok]))
        error += float(np.sum(diff[ok]))
        accepted += int(ok.sum())
        if ok.all():
            return QuadResult(value, error, accepted)
        keep = ~ok
        a, m, b = a[keep], m[keep], b[keep]
        if 2 * a.size > max_panels:
            raise QuadratureError(f"adaptive quadrature exceeded {max_panels} panels")
        a, b = np.concatenate([a, m]), np.concatenate([m, b])
        order = np.argsort(a, kind="stable")
        a, b = a[order], b[order]
    raise QuadratureError(f"adaptive quadrature did not converge in {max_levels} levels")
