import math

import numpy as np
import pytest
from scipy import integrate as sp_integrate

from cplxinfo.quadrature import QuadratureError, integrate


def _plain(f):
    return lambda x: (f(x), None)


@pytest.mark.parametrize("f, a, b, exact", [
    (np.sin, 0.0, math.pi, 2.0),
    (np.exp, -1.0, 2.0, math.e ** 2 - math.e ** -1),
    (lambda x: np.sqrt(np.abs(x)), -1.0, 1.0, 4.0 / 3.0),
])
def test_smooth_and_kinked_integrals(f, a, b, exact):
    r = integrate(_plain(f), [a, b])
    assert abs(r.value.real - exact) < 1e-9


def test_jump_at_edge_uses_one_sided_values():
    step = lambda x: np.where(x < 0.5, 1.0, 3.0)
    r = integrate(_plain(step), [0.0, 0.5, 1.0])
    assert r.value.real == pytest.approx(2.0, abs=1e-14)


def test_oscillation_guard_controls_panel_width():
    beta = 200.0
    f = lambda x: (np.exp(1j * beta * x), beta * x)
    r = integrate(f, [0.0, 1.0])
    exact = (np.exp(1j * beta) - 1) / (1j * beta)
    assert abs(r.value - exact) < 1e-10
    assert r.panels >= beta / (math.pi / 8)


def test_matches_quadpack_on_oscillatory_density_integrand():
    beta, sigma = 3.0, 0.05
    pdf = lambda x: np.exp(-0.5 * (x / sigma) ** 2) / (math.sqrt(2 * math.pi) * sigma)
    f = lambda x: (pdf(x) * np.exp(1j * beta * pdf(x)), beta * pdf(x))
    r = integrate(f, [-8.5 * sigma, 0.0, 8.5 * sigma])
    re = sp_integrate.quad(lambda x: pdf(x) * math.cos(beta * pdf(x)), -1, 1, points=[0], limit=500,
                           epsabs=1e-13)[0]
    im = sp_integrate.quad(lambda x: pdf(x) * math.sin(beta * pdf(x)), -1, 1, points=[0], limit=500,
                           epsabs=1e-13)[0]
    assert abs(r.value - complex(re, im)) < 1e-9


def test_budget_exhaustion_raises():
    f = lambda x: (np.sin(1.0 / (x + 1e-300)), 1.0 / (x + 1e-300))
    with pytest.raises(QuadratureError):
        integrate(f, [0.0, 1.0], max_panels=10_000)
