import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cplxinfo.asymptotics import gaussian_ce_asymptotic
from cplxinfo.distributions import (
    Grid, Laplace, Mixture, Normal, PiecewiseConst, Uniform, bernoulli, point_mass, scale,
    translate, validate_pmf,
)
from cplxinfo.entropy import ce_discrete, ce_monte_carlo, ce_quadrature, complex_entropy

from oracles import grid_ce, piecewise_ce, quadpack_ce, random_piecewise

HALF_THREE_HALVES = PiecewiseConst((0, 0.5, 1), (0.5, 1.5))


# discrete ---------------------------------------------------------------

def test_ce_discrete_uniform_four_atoms():
    pmf = validate_pmf([(i, 0.25) for i in range(4)])
    assert ce_discrete(pmf, 3).value == pytest.approx(1.0, abs=1e-15)


def test_ce_discrete_fair_bernoulli():
    assert ce_discrete(bernoulli(0.5), 7).value == pytest.approx(1.0, abs=1e-15)


def test_ce_discrete_bernoulli_03():
    # |0.3 e^{0.3i} + 0.7 e^{0.7i}| evaluated by hand: 0.98328308...
    assert ce_discrete(bernoulli(0.3), 1).value == pytest.approx(0.98328, abs=1e-5)
    assert ce_discrete(bernoulli(0.3), 1).value == pytest.approx(abs(
        0.3 * complex(math.cos(0.3), math.sin(0.3)) + 0.7 * complex(math.cos(0.7), math.sin(0.7))),
        abs=1e-15)


@pytest.mark.parametrize("beta", [0.1, 1.0, 17.0])
def test_ce_discrete_degenerate(beta):
    assert ce_discrete(point_mass(2.0), beta).value == 1.0
    assert ce_discrete(point_mass(2.0), beta, degenerate="zero").value == 0.0


def test_ce_rejects_nonpositive_beta():
    with pytest.raises(ValueError):
        ce_discrete(bernoulli(0.3), 0.0)
    with pytest.raises(ValueError):
        ce_quadrature(Uniform(0, 1), -1.0)
    with pytest.raises(ValueError):
        ce_monte_carlo(Uniform(0, 1), 0.0, 100, 0)


# quadrature -------------------------------------------------------------

@pytest.mark.parametrize("a, b", [(0, 1), (-3, 7), (2, 2.001)])
@pytest.mark.parametrize("beta", [0.01, 1, 100])
def test_ce_uniform_is_one(a, b, beta):
    assert abs(ce_quadrature(Uniform(a, b), beta).value - 1.0) < 1e-12


def test_ce_piecewise_example():
    assert abs(ce_quadrature(HALF_THREE_HALVES, 2 * math.pi).value - 1.0) < 1e-12
    assert ce_quadrature(HALF_THREE_HALVES, math.pi).value == pytest.approx(0.5, abs=1e-12)


def test_ce_normal_near_table_value():
    assert ce_quadrature(Normal(0, 1), 1).value == pytest.approx(0.9937, abs=0.01)


def test_ce_narrow_normal_vs_asymptotic():
    value = ce_quadrature(Normal(0, 1e-4), 1).value
    assert value == pytest.approx(0.01583, rel=0.05)
    assert value == pytest.approx(gaussian_ce_asymptotic(1e-4, 1).value, rel=0.05)


@pytest.mark.parametrize("d, points", [
    (Normal(0, 1), [0]),
    (Normal(1, 0.2), [1]),
    (Laplace(0.5, 0.7), [0.5]),
    (Mixture((0.4, 0.6), (Normal(-1, 0.5), Laplace(1, 0.3))), [-1, 1]),
])
@pytest.mark.parametrize("beta", [0.5, 3.0, 12.0])
def test_ce_quadrature_matches_quadpack(d, points, beta):
    lo, hi = d.bounds
    expected = quadpack_ce(lambda x: float(d.pdf(x)), lo, hi, beta, points)
    assert abs(ce_quadrature(d, beta).value - expected) < 1e-8


@pytest.mark.parametrize("seed", range(5))
def test_ce_quadrature_matches_piecewise_closed_form(seed):
    rng = np.random.default_rng(seed)
    breaks, levels = random_piecewise(rng)
    beta = float(rng.uniform(0.1, 30))
    got = ce_quadrature(PiecewiseConst(breaks, levels), beta).value
    assert abs(got - piecewise_ce(breaks, levels, beta)) < 1e-12


def test_ce_quadrature_matches_grid_closed_form():
    xs = np.linspace(-1, 1, 97)
    vals = np.exp(-4 * xs ** 2) + 0.1
    vals = vals / np.trapezoid(vals, xs)
    for beta in (0.7, 5.0, 40.0):
        got = ce_quadrature(Grid(xs, vals), beta).value
        assert abs(got - grid_ce(xs, vals, beta)) < 1e-9


# invariants -------------------------------------------------------------

DISTS = [
    Normal(0, 1), Laplace(0, 0.5), HALF_THREE_HALVES,
    Mixture((0.3, 0.7), (Uniform(0, 1), Uniform(3, 3.5)), disjoint=True),
]


@settings(max_examples=25, deadline=None)
@given(idx=st.integers(0, len(DISTS) - 1), beta=st.floats(0.01, 50), shift=st.floats(-100, 100))
def test_translation_invariance(idx, beta, shift):
    d = DISTS[idx]
    assert abs(ce_quadrature(translate(d, shift), beta).value - ce_quadrature(d, beta).value) < 1e-8


@settings(max_examples=25, deadline=None)
@given(idx=st.integers(0, len(DISTS) - 1), beta=st.floats(0.01, 20), a=st.floats(0.1, 10))
def test_scaling_identity(idx, beta, a):
    d = DISTS[idx]
    assert abs(ce_quadrature(scale(d, a), beta).value - ce_quadrature(d, a * beta).value) < 1e-8


@settings(max_examples=40, deadline=None)
@given(idx=st.integers(0, len(DISTS) - 1), beta=st.floats(1e-3, 200))
def test_bounds(idx, beta):
    assert 0.0 <= ce_quadrature(DISTS[idx], beta).value <= 1.0 + 1e-9


@pytest.mark.parametrize("d", DISTS + [bernoulli(0.2)], ids=lambda d: type(d).__name__)
def test_small_beta_limit(d):
    assert complex_entropy(d, 1e-6).value > 1 - 1e-3
    values = [complex_entropy(d, b).value for b in (1.0, 0.1, 0.01, 1e-4)]
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


def test_tv_continuity_bernoulli_to_point_mass():
    beta = 2.0
    gaps = [1 - ce_discrete(bernoulli(1.0 / n), beta).value for n in (10, 100, 1000, 10_000)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-3


def test_uniform_on_two_equal_level_intervals():
    d = PiecewiseConst((0, 1, 2, 3), (0.5, 0.0, 0.5))
    for beta in (0.3, 4.0, 50.0):
        assert abs(ce_quadrature(d, beta).value - 1.0) < 1e-12


# monte carlo ------------------------------------------------------------

def test_mc_uniform_is_exact():
    est = ce_monte_carlo(Uniform(0, 1), 5, 1000, seed=3)
    assert est.value == pytest.approx(1.0, abs=1e-15)
    assert est.stderr < 1e-15


def test_mc_narrow_normal_near_table():
    est = ce_monte_carlo(Normal(0, 0.01), 0.1, 1000, seed=5)
    assert abs(est.value - 0.53524514) < 0.08


def test_mc_tiny_beta():
    assert ce_monte_carlo(Normal(0, 1), 0.01, 1000, seed=1).value >= 0.9999


def test_mc_is_deterministic_and_pmf_capable():
    a = ce_monte_carlo(bernoulli(0.3), 1.0, 500, seed=9)
    assert a == ce_monte_carlo(bernoulli(0.3), 1.0, 500, seed=9)
    assert abs(a.value - ce_discrete(bernoulli(0.3), 1.0).value) < 4 * a.stderr + 1e-12


def test_mc_requires_two_samples():
    with pytest.raises(ValueError):
        ce_monte_carlo(Normal(0, 1), 1.0, 1, seed=0)
