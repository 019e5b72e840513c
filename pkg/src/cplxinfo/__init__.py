"""Complex-valued information measures for probability distributions."""

from .asymptotics import AsymptoticCe, gaussian_ce_asymptotic
from .comparison import DivergenceResult, KindMismatch, MetricResult, cd, cm, tv
from .distributions import (
    DiscretePmf,
    Density,
    DistributionError,
    Grid,
    Laplace,
    Mixture,
    Normal,
    PhasedMeasure,
    PiecewiseConst,
    SampleSet,
    Uniform,
    bernoulli,
    draw_samples,
    pdf_eval,
    phased_event_measure,
    point_mass,
    scale,
    translate,
    validate_pmf,
)
from .entropy import CeEstimate, ce_discrete, ce_monte_carlo, ce_quadrature, complex_entropy
from .harness import table2
from .kde import KdeConfig, fit_kde, silverman_bandwidth
from .quadrature import QuadratureError
from .twosample import PermTestConfig, PermTestResult, beta_heuristic, perm_test

__version__ = "0.1.0"
