"""Monte-Carlo vs quadrature grid of complex entropies of centered normals."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .distributions import Normal
from .entropy import CeEstimate, ce_monte_carlo, ce_quadrature

TABLE2_BETAS = (0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0)
TABLE2_SIGMAS = (0.01, 0.1, 1.0, 10.0, 50.0, 100.0)
CSV_COLUMNS = ("beta", "sigma", "ce_mc", "ce_mc_stderr", "ce_quadrature")


@dataclass(frozen=True)
class Table2Cell:
    beta: float
    sigma: float
    mc: CeEstimate
    quad: CeEstimate


def cell_seed(seed: int, row: int, col: int) -> int:
    return int(np.random.SeedSequence([seed, row, col]).generate_state(1)[0])


def table2(n: int = 1000, seed: int = 0) -> list[Table2Cell]:
    """Row-major (beta outer, sigma inner) grid of MC and quadrature estimates."""
    if n < 100:
        raise ValueError("table2 needs at least 100 samples per cell")
    cells = []
    for i, beta in enumerate(TABLE2_BETAS):
        for j, sigma in enumerate(TABLE2_SIGMAS):
            d = Normal(0.0, sigma)
            mc = ce_monte_carlo(d, beta, n, cell_seed(seed, i, j))
            cells.append(Table2Cell(beta, sigma, mc, ce_quadrature(d, beta)))
    return cells


def _g(x: float) -> str:
    return format(x, ".9g")


def table2_csv(cells: list[Table2Cell]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for c in cells:
        w.writerow([_g(c.beta), _g(c.sigma), _g(c.mc.value), _g(c.mc.stderr), _g(c.quad.value)])
    return buf.getvalue()


def table2_wide_csv(cells: list[Table2Cell]) -> str:
    """Monte-Carlo values laid out with one row per beta and one column per sigma."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["beta"] + [_g(s) for s in TABLE2_SIGMAS])
    by_key = {(c.beta, c.sigma): c for c in cells}
    for beta in TABLE2_BETAS:
        w.writerow([_g(beta)] + [_g(by_key[beta, s].mc.value) for s in TABLE2_SIGMAS])
    return buf.getvalue()
