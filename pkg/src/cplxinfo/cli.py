"""``cplxinfo`` command-line interface.

Exit codes: 0 success (or H0 retained), 1 usage error, 2 data error,
3 H0 rejected by ``twosample``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, TextIO

from .asymptotics import gaussian_ce_asymptotic
from .comparison import KindMismatch, cd, cm, tv
from .distributions import DiscretePmf, DistributionError
from .entropy import complex_entropy
from .harness import table2, table2_csv, table2_wide_csv
from .kde import KdeConfig, KdeError
from .quadrature import QuadratureError
from .specs import parse_distribution, read_samples, to_spec
from .twosample import PermTestConfig, PermTestError, perm_test

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_REJECT = 0, 1, 2, 3
DATA_ERRORS = (DistributionError, KdeError, PermTestError, QuadratureError, KindMismatch,
               ValueError, OSError)

CD_NOTE = (
    "Note: CD is zero whenever p - q is constant on the support of p, so "
    "nested supports (e.g. Uniform(0,1) vs Uniform(0,2)) give CD = 0 with P != Q."
)
TWOSAMPLE_NOTE = (
    "The p-value is the fraction of permuted statistics >= the observed one; "
    "it is one-tailed in the (nonnegative) statistic even though the "
    "procedure it follows calls it two-sided. p_value_adjusted = (count+1)/(K+1)."
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _positive_or_auto(text: str) -> Optional[float]:
    if text == "auto":
        return None
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or a number, got {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _num(x):
    """Round to 9 significant digits; non-finite values become None."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if not math.isfinite(x):
        return None
    return float(format(x, ".9g"))


def _emit(record: dict, as_json: bool, out: TextIO) -> None:
    clean = {k: (_num(v) if not isinstance(v, (dict, list)) else v) for k, v in record.items()}
    if as_json:
        out.write(json.dumps(clean) + "\n")
        return
    width = max(len(k) for k in clean)
    for k, v in clean.items():
        if isinstance(v, float):
            v = format(v, ".9g")
        elif isinstance(v, (dict, list)):
            v = json.dumps(v)
        elif v is None:
            v = "inf" if k == "value" else "-"
        out.write(f"{k.ljust(width)} : {v}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cplxinfo", description="Complex entropy, divergence and metric tools.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ce = sub.add_parser("ce", help="complex entropy of one distribution")
    ce.add_argument("--dist", required=True, help="JSON spec, spec file, or shorthand")
    ce.add_argument("--beta", type=float, required=True)
    ce.add_argument("--method", choices=["quad", "mc"], default="quad",
                    help="quad: exact sum for PMFs, adaptive quadrature for densities")
    ce.add_argument("--samples", type=int, default=1000)
    ce.add_argument("--seed", type=int, default=0)
    ce.add_argument("--degenerate-ce", choices=["zero", "one"], default="one",
                    help="value reported for single-atom PMFs")
    ce.add_argument("--json", action="store_true")

    for name, helptext in (("cd", "complex divergence CD(P||Q)"),
                           ("cm", "complex metric CM(P,Q)"),
                           ("tv", "total variation distance")):
        sp = sub.add_parser(name, help=helptext, epilog=CD_NOTE if name == "cd" else None)
        sp.add_argument("--p", required=True)
        sp.add_argument("--q", required=True)
        sp.add_argument("--beta", type=float, required=name != "tv", default=None)
        sp.add_argument("--json", action="store_true")

    asym = sub.add_parser("asymptotic-ce", help="small-sigma Gaussian complex entropy")
    asym.add_argument("--sigma", type=float, required=True)
    asym.add_argument("--beta", type=float, required=True)
    asym.add_argument("--json", action="store_true")

    ts = sub.add_parser("twosample", help="permutation two-sample test", epilog=TWOSAMPLE_NOTE)
    ts.add_argument("--x", required=True, help="sample file (one value per line or CSV 'value')")
    ts.add_argument("--y", required=True)
    ts.add_argument("--beta", type=_positive_or_auto, default=None)
    ts.add_argument("--permutations", type=int, default=1000)
    ts.add_argument("--seed", type=int, default=0)
    ts.add_argument("--alpha", type=float, default=0.05)
    ts.add_argument("--discrete", action="store_true")
    ts.add_argument("--bandwidth", type=_positive_or_auto, default=None)
    ts.add_argument("--grid", type=int, default=512)
    ts.add_argument("--workers", type=int, default=1)
    ts.add_argument("--null-out", help="write permuted statistics as CSV")
    ts.add_argument("--json", action="store_true")

    t2 = sub.add_parser("table2", help="MC vs quadrature CE grid for centered normals (CSV)")
    t2.add_argument("--samples", type=int, default=1000)
    t2.add_argument("--seed", type=int, default=0)
    t2.add_argument("--wide", action="store_true", help="beta rows x sigma columns of MC values")
    t2.add_argument("--out", help="write CSV here instead of stdout")
    t2.add_argument("--json", action="store_true")
    return p


def _cmd_ce(a, out):
    d = parse_distribution(a.dist)
    est = complex_entropy(d, a.beta, method=a.method, n=a.samples, seed=a.seed,
                          degenerate=a.degenerate_ce)
    rec = {"value": est.value, "method": est.method, "beta": est.beta, "stderr": est.stderr}
    if est.method == "monte-carlo":
        rec.update(samples=est.n_samples, seed=est.seed)
    if isinstance(d, DiscretePmf):
        rec["degenerate_ce"] = a.degenerate_ce
    rec["dist"] = to_spec(d)
    _emit(rec, a.json, out)
    return EXIT_OK


def _cmd_pair(a, out):
    p, q = parse_distribution(a.p), parse_distribution(a.q)
    if a.command == "cd":
        r = cd(p, q, a.beta)
        rec = {"value": r.value, "amplitude_modulus": r.amplitude_modulus,
               "infinite": r.infinite, "beta": r.beta}
    elif a.command == "cm":
        r = cm(p, q, a.beta)
        rec = {"value": r.value, "beta": r.beta}
    else:
        rec = {"value": tv(p, q)}
    rec.update(p=to_spec(p), q=to_spec(q))
    _emit(rec, a.json, out)
    return EXIT_OK


def _cmd_asym(a, out):
    r = gaussian_ce_asymptotic(a.sigma, a.beta)
    _emit({"value": r.value, "lambda": r.lam, "regime_ok": r.regime_ok,
           "sigma": a.sigma, "beta": a.beta}, a.json, out)
    return EXIT_OK


def _cmd_twosample(a, out):
    x, y = read_samples(a.x), read_samples(a.y)
    cfg = PermTestConfig(
        beta=a.beta, permutations=a.permutations, seed=a.seed, alpha=a.alpha,
        kde=KdeConfig(bandwidth=a.bandwidth, grid_points=a.grid),
        discrete=a.discrete, workers=a.workers,
    )
    r = perm_test(x, y, cfg)
    if a.null_out:
        Path(a.null_out).write_text(
            "k,t_perm\n" + "".join(f"{k},{t:.9g}\n" for k, t in enumerate(r.t_perm, 1)))
    rec = {
        "t_obs": r.t_obs, "p_value": r.p_value, "p_value_adjusted": r.p_value_adjusted,
        "reject": r.reject, "alpha": r.alpha, "beta_used": r.beta_used,
        "beta_mode": "auto" if a.beta is None else "fixed",
        "bandwidth": r.bandwidth, "grid": r.grid_points, "permutations": r.permutations,
        "seed": r.seed, "m": r.m, "n": r.n, "discrete": r.discrete,
    }
    _emit(rec, a.json, out)
    return EXIT_REJECT if r.reject else EXIT_OK


def _cmd_table2(a, out):
    cells = table2(a.samples, a.seed)
    if a.json:
        rows = [{"beta": c.beta, "sigma": c.sigma, "ce_mc": _num(c.mc.value),
                 "ce_mc_stderr": _num(c.mc.stderr), "ce_quadrature": _num(c.quad.value)}
                for c in cells]
        text = json.dumps({"samples": a.samples, "seed": a.seed, "cells": rows}) + "\n"
    else:
        text = table2_wide_csv(cells) if a.wide else table2_csv(cells)
    if a.out:
        Path(a.out).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


COMMANDS = {"ce": _cmd_ce, "cd": _cmd_pair, "cm": _cmd_pair, "tv": _cmd_pair,
            "asymptotic-ce": _cmd_asym, "twosample": _cmd_twosample, "table2": _cmd_table2}


def run(argv, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except DATA_ERRORS as exc:
        err.write(f"cplxinfo {args.command}: {exc}\n")
        return EXIT_DATA


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
