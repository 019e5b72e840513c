"""Distribution specs (JSON or inline shorthand) and sample-file reading."""

from __future__ import annotations

import csv
import io
import json
import re
from pathlib import Path

from .distributions import (
    DiscretePmf,
    Distribution,
    DistributionError,
    Grid,
    Laplace,
    Mixture,
    Normal,
    PiecewiseConst,
    SampleSet,
    Uniform,
    bernoulli,
    point_mass,
    validate_pmf,
)

_SHORTHAND = re.compile(r"^\s*([a-z]+)\s*\((.*)\)\s*$")


def _num(spec: dict, key: str) -> float:
    try:
        return float(spec[key])
    except KeyError:
        raise DistributionError(f"{spec.get('kind')!r} spec is missing {key!r}") from None
    except (TypeError, ValueError):
        raise DistributionError(f"{key!r} must be a number") from None


def from_spec(spec: dict) -> Distribution:
    """Build a distribution from a JSON-style dict such as ``{"kind": "normal", ...}``."""
    if not isinstance(spec, dict):
        raise DistributionError("distribution spec must be a JSON object")
    kind = spec.get("kind")
    if kind == "normal":
        return Normal(_num(spec, "mu"), _num(spec, "sigma"))
    if kind == "uniform":
        return Uniform(_num(spec, "a"), _num(spec, "b"))
    if kind == "laplace":
        return Laplace(_num(spec, "mu"), _num(spec, "b"))
    if kind == "piecewise":
        return PiecewiseConst(tuple(spec["breaks"]), tuple(spec["levels"]))
    if kind == "pmf":
        return validate_pmf(spec["atoms"])
    if kind == "grid":
        return Grid(spec["points"], spec["values"])
    if kind == "mixture":
        comps = tuple(from_spec(c) for c in spec["components"])
        return Mixture(tuple(spec["weights"]), comps, bool(spec.get("disjoint", False)))
    raise DistributionError(f"unknown distribution kind {kind!r}")


def to_spec(d: Distribution) -> dict:
    if isinstance(d, DiscretePmf):
        return {"kind": "pmf", "atoms": [list(a) for a in d.atoms]}
    if isinstance(d, Normal):
        return {"kind": "normal", "mu": d.mu, "sigma": d.sigma}
    if isinstance(d, Uniform):
        return {"kind": "uniform", "a": d.a, "b": d.b}
    if isinstance(d, Laplace):
        return {"kind": "laplace", "mu": d.mu, "b": d.b}
    if isinstance(d, PiecewiseConst):
        return {"kind": "piecewise", "breaks": list(d.breaks), "levels": list(d.levels)}
    if isinstance(d, Grid):
        return {"kind": "grid", "points": d.points.tolist(), "values": d.values.tolist()}
    if isinstance(d, Mixture):
        return {"kind": "mixture", "weights": list(d.weights), "disjoint": d.disjoint,
                "components": [to_spec(c) for c in d.components]}
    raise TypeError(type(d).__name__)


def _shorthand(name: str, args: list[float]) -> Distribution:
    table = {
        "bern": (1, lambda a: bernoulli(a[0])),
        "point": (1, lambda a: point_mass(a[0])),
        "normal": (2, lambda a: Normal(*a)),
        "uniform": (2, lambda a: Uniform(*a)),
        "laplace": (2, lambda a: Laplace(*a)),
    }
    if name not in table:
        raise DistributionError(f"unknown shorthand {name!r}")
    arity, build = table[name]
    if len(args) != arity:
        raise DistributionError(f"{name}() takes {arity} argument(s)")
    return build(args)


def parse_distribution(text: str) -> Distribution:
    """Accept inline JSON, a path to a JSON file, or ``bern(p)``-style shorthand."""
    text = text.strip()
    m = _SHORTHAND.match(text)
    if m:
        try:
            args = [float(v) for v in m.group(2).split(",") if v.strip()]
        except ValueError:
            raise DistributionError(f"bad shorthand arguments in {text!r}") from None
        return _shorthand(m.group(1), args)
    if not text.startswith("{"):
        path = Path(text)
        if not path.is_file():
            raise DistributionError(f"not a spec, shorthand, or file: {text!r}")
        text = path.read_text()
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DistributionError(f"invalid distribution JSON: {exc}") from None
    try:
        return from_spec(spec)
    except (KeyError, TypeError) as exc:
        raise DistributionError(f"malformed distribution spec: {exc}") from None


def parse_samples(text: str, label: str = "") -> SampleSet:
    """One value per line, or CSV with a ``value`` column."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise DistributionError(f"sample input {label!r} is empty")
    try:
        float(lines[0])
        header = False
    except ValueError:
        header = True
    try:
        if header:
            reader = csv.DictReader(io.StringIO("\n".join(lines)))
            if "value" not in (reader.fieldnames or []):
                raise DistributionError(f"{label!r}: CSV has no 'value' column")
            values = [float(row["value"]) for row in reader]
        else:
            values = [float(v) for v in lines]
    except ValueError as exc:
        raise DistributionError(f"{label!r}: {exc}") from None
    return SampleSet(tuple(values), label)


def read_samples(path: str) -> SampleSet:
    return parse_samples(Path(path).read_text(), label=path)
