"""Chart files: JSON documents describing a chart plus run options.

Schema "logjet-chart/1":

    {
      "format": "logjet-chart/1",
      "ambient_rank": 2,
      "monoid_generators": [[1, 0], [0, 1]],   // omit or null: ordinary chart
      "basis": [0, 1],                          // optional generator indices
      "equations": ["x1 + x2 - 1"],
      "mode": "log",                            // optional, validated
      "membership_cap": 20,                     // optional
      "budgets": {"pairs": 50000, "degree": 40} // optional
    }
"""

import json
from dataclasses import dataclass

from .chart import Chart
from .dimension import Budgets
from .errors import (ChartParseError, ExponentError, ExpressionSyntaxError,
                     ModeMismatchError, MonoidError, SupportError)
from .monoid import AffineMonoid

FORMAT = "logjet-chart/1"


@dataclass(frozen=True)
class ChartFileOptions:
    budgets: object = None      # Budgets or None
    mode: str = None


def _field(doc, name, kind, required=False, default=None):
    if name not in doc or doc[name] is None:
        if required:
            raise ChartParseError(f"missing field {name!r}")
        return default
    value = doc[name]
    if kind is int and (not isinstance(value, int) or isinstance(value, bool)):
        raise ChartParseError(f"field {name!r} must be an integer")
    if kind is list and not isinstance(value, list):
        raise ChartParseError(f"field {name!r} must be a list")
    if kind is str and not isinstance(value, str):
        raise ChartParseError(f"field {name!r} must be a string")
    if kind is dict and not isinstance(value, dict):
        raise ChartParseError(f"field {name!r} must be an object")
    return value


def load_chart(path):
    """Load and fully validate a chart file; returns (Chart, options)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ChartParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ChartParseError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ChartParseError(f"{path}: top level must be an object")
    fmt = _field(doc, "format", str, default=FORMAT)
    if fmt != FORMAT:
        raise ChartParseError(f"{path}: unsupported format {fmt!r}")

    n = _field(doc, "ambient_rank", int, required=True)
    raw_gens = _field(doc, "monoid_generators", list)
    equations = _field(doc, "equations", list, default=[])
    for idx, eq in enumerate(equations):
        if not isinstance(eq, str):
            raise ChartParseError(f"equations[{idx}] must be a string")

    monoid = None
    basis = None
    if raw_gens is not None:
        cap = _field(doc, "membership_cap", int, default=20)
        for gi, g in enumerate(raw_gens):
            if (not isinstance(g, list)
                    or any(not isinstance(x, int) or isinstance(x, bool)
                           for x in g)):
                raise ChartParseError(
                    f"monoid_generators[{gi}] must be a list of integers")
        try:
            monoid = AffineMonoid(n, raw_gens, membership_cap=cap)
        except MonoidError as exc:
            raise MonoidError(f"{path}: {exc}") from exc
        basis_idx = _field(doc, "basis", list)
        if basis_idx is not None:
            for bi in basis_idx:
                if not isinstance(bi, int) or not (
                        0 <= bi < len(monoid.generators)):
                    raise ChartParseError(
                        f"basis index {bi!r} out of range")
            basis = tuple(monoid.generators[bi] for bi in basis_idx)

    mode = _field(doc, "mode", str)
    implied = "log" if monoid is not None else "ordinary"
    if mode is not None and mode != implied:
        raise ChartParseError(
            f"{path}: mode {mode!r} contradicts the monoid data "
            f"(implied {implied!r})")

    budgets = None
    raw_budgets = _field(doc, "budgets", dict)
    if raw_budgets is not None:
        base = Budgets()
        budgets = Budgets(
            max_pairs=raw_budgets.get("pairs", base.max_pairs),
            max_degree=raw_budgets.get("degree", base.max_degree),
            max_groebner_vars=raw_budgets.get("variables",
                                              base.max_groebner_vars),
            fp_max_vars=base.fp_max_vars,
            fp_node_budget=raw_budgets.get("fp_nodes", base.fp_node_budget))

    try:
        chart = Chart.build(ambient_rank=n, equations=equations,
                            monoid=monoid, basis=basis)
    except (ExpressionSyntaxError, ExponentError, ModeMismatchError) as exc:
        raise ChartParseError(f"{path}: bad equation: {exc}") from exc
    except SupportError as exc:
        raise SupportError(f"{path}: {exc}") from exc
    return chart, ChartFileOptions(budgets=budgets, mode=implied)
