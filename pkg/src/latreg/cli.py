"""Command-line front end.

Subcommands: ``measures`` (vertices and the determinant family),
``means`` (the three mean families), ``fit`` (one model), ``rotate``
(every rotation of a column set), ``simulate`` (seeded weighted-mean
convergence check).  Exit codes are a stable contract: 0 success,
2 usage or model-expression error, 3 data error, 4 singular system.
"""

from __future__ import annotations

import argparse
import sys
from typing import IO

from .dataio import ColumnSelection, read_csv, render_json, write_report
from .errors import (ColumnNotFoundError, CsvFormatError, EmptyDataError,
                     FormulaError, LatregError, SingularSystemError,
                     ZeroWeightError)
from .estimators import RotationResult, fit, fit_all_rotations
from .formula import parse_model
from .lattice import Dataset, Direction, UNITY, measure_catalog
from .means import (self_weighting_mean, simulate_convergence, standard_mean,
                    weighted_mean)

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_SINGULAR = 4

MODEL_GRAMMAR = """\
model expression grammar:
  <response> = <term> [+ <term>]...
  response:  a column name, or 1 for an implicit (non-response) model
  term:      a column name, 1 (explicit intercept), or a product a*b
examples:
  "y = 1 + x"          simple line with intercept
  "1 = x + y"          implicit model, no intercept unless written
  "1 = x + y + x*y"    interaction term as a regressor
"""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latreg",
        description="Lattice-design regression: determinant measures, "
                    "weighted means, and Cramer's-rule fits.",
        epilog=MODEL_GRAMMAR + "\nexit codes: 0 ok, 2 usage/parse error, "
               "3 data error, 4 singular system",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, columns_help=None):
        p.add_argument("--input", required=True, metavar="PATH",
                       help="CSV file with a header row, or - for stdin")
        if columns_help:
            p.add_argument("--columns", required=True, metavar="a,b[,c]",
                           help=columns_help)
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("measures",
                       help="vertices and the determinant family")
    add_io(p, "2 or 3 column names")
    p.set_defaults(func=_cmd_measures)

    p = sub.add_parser("means",
                       help="standard, self-weighting, and randomly "
                            "weighted means")
    add_io(p, "1 to 3 column names")
    p.set_defaults(func=_cmd_means)

    p = sub.add_parser("fit", help="fit one model expression",
                       epilog=MODEL_GRAMMAR,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--input", required=True, metavar="PATH",
                   help="CSV file with a header row, or - for stdin")
    p.add_argument("--model", required=True, metavar="EXPR",
                   help='model expression, e.g. "1 = x + y"')
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("rotate",
                       help="fit every rotation of a column set")
    add_io(p, "2 or 3 column names")
    p.set_defaults(func=_cmd_rotate)

    p = sub.add_parser("simulate",
                       help="seeded weighted-mean convergence check")
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--mu", type=float, default=100.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_simulate)

    return parser


def _split_columns(raw: str, minimum: int, maximum: int) -> list[str]:
    columns = [c.strip() for c in raw.split(",")]
    if any(not c for c in columns):
        raise ValueError("empty column name in --columns")
    if not minimum <= len(columns) <= maximum:
        raise ValueError(
            f"--columns needs {minimum} to {maximum} names, got {len(columns)}")
    return columns


def _load(args, columns: list[str]) -> Dataset:
    selection = ColumnSelection(names=tuple(columns))
    if args.input == "-":
        return read_csv(sys.stdin, selection)
    return read_csv(args.input, selection)


def _emit(payload_bytes: bytes) -> None:
    sys.stdout.write(payload_bytes.decode("utf-8"))


def _cmd_measures(args) -> int:
    columns = _split_columns(args.columns, 2, 3)
    data = _load(args, columns)
    catalog = measure_catalog(data, columns)
    if args.format == "json":
        _emit(render_json({"measures": catalog}))
    else:
        lines = ["measures:"]
        lines += [f"  {name} = {repr(float(value))}"
                  for name, value in catalog.items()]
        _emit(("\n".join(lines) + "\n").encode("utf-8"))
    return EXIT_OK


def _cmd_means(args) -> int:
    columns = _split_columns(args.columns, 1, 3)
    data = _load(args, columns)
    standard = {c: standard_mean(data, c) for c in columns}
    self_weighting = {c: self_weighting_mean(data, c) for c in columns}
    random_weighted: dict[str, dict[str, float]] = {}
    for target in columns:
        for weight in columns:
            if weight == target:
                continue
            random_weighted.setdefault(target, {})[weight] = weighted_mean(
                data, target, weight)
    if args.format == "json":
        _emit(render_json({"means": {
            "standard": standard,
            "self_weighting": self_weighting,
            "randomly_weighted": random_weighted,
        }}))
    else:
        lines = ["means:"]
        for c in columns:
            lines.append(f"  standard[{c}] = {repr(standard[c])}")
        for c in columns:
            lines.append(f"  self_weighting[{c}] = {repr(self_weighting[c])}")
        for target, weights in random_weighted.items():
            for weight, value in weights.items():
                lines.append(
                    f"  randomly_weighted[{target}][{weight}] = {repr(value)}")
        _emit(("\n".join(lines) + "\n").encode("utf-8"))
    return EXIT_OK


def _model_columns(spec) -> list[str]:
    columns: list[str] = []
    for direction in (spec.response, *spec.regressors):
        for factor in direction.factors:
            if factor not in columns:
                columns.append(factor)
    return columns


def _cmd_fit(args) -> int:
    spec = parse_model(args.model)
    columns = _model_columns(spec)
    if not columns:
        raise ValueError("model references no data columns")
    data = _load(args, columns)
    result = fit(data, spec)
    plain = [c for c in columns
             if any(d.factors == (c,) for d in (spec.response, *spec.regressors))]
    measures = measure_catalog(data, plain) if len(plain) in (2, 3) else {}
    rotation = RotationResult(response=spec.response, fit=result)
    _emit(write_report([rotation], measures, format=args.format))
    return EXIT_OK


def _cmd_rotate(args) -> int:
    columns = _split_columns(args.columns, 2, 3)
    data = _load(args, columns)
    directions = [UNITY] + [Direction(c) for c in columns]
    rotations = fit_all_rotations(data, directions)
    measures = measure_catalog(data, columns)
    _emit(write_report(rotations, measures, format=args.format))
    return EXIT_OK if any(r.ok for r in rotations) else EXIT_SINGULAR


def _cmd_simulate(args) -> int:
    stats = simulate_convergence(args.seed, args.n, args.mu, args.sigma,
                                 args.trials)
    if args.format == "json":
        _emit(render_json({"simulation": stats}))
    else:
        lines = ["simulation:"]
        for name, value in stats.items():
            rendered = repr(value) if isinstance(value, float) else str(value)
            lines.append(f"  {name} = {rendered}")
        _emit(("\n".join(lines) + "\n").encode("utf-8"))
    return EXIT_OK


def _print_formula_error(err: FormulaError, expression: str) -> None:
    sys.stderr.write(f"error: {err}\n")
    sys.stderr.write(f"  {expression}\n")
    sys.stderr.write("  " + " " * err.position + "^\n")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormulaError as err:
        _print_formula_error(err, getattr(args, "model", ""))
        return EXIT_USAGE
    except SingularSystemError as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_SINGULAR
    except (CsvFormatError, ColumnNotFoundError, EmptyDataError,
            ZeroWeightError) as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_DATA
    except LatregError as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_DATA
    except ValueError as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
