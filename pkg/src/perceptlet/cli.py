"""Command-line front end: ``perceptlet <fit|eval|series|info>``.

Exit status: 0 success, 1 I/O failure, 2 bad input (parse errors, values out
of range), 3 grid violations in boundary mode.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .automaton import (TANH, Automaton, AutomatonConfig, atomic_write, load_model, realize,
                        realize_grid, save_model)
from .basis import Perceptlet
from .errors import GridError, ModelFormatError, PerceptionDomainError
from .learner import BOUNDARY, NEIGHBORHOOD, ONLINE
from .model import basis_count, range_violations, resolution_for, truncate

EXIT_IO = 1
EXIT_INPUT = 2
EXIT_GRID = 3


class CliError(Exception):
    def __init__(self, message, status):
        super().__init__(message)
        self.status = status


def fmt(v) -> str:
    """Shortest decimal that round-trips; integral values lose the ``.0``."""
    r = repr(float(v))
    if r.endswith(".0"):
        r = r[:-2]
    return "0" if r == "-0" else r


def read_samples_csv(path, y_column=None):
    """Parse an ``x,y`` CSV into a list of ``(x, y, line_number)``.

    Lines starting with ``#`` and blank lines are skipped. A first row whose
    first cell is not numeric is a header. ``y_column`` picks the target by
    header name or 1-based index (default: the second column).
    """
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}", EXIT_IO) from None

    rows, header = [], None
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row) or row[0].lstrip().startswith("#"):
            continue
        cells = [c.strip() for c in row]
        if header is None and not rows:
            try:
                float(cells[0])
            except ValueError:
                header = cells
                continue
        rows.append((lineno, cells))

    col = 1
    if y_column is not None:
        if y_column.isdigit():
            col = int(y_column) - 1
        elif header is not None and y_column in header:
            col = header.index(y_column)
        else:
            raise CliError(f"no column {y_column!r} in {path}", EXIT_INPUT)
    if col < 1:
        raise CliError("the target column must come after the x column", EXIT_INPUT)

    out = []
    for lineno, cells in rows:
        if len(cells) <= col:
            raise CliError(f"{path}:{lineno}: expected at least {col + 1} columns", EXIT_INPUT)
        try:
            x, y = float(cells[0]), float(cells[col])
        except ValueError:
            raise CliError(f"{path}:{lineno}: non-numeric value", EXIT_INPUT) from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise CliError(f"{path}:{lineno}: non-finite value", EXIT_INPUT)
        out.append((x, y, lineno))
    if not out:
        raise CliError(f"{path}: no samples", EXIT_INPUT)
    return out


def _to_logical(y, args, where):
    if args.y_space == "perception":
        if not -1.0 <= y <= 1.0:
            raise CliError(f"{where}: y={y!r} outside perception space [-1, 1]", EXIT_INPUT)
        return 0.5 * (1.0 + y)
    if args.map_output == TANH:
        return 0.5 * (1.0 + math.tanh(y))
    if not 0.0 <= y <= 1.0:
        raise CliError(
            f"{where}: y={y!r} outside logical space [0, 1]; pass --y-space perception for "
            "targets in [-1, 1] or --map-output tanh for unbounded targets",
            EXIT_INPUT,
        )
    return y


def _load(path):
    try:
        return load_model(path)
    except OSError as exc:
        raise CliError(f"cannot read model {path}: {exc.strerror or exc}", EXIT_IO) from None
    except ModelFormatError as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT) from None


def _emit(args, text):
    if args.output in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        atomic_write(args.output, text)
    except OSError as exc:
        raise CliError(f"cannot write {args.output}: {exc.strerror or exc}", EXIT_IO) from None


def cmd_fit(args) -> int:
    if args.y_space == "perception" and args.map_output == TANH:
        raise CliError("--y-space perception and --map-output tanh are exclusive", EXIT_INPUT)
    rows = read_samples_csv(args.input, args.y_column)
    config = AutomatonConfig(Perceptlet.from_name(args.family), args.pr, args.mode,
                             TANH if args.map_input else None, args.truncate)
    samples = []
    for x, y, lineno in rows:
        where = f"{args.input}:{lineno}"
        if not args.map_input and not -1.0 <= x <= 1.0:
            raise CliError(f"{where}: x={x!r} outside perception space [-1, 1]; "
                           "pass --map-input to squash it with tanh", EXIT_INPUT)
        samples.append((x, _to_logical(y, args, where)))

    automaton = Automaton(config)
    try:
        model = automaton.fit(samples)
    except GridError as exc:
        raise CliError(str(exc), EXIT_GRID) from None
    report = automaton.report
    try:
        save_model(model, args.output)
    except OSError as exc:
        raise CliError(f"cannot write {args.output}: {exc.strerror or exc}", EXIT_IO) from None

    summary = {
        "mode": report.mode,
        "pr": model.pr,
        "samples": len(samples),
        "epochs_used": report.epochs_used,
        "max_residual": report.max_residual,
        "per_level_residuals": report.per_level_residuals,
        "warnings": report.warnings,
    }
    if args.truncate is not None:
        summary["weights_kept"] = len(model.weights)
    print(json.dumps(summary, sort_keys=True))
    return 0


def cmd_eval(args) -> int:
    model = _load(args.model)
    config = AutomatonConfig(model.perceptlet, model.pr, input_map=TANH if args.map_input else None)
    lines = []
    for x in args.x:
        if not args.map_input and not -1.0 <= x <= 1.0:
            raise CliError(f"x={x!r} outside perception space [-1, 1]; pass --map-input", EXIT_INPUT)
        levels = realize(model, x, config).levels
        lines.append(",".join(fmt(v) for v in [x, *levels]))
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_series(args) -> int:
    if args.density < 2:
        raise CliError("--density must be >= 2", EXIT_INPUT)
    model = _load(args.model)
    xs, levels = realize_grid(model, args.density)
    buf = [",".join(["x"] + [f"f{k}" for k in range(1, model.pr + 1)])]
    for i, x in enumerate(xs):
        buf.append(",".join(fmt(v) for v in [x, *levels[:, i]]))
    _emit(args, "\n".join(buf) + "\n")
    return 0


def cmd_info(args) -> int:
    if args.pr is None and args.samples is None and args.model is None:
        raise CliError("info needs --pr, --samples or --model", EXIT_INPUT)
    out = {}
    if args.pr is not None:
        out["pr"] = args.pr
        out["basis_count"] = basis_count(args.pr)
    if args.samples is not None:
        out["samples"] = args.samples
        out["resolution"] = resolution_for(args.samples)
    if args.model is not None:
        model = _load(args.model)
        per_level = {}
        for b in model.weights:
            per_level[str(b.level)] = per_level.get(str(b.level), 0) + 1
        info = {"family": model.perceptlet.kind, "pr": model.pr,
                "weights_per_level": per_level, "range_warnings": range_violations(model)}
        if args.epsilon is not None:
            _, rep = truncate(model, args.epsilon)
            info["truncation"] = {"epsilon": args.epsilon, "removed": rep.removed,
                                  "error_bound": rep.error_bound}
        out["model"] = info
    print(json.dumps(out, sort_keys=True))
    return 0


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return v


def _nonneg_float(text):
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"expected a number >= 0, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="perceptlet",
                                     description="Multi-resolution perception function approximation.")
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="fit a model to x,y samples")
    fit.add_argument("--input", "-i", required=True)
    fit.add_argument("--output", "-o", required=True)
    fit.add_argument("--family", choices=["linear", "sin"], default="sin")
    fit.add_argument("--pr", type=_positive_int, required=True)
    fit.add_argument("--mode", choices=[BOUNDARY, NEIGHBORHOOD, ONLINE], default=BOUNDARY)
    fit.add_argument("--map-input", action="store_true", help="squash x with tanh first")
    fit.add_argument("--y-space", choices=["logical", "perception"], default="logical")
    fit.add_argument("--map-output", choices=[TANH], default=None)
    fit.add_argument("--truncate", type=_nonneg_float, default=None, metavar="EPSILON")
    fit.add_argument("--y-column", default=None, help="target column, header name or 1-based index")
    fit.set_defaults(func=cmd_fit)

    ev = sub.add_parser("eval", help="per-level estimates at given x values")
    ev.add_argument("--model", "-m", required=True)
    ev.add_argument("--map-input", action="store_true")
    ev.add_argument("x", type=float, nargs="+")
    ev.set_defaults(func=cmd_eval)

    series = sub.add_parser("series", help="per-level curves on a uniform grid, as CSV")
    series.add_argument("--model", "-m", required=True)
    series.add_argument("--output", "-o", default=None)
    series.add_argument("--density", type=int, default=257)
    series.set_defaults(func=cmd_series)

    info = sub.add_parser("info", help="basis counts, resolutions and model statistics")
    info.add_argument("--pr", type=_positive_int)
    info.add_argument("--samples", type=int)
    info.add_argument("--model", "-m")
    info.add_argument("--epsilon", type=_nonneg_float)
    info.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"perceptlet {args.command}: {exc}", file=sys.stderr)
        return exc.status
    except PerceptionDomainError as exc:
        print(f"perceptlet {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
