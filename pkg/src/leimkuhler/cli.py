"""Command-line front end.

Subcommands: stats, fit, indices, simulate, export-plot.  Exit codes
follow one contract everywhere: 0 success, 1 usage error, 2 I/O or
data error, 3 numerical failure.

A key=value config file (documented in the README) supplies defaults
for the fitting and output options; its path comes from --config or
the LEIMKUHLER_CONFIG environment variable, and explicit flags win
over file values.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .curves import Family, make_model
from .empirical import (
    DataError,
    descriptive_stats,
    empirical_curve,
    ingest,
    sample_synthetic,
)
from .fit import FitConfig
from .indices import DEFAULT_R_VALUES, empirical_indices, model_indices
from .report import (
    build_report,
    export_plot_data,
    parse_report,
    render_json,
    render_table,
)
__all__ = ["CliConfig", "UsageError", "main"]

ENV_CONFIG = "LEIMKUHLER_CONFIG"
FAMILY_TAGS = tuple(f.value for f in Family)

_SIMULATE_FAMILIES = ("power", "pareto", "pg", "pig")
_REQUIRED_SIM_PARAMS = {
    "power": ("theta",),
    "pareto": ("theta",),
    "pg": ("alpha", "beta"),
    "pig": ("alpha", "beta"),
}


class UsageError(Exception):
    """Bad flags or flag combinations; maps to exit code 1."""


@dataclass(frozen=True)
class CliConfig:
    """Validated, fully resolved options for one invocation."""

    fit: FitConfig
    input_format: str = "lines"
    column: str | None = None
    families: tuple = ()
    r_values: tuple = DEFAULT_R_VALUES
    resolution: int = 257

    def __post_init__(self):
        if self.input_format not in ("lines", "csv"):
            raise UsageError(f"format must be 'lines' or 'csv', "
                             f"got {self.input_format!r}")
        if self.input_format == "csv" and not self.column:
            raise UsageError("csv format requires --column")
        for tag in self.families:
            if tag not in FAMILY_TAGS:
                raise UsageError(f"unknown family {tag!r}; "
                                 f"choose from {', '.join(FAMILY_TAGS)}")
        if not self.r_values:
            raise UsageError("need at least one r value")
        for r in self.r_values:
            if not (r > 0):
                raise UsageError(f"r values must be positive, got {r}")
        if self.resolution < 2:
            raise UsageError(f"resolution must be at least 2, got {self.resolution}")


def _parse_bool(text):
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_r_list(text):
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise UsageError(f"cannot parse r list {text!r}") from None
    if not values:
        raise UsageError("empty r list")
    return values


_CONFIG_PARSERS = {
    "max_iterations": int,
    "gradient_tolerance": float,
    "step_tolerance": float,
    "multistart_count": int,
    "seed": int,
    "variance_divisor": str,
    "caic_counts_variance": _parse_bool,
    "r_values": _parse_r_list,
    "format": str,
    "resolution": int,
}


def _load_config_file(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_PARSERS:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        try:
            values[key] = _CONFIG_PARSERS[key](value.strip())
        except (ValueError, TypeError) as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return values


def _pick(flag_value, file_config, key, fallback):
    if flag_value is not None:
        return flag_value
    if key in file_config:
        return file_config[key]
    return fallback


def _fit_config(args, file_config):
    defaults = FitConfig()
    try:
        return FitConfig(
            max_iterations=_pick(args.max_iterations, file_config,
                                 "max_iterations", defaults.max_iterations),
            gradient_tolerance=_pick(args.gradient_tolerance, file_config,
                                     "gradient_tolerance", defaults.gradient_tolerance),
            step_tolerance=_pick(args.step_tolerance, file_config,
                                 "step_tolerance", defaults.step_tolerance),
            multistart_count=_pick(args.multistart, file_config,
                                   "multistart_count", defaults.multistart_count),
            seed=_pick(args.seed, file_config, "seed", defaults.seed),
            variance_divisor=_pick(args.variance_divisor, file_config,
                                   "variance_divisor", defaults.variance_divisor),
            caic_counts_variance=_pick(
                args.caic_count_variance, file_config,
                "caic_counts_variance", defaults.caic_counts_variance),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _resolved_r_values(args, file_config):
    if args.r is not None:
        return _parse_r_list(args.r)
    return tuple(file_config.get("r_values", DEFAULT_R_VALUES))


def _open_dataset(args, file_config):
    input_format = _pick(getattr(args, "format", None), file_config,
                         "format", "lines")
    column = getattr(args, "column", None)
    if input_format == "csv" and not column:
        raise UsageError("csv format requires --column")
    if input_format not in ("lines", "csv"):
        raise UsageError(f"format must be 'lines' or 'csv', got {input_format!r}")
    if args.input == "-":
        return ingest(sys.stdin, format=input_format, column=column, label="stdin")
    return ingest(args.input, format=input_format, column=column)


def _write_bytes(path, blob):
    if path == "-":
        sys.stdout.write(blob.decode("utf-8"))
    else:
        Path(path).write_bytes(blob)


def _fmt(value):
    return f"{value:.12g}"


def _print_index_report(report):
    tags = report.method_tags
    print(f"gini={_fmt(report.gini)} ({tags.get('gini', '')})")
    for r, value in report.generalized_gini:
        print(f"generalized_gini[r={_fmt(r)}]={_fmt(value)}")
    print(f"pietra={_fmt(report.pietra)} argmax_u={_fmt(report.pietra_argmax_u)} "
          f"({tags.get('pietra', '')})")


def cmd_stats(args, file_config):
    dataset = _open_dataset(args, file_config)
    stats = descriptive_stats(dataset, ddof=args.ddof)
    print(f"n={stats.n}")
    print(f"total={stats.total}")
    print(f"min={stats.min}")
    print(f"max={stats.max}")
    print(f"mean={_fmt(stats.mean)}")
    print(f"variance={_fmt(stats.variance)}")
    print(f"dispersion_index={_fmt(stats.dispersion_index)}")
    return 0


def cmd_fit(args, file_config):
    if args.model is not None and args.all:
        raise UsageError("--model and --all are mutually exclusive")
    if args.model is None and not args.all:
        raise UsageError("one of --model or --all is required")
    families = FAMILY_TAGS if args.all else (args.model,)
    config = CliConfig(
        fit=_fit_config(args, file_config),
        families=tuple(families),
        r_values=_resolved_r_values(args, file_config),
    )
    dataset = _open_dataset(args, file_config)
    report = build_report(dataset, config.families, config.fit,
                          r_values=config.r_values)
    if args.json is not None:
        _write_bytes(args.json, render_json(report))
    if args.table or args.json is None:
        sys.stdout.write(render_table(report))
    if all(not result.converged for result, _ in report.per_model):
        print("error: no fit converged", file=sys.stderr)
        return 3
    return 0


def _parse_params(text):
    params = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise UsageError(f"expected name=value in --params, got {chunk!r}")
        name, _, value = chunk.partition("=")
        try:
            params[name.strip()] = float(value)
        except ValueError:
            raise UsageError(f"bad numeric value in --params: {chunk!r}") from None
    if not params:
        raise UsageError("empty --params")
    return params


def cmd_indices(args, file_config):
    has_dataset = args.input is not None
    has_model = args.model is not None
    if has_dataset == has_model:
        raise UsageError("give exactly one of a dataset input or "
                         "--model with --params")
    r_values = _resolved_r_values(args, file_config)
    CliConfig(fit=FitConfig(), r_values=r_values)
    if has_model:
        if args.params is None:
            raise UsageError("--model requires --params")
        if args.model not in FAMILY_TAGS:
            raise UsageError(f"unknown family {args.model!r}; "
                             f"choose from {', '.join(FAMILY_TAGS)}")
        try:
            model = make_model(Family(args.model), **_parse_params(args.params))
        except (ValueError, TypeError) as exc:
            raise UsageError(f"bad --params: {exc}") from exc
        report = model_indices(model, r_values=r_values, tol=args.tol)
    else:
        dataset = _open_dataset(args, file_config)
        report = empirical_indices(empirical_curve(dataset), r_values=r_values)
    _print_index_report(report)
    return 0


def cmd_simulate(args, file_config):
    if args.n < 1:
        raise UsageError(f"--n must be at least 1, got {args.n}")
    if args.family not in _SIMULATE_FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; "
                         f"choose from {', '.join(_SIMULATE_FAMILIES)}")
    given = {
        "theta": args.theta,
        "sigma": args.sigma,
        "alpha": args.alpha,
        "beta": args.beta,
    }
    missing = [name for name in _REQUIRED_SIM_PARAMS[args.family]
               if given[name] is None]
    if missing:
        raise UsageError(f"family {args.family!r} requires "
                         f"{' '.join('--' + name for name in missing)}")
    kwargs = {name: value for name, value in given.items() if value is not None}
    if args.scale is not None:
        kwargs["scale"] = args.scale
    try:
        dataset = sample_synthetic(args.family, n=args.n, seed=args.seed, **kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = "\n".join(str(count) for count in dataset.counts_desc) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    return 0


def cmd_export_plot(args, file_config):
    resolution = _pick(args.resolution, file_config, "resolution", 257)
    config = CliConfig(fit=FitConfig(), resolution=resolution)
    dataset = _open_dataset(args, file_config)
    curve = empirical_curve(dataset)
    models = []
    if args.models_from is not None:
        try:
            blob = Path(args.models_from).read_bytes()
        except OSError as exc:
            raise DataError(f"cannot read {args.models_from}: {exc}") from exc
        report = parse_report(blob)
        models = [result.model for result, _ in report.per_model]
    blob = export_plot_data(curve, models, config.resolution)
    _write_bytes(args.out, blob)
    return 0


class _Parser(argparse.ArgumentParser):
    # usage problems must exit 1, not argparse's default 2
    def error(self, message):
        raise UsageError(message)


def _add_input_arguments(parser):
    parser.add_argument("input", help="dataset path, or - for stdin")
    parser.add_argument("--format", choices=("lines", "csv"), default=None,
                        help="input format (default lines)")
    parser.add_argument("--column", default=None,
                        help="column name for csv input")


def _add_fit_arguments(parser):
    parser.add_argument("--max-iterations", dest="max_iterations", type=int)
    parser.add_argument("--gradient-tolerance", dest="gradient_tolerance", type=float)
    parser.add_argument("--step-tolerance", dest="step_tolerance", type=float)
    parser.add_argument("--multistart", dest="multistart", type=int)
    parser.add_argument("--seed", dest="seed", type=int)
    parser.add_argument("--variance-divisor", dest="variance_divisor",
                        choices=("n", "n_minus_p"))
    parser.add_argument("--caic-count-variance", dest="caic_count_variance",
                        action="store_const", const=True, default=None,
                        help="count the residual variance as a parameter in CAIC")


def build_parser():
    parser = _Parser(prog="leimkuhler",
                     description="Citation-concentration analysis with "
                                 "Leimkuhler curves.")
    parser.add_argument("--config", default=None,
                        help=f"config file path (default ${ENV_CONFIG})")
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)

    stats = commands.add_parser("stats", help="descriptive statistics")
    _add_input_arguments(stats)
    stats.add_argument("--ddof", type=int, default=0, choices=(0, 1),
                       help="variance divisor is n - ddof")
    stats.set_defaults(handler=cmd_stats)

    fit_cmd = commands.add_parser("fit", help="fit curve families and rank them")
    _add_input_arguments(fit_cmd)
    fit_cmd.add_argument("--model", default=None,
                         help=f"one of {', '.join(FAMILY_TAGS)}")
    fit_cmd.add_argument("--all", action="store_true",
                         help="fit every family")
    fit_cmd.add_argument("--json", default=None,
                         help="write the JSON report to this path (- for stdout)")
    fit_cmd.add_argument("--table", action="store_true",
                         help="print the text table even when --json is given")
    fit_cmd.add_argument("--r", default=None,
                         help="comma-separated generalized-Gini orders")
    _add_fit_arguments(fit_cmd)
    fit_cmd.set_defaults(handler=cmd_fit)

    indices = commands.add_parser("indices", help="concentration indices")
    indices.add_argument("input", nargs="?", default=None,
                         help="dataset path, or - for stdin")
    indices.add_argument("--format", choices=("lines", "csv"), default=None)
    indices.add_argument("--column", default=None)
    indices.add_argument("--model", default=None,
                         help="parametric family instead of a dataset")
    indices.add_argument("--params", default=None,
                         help="comma-separated name=value pairs")
    indices.add_argument("--r", default=None,
                         help="comma-separated generalized-Gini orders")
    indices.add_argument("--tol", type=float, default=1e-10,
                         help="numeric tolerance for model indices")
    indices.set_defaults(handler=cmd_indices)

    simulate = commands.add_parser("simulate", help="generate a synthetic dataset")
    simulate.add_argument("--family", required=True,
                          help=f"one of {', '.join(_SIMULATE_FAMILIES)}")
    simulate.add_argument("--n", type=int, required=True)
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--out", required=True,
                          help="output path (- for stdout)")
    simulate.add_argument("--theta", type=float, default=None)
    simulate.add_argument("--sigma", type=float, default=None)
    simulate.add_argument("--alpha", type=float, default=None)
    simulate.add_argument("--beta", type=float, default=None)
    simulate.add_argument("--scale", type=float, default=None)
    simulate.set_defaults(handler=cmd_simulate)

    export = commands.add_parser("export-plot", help="plot-ready CSV export")
    _add_input_arguments(export)
    export.add_argument("--models-from", dest="models_from", default=None,
                        help="JSON report whose fitted models to include")
    export.add_argument("--resolution", type=int, default=None)
    export.add_argument("--out", default="-",
                        help="output path (- for stdout)")
    export.set_defaults(handler=cmd_export_plot)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "handler", None) is None:
            raise UsageError("a subcommand is required "
                             "(stats, fit, indices, simulate, export-plot)")
        config_path = args.config or os.environ.get(ENV_CONFIG)
        file_config = _load_config_file(config_path) if config_path else {}
        return args.handler(args, file_config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, RuntimeError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
