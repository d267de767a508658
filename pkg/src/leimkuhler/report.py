"""Report assembly and serialization.

An AnalysisReport bundles everything one analysis produces: dataset
statistics, empirical indices, per-family fit results with model
indices at the fitted parameters, and the CAIC ranking.  The report
serializes to a versioned JSON document with deterministic key order
and 12-significant-digit reals, renders as a fixed-width text table
with standard errors parenthesized beneath the estimates, and exports
plot-ready CSV curves.

JSON cannot represent non-finite reals, so infinities and NaN are
written as the string markers "inf", "-inf", and "nan"; an
unavailable standard-error set is written as null.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from datetime import datetime, timezone

import numpy as np

from ._version import __version__
from .curves import PARAM_NAMES, Family, evaluate, make_model
from .empirical import DescriptiveStats, descriptive_stats, empirical_curve
from .fit import FitConfig, FitResult, compare_models
from .indices import DEFAULT_R_VALUES, IndexReport, empirical_indices, model_indices

__all__ = [
    "SCHEMA_VERSION",
    "AnalysisReport",
    "build_report",
    "render_json",
    "parse_report",
    "render_table",
    "export_plot_data",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class AnalysisReport:
    """Complete result bundle of one dataset analysis.

    per_model pairs each FitResult with the IndexReport of its fitted
    model; ranking lists the same families best first.
    """

    dataset_stats: DescriptiveStats
    empirical_indices: IndexReport
    per_model: tuple
    ranking: tuple
    metadata: dict

    def __post_init__(self):
        fitted = sorted(result.model.family.value for result, _ in self.per_model)
        if sorted(self.ranking) != fitted:
            raise ValueError("ranking must be a permutation of the fitted families")


def build_report(dataset, families, config=FitConfig(), r_values=DEFAULT_R_VALUES,
                 index_tol=1e-9):
    """Run the full analysis pipeline over a dataset.

    Fits every requested family, computes empirical and per-model
    indices, and assembles the ranked report.  Families whose fit
    fails are recorded under metadata["failures"] and left out of the
    ranking.
    """
    stats = descriptive_stats(dataset)
    curve = empirical_curve(dataset)
    empirical = empirical_indices(curve, r_values=r_values)
    comparison = compare_models(curve, families, config)
    per_model = tuple(
        (result, model_indices(result.model, r_values=r_values, tol=index_tol))
        for result in comparison.results
    )
    ranking = tuple(result.model.family.value for result in comparison.results)
    metadata = {
        "tool_version": __version__,
        "created_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "dataset_label": dataset.label,
        "config": dict(sorted(asdict(config).items())),
        "r_values": [float(r) for r in r_values],
        "failures": [list(pair) for pair in comparison.failures],
    }
    return AnalysisReport(stats, empirical, per_model, ranking, metadata)


def _encode_real(x):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(f"{x:.12g}")


def _decode_real(value):
    if isinstance(value, str):
        if value not in ("nan", "inf", "-inf"):
            raise ValueError(f"unrecognized numeric marker {value!r}")
        return float(value)
    return float(value)


def _index_report_payload(report):
    return {
        "gini": _encode_real(report.gini),
        "generalized_gini": [[_encode_real(r), _encode_real(v)]
                             for r, v in report.generalized_gini],
        "pietra": _encode_real(report.pietra),
        "pietra_argmax_u": _encode_real(report.pietra_argmax_u),
        "method_tags": {key: report.method_tags[key]
                        for key in sorted(report.method_tags)},
    }


def _index_report_from_payload(payload):
    return IndexReport(
        gini=_decode_real(payload["gini"]),
        generalized_gini=tuple((_decode_real(r), _decode_real(v))
                               for r, v in payload["generalized_gini"]),
        pietra=_decode_real(payload["pietra"]),
        pietra_argmax_u=_decode_real(payload["pietra_argmax_u"]),
        method_tags=dict(payload["method_tags"]),
    )


def _fit_payload(result, indices):
    names = result.model.param_names()
    if result.std_errors is None:
        errors = None
    else:
        errors = {name: _encode_real(se)
                  for name, se in zip(names, result.std_errors)}
    return {
        "family": result.model.family.value,
        "params": {name: _encode_real(v)
                   for name, v in zip(names, result.model.param_values())},
        "std_errors": errors,
        "sse": _encode_real(result.sse),
        "mse": _encode_real(result.mse),
        "max_abs": _encode_real(result.max_abs),
        "mae": _encode_real(result.mae),
        "caic": _encode_real(result.caic),
        "converged": bool(result.converged),
        "iterations": int(result.iterations),
        "objective_history": [_encode_real(v) for v in result.objective_history],
        "indices": _index_report_payload(indices),
    }


def _fit_from_payload(payload):
    family = Family(payload["family"])
    params = {name: _decode_real(v) for name, v in payload["params"].items()}
    model = make_model(family, **params)
    if payload["std_errors"] is None:
        errors = None
    else:
        errors = tuple(_decode_real(payload["std_errors"][name])
                       for name in PARAM_NAMES[family])
    result = FitResult(
        model=model,
        std_errors=errors,
        sse=_decode_real(payload["sse"]),
        mse=_decode_real(payload["mse"]),
        max_abs=_decode_real(payload["max_abs"]),
        mae=_decode_real(payload["mae"]),
        caic=_decode_real(payload["caic"]),
        converged=bool(payload["converged"]),
        iterations=int(payload["iterations"]),
        objective_history=tuple(_decode_real(v)
                                for v in payload["objective_history"]),
    )
    return result, _index_report_from_payload(payload["indices"])


def render_json(report):
    """Serialize a report to UTF-8 JSON bytes.

    Key order is fixed by construction and every real is written with
    12 significant digits, so equal reports give byte-identical
    output.
    """
    stats = report.dataset_stats
    document = {
        "schema_version": SCHEMA_VERSION,
        "metadata": report.metadata,
        "dataset_stats": {
            "n": int(stats.n),
            "total": int(stats.total),
            "min": int(stats.min),
            "max": int(stats.max),
            "mean": _encode_real(stats.mean),
            "variance": _encode_real(stats.variance),
            "dispersion_index": _encode_real(stats.dispersion_index),
        },
        "empirical_indices": _index_report_payload(report.empirical_indices),
        "per_model": [_fit_payload(result, indices)
                      for result, indices in report.per_model],
        "ranking": list(report.ranking),
    }
    return (json.dumps(document, indent=2, allow_nan=False) + "\n").encode("utf-8")


def parse_report(data):
    """Rebuild an AnalysisReport from render_json output.

    Raises
    ------
    ValueError
        On a schema version other than SCHEMA_VERSION or a malformed
        document.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    document = json.loads(data)
    version = document.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {version!r}, "
                         f"expected {SCHEMA_VERSION}")
    stats_payload = document["dataset_stats"]
    stats = DescriptiveStats(
        n=int(stats_payload["n"]),
        total=int(stats_payload["total"]),
        min=int(stats_payload["min"]),
        max=int(stats_payload["max"]),
        mean=_decode_real(stats_payload["mean"]),
        variance=_decode_real(stats_payload["variance"]),
        dispersion_index=_decode_real(stats_payload["dispersion_index"]),
    )
    per_model = tuple(_fit_from_payload(entry) for entry in document["per_model"])
    return AnalysisReport(
        dataset_stats=stats,
        empirical_indices=_index_report_from_payload(document["empirical_indices"]),
        per_model=per_model,
        ranking=tuple(document["ranking"]),
        metadata=document["metadata"],
    )


def _format_metric(value, spec):
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if math.isnan(value):
        return "nan"
    return format(value, spec)


def render_table(report):
    """Fixed-width text table of the ranked fits.

    One row per model carries the parameter estimates and the error
    metrics; the row beneath repeats the standard errors in
    parentheses.  A short dataset header precedes the table.
    """
    stats = report.dataset_stats
    empirical = report.empirical_indices
    lines = [
        f"dataset: {report.metadata.get('dataset_label', '')}  "
        f"n={stats.n}  total={stats.total}  mean={stats.mean:.2f}  "
        f"dispersion={stats.dispersion_index:.2f}",
        f"empirical: gini={empirical.gini:.4f}  pietra={empirical.pietra:.4f}",
        "",
    ]

    ordered = list(report.per_model)
    max_params = max((len(r.model.param_names()) for r, _ in ordered), default=1)
    est_rows = []
    err_rows = []
    for result, _ in ordered:
        names = result.model.param_names()
        cells = [f"{name}={value:.6g}"
                 for name, value in zip(names, result.model.param_values())]
        if result.std_errors is None:
            errs = ["(unavailable)"] * len(names)
        else:
            errs = [f"({se:.3g})" for se in result.std_errors]
        cells += [""] * (max_params - len(cells))
        errs += [""] * (max_params - len(errs))
        est_rows.append(cells)
        err_rows.append(errs)

    fam_width = max([len("family")] + [len(r.model.family.value) for r, _ in ordered])
    param_widths = [
        max([len("parameters") if j == 0 else 0]
            + [len(row[j]) for row in est_rows]
            + [len(row[j]) for row in err_rows])
        for j in range(max_params)
    ]
    metric_headers = ("MSE", "MAX", "MAE", "CAIC", "Gini", "Pietra")
    metric_widths = [10, 10, 10, 12, 8, 8]

    def format_row(family, params, metrics):
        cells = [family.ljust(fam_width)]
        cells += [params[j].ljust(param_widths[j]) for j in range(max_params)]
        cells += [m.rjust(w) for m, w in zip(metrics, metric_widths)]
        return "  ".join(cells).rstrip()

    lines.append(format_row("family", ["parameters"] + [""] * (max_params - 1),
                            metric_headers))
    total_width = (fam_width + sum(param_widths) + sum(metric_widths)
                   + 2 * (1 + max_params + len(metric_widths) - 1))
    lines.append("-" * total_width)
    for (result, indices), cells, errs in zip(ordered, est_rows, err_rows):
        metrics = (
            _format_metric(result.mse, ".3e"),
            _format_metric(result.max_abs, ".3e"),
            _format_metric(result.mae, ".3e"),
            _format_metric(result.caic, ".2f"),
            _format_metric(indices.gini, ".4f"),
            _format_metric(indices.pietra, ".4f"),
        )
        lines.append(format_row(result.model.family.value, cells, metrics))
        lines.append(format_row("", errs, ("",) * len(metric_headers)))
    return "\n".join(lines) + "\n"


def _model_column_names(models):
    names = []
    seen = {}
    for model in models:
        tag = model.family.value
        seen[tag] = seen.get(tag, 0) + 1
        names.append(tag if seen[tag] == 1 else f"{tag}_{seen[tag]}")
    return names


def export_plot_data(curve, models, resolution=257):
    """CSV bytes with the empirical polygon and fitted curves.

    Columns: u, empirical, one K column per model named by family tag
    (deduplicated with _2, _3 suffixes), then one residual column
    (empirical minus fitted) per model.  The empirical column
    interpolates the polygon and is exact at the knots i/n.  Output is
    RFC 4180 CSV with LF line endings.
    """
    if resolution < 2:
        raise ValueError(f"resolution must be at least 2, got {resolution}")
    u = np.linspace(0.0, 1.0, resolution)
    empirical = curve.interpolate(u)
    columns = [u, empirical]
    names = _model_column_names(models)
    fitted = [evaluate(model, u) for model in models]
    columns.extend(fitted)
    columns.extend(empirical - k for k in fitted)

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["u", "empirical"] + names + [f"resid_{n}" for n in names])
    for row in zip(*columns):
        writer.writerow([f"{value:.12g}" for value in row])
    return buffer.getvalue().encode("utf-8")
