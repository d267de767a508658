"""Citation datasets and the empirical Leimkuhler polygon.

A dataset is a multiset of non-negative integer citation counts.  With
counts sorted descending and s_i the cumulative sum of the top i
counts, the empirical curve is the polygon through (i/n, s_i/s_n) with
K(0) = 0.  Cumulative sums are taken in integer arithmetic, so the
polygon vertices carry no accumulation error beyond the final
division.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from itertools import accumulate
from pathlib import Path

import numpy as np

from .curves import CurvePoint, Family

__all__ = [
    "DataError",
    "CitationDataset",
    "EmpiricalCurve",
    "DescriptiveStats",
    "ingest",
    "empirical_curve",
    "descriptive_stats",
    "dispersion_index",
    "sample_synthetic",
]


class DataError(ValueError):
    """Invalid or unparseable input data.

    Attributes
    ----------
    line_number : int or None
        1-based line of the offending record, when known.
    """

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


@dataclass(frozen=True)
class CitationDataset:
    """Citation counts sorted descending, with totals precomputed."""

    counts_desc: tuple
    label: str = ""

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts_desc)
        if len(counts) < 1:
            raise DataError("dataset needs at least one count")
        if any(c < 0 for c in counts):
            raise DataError("counts must be non-negative")
        if any(a < b for a, b in zip(counts, counts[1:])):
            counts = tuple(sorted(counts, reverse=True))
        object.__setattr__(self, "counts_desc", counts)

    @property
    def n(self):
        return len(self.counts_desc)

    @property
    def total(self):
        return sum(self.counts_desc)


@dataclass(frozen=True)
class EmpiricalCurve:
    """Polygon through (i/n, s_i/s_n), i = 0..n."""

    points: tuple
    source_n: int

    def u_values(self):
        return np.array([p.u for p in self.points])

    def k_values(self):
        return np.array([p.k_value for p in self.points])

    def interpolate(self, u):
        """Piecewise-linear K at arbitrary u in [0, 1]; exact at knots."""
        arr = np.asarray(u, dtype=float)
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise ValueError("u must lie in [0, 1]")
        out = np.interp(arr, self.u_values(), self.k_values())
        return float(out) if np.ndim(u) == 0 else out


@dataclass(frozen=True)
class DescriptiveStats:
    """Summary statistics of a citation dataset.

    dispersion_index is variance/mean, or NaN when the mean is zero.
    """

    n: int
    total: int
    min: int
    max: int
    mean: float
    variance: float
    dispersion_index: float


def _parse_count(token, line_number):
    try:
        value = int(token)
    except ValueError:
        raise DataError(f"expected a non-negative integer, got {token!r}", line_number) from None
    if value < 0:
        raise DataError(f"negative count {value}", line_number)
    return value


def _read_lines(stream):
    counts = []
    first_data_line = True
    for line_number, raw in enumerate(stream, start=1):
        token = raw.strip()
        if not token:
            continue
        if first_data_line:
            first_data_line = False
            # a non-numeric leading line is treated as a header
            try:
                int(token)
            except ValueError:
                continue
        counts.append(_parse_count(token, line_number))
    return counts


def _read_csv(stream, column):
    reader = csv.DictReader(stream)
    if reader.fieldnames is None:
        raise DataError("empty CSV input")
    if column not in reader.fieldnames:
        raise DataError(f"column {column!r} not found among {reader.fieldnames}")
    counts = []
    for row in reader:
        token = (row[column] or "").strip()
        counts.append(_parse_count(token, reader.line_num))
    return counts


def ingest(source, format="lines", column=None, label=None):
    """Read a citation dataset from a file or stream.

    Parameters
    ----------
    source : str, Path, or text stream
        Path to a UTF-8 text file, or an open text stream.
    format : {"lines", "csv"}
        "lines" expects one non-negative integer per line (blank lines
        ignored, one leading non-numeric header line tolerated);
        "csv" reads the named integer column of an RFC-4180 file.
    column : str, optional
        Column name, required for format="csv".
    label : str, optional
        Dataset label; defaults to the file name when reading a path.

    Returns
    -------
    CitationDataset

    Raises
    ------
    DataError
        On unreadable, empty, malformed, or negative input; parse
        errors carry the 1-based line number.
    """
    if format not in ("lines", "csv"):
        raise ValueError(f"format must be 'lines' or 'csv', got {format!r}")
    if format == "csv" and not column:
        raise ValueError("csv format requires a column name")

    if isinstance(source, (str, Path)):
        path = Path(source)
        if label is None:
            label = path.name
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise DataError(f"cannot read {path}: {exc}") from exc
        stream = io.StringIO(text)
    else:
        stream = source

    counts = _read_lines(stream) if format == "lines" else _read_csv(stream, column)
    if not counts:
        raise DataError("no counts found in input")
    return CitationDataset(tuple(sorted(counts, reverse=True)), label=label or "")


def empirical_curve(dataset):
    """Empirical Leimkuhler polygon of a dataset.

    Raises
    ------
    DataError
        If the dataset total is zero (the curve is undefined).
    """
    total = dataset.total
    if total <= 0:
        raise DataError("dataset total is zero; the empirical curve is undefined")
    n = dataset.n
    points = [CurvePoint(0.0, 0.0)]
    for i, s in enumerate(accumulate(dataset.counts_desc), start=1):
        points.append(CurvePoint(i / n, s / total))
    return EmpiricalCurve(tuple(points), source_n=n)


def dispersion_index(variance, mean):
    """Variance-to-mean ratio; NaN when the mean is zero."""
    if mean == 0:
        return math.nan
    return variance / mean


def descriptive_stats(dataset, ddof=0):
    """Summary statistics of the counts.

    Parameters
    ----------
    dataset : CitationDataset
    ddof : int
        Variance divisor is n - ddof; 0 (population variance) by
        default, 1 for the sample variance.

    Returns
    -------
    DescriptiveStats
    """
    counts = np.array(dataset.counts_desc, dtype=float)
    if dataset.n - ddof <= 0:
        raise ValueError("variance divisor n - ddof must be positive")
    mean = float(counts.mean())
    variance = float(counts.var(ddof=ddof))
    return DescriptiveStats(
        n=dataset.n,
        total=dataset.total,
        min=int(dataset.counts_desc[-1]),
        max=int(dataset.counts_desc[0]),
        mean=mean,
        variance=variance,
        dispersion_index=dispersion_index(variance, mean),
    )


def _round_half_up(x):
    return np.floor(x + 0.5).astype(np.int64)


def sample_synthetic(family, n, seed, theta=None, sigma=1.0, alpha=None, beta=None,
                     scale=1000.0, label=None):
    """Draw an integer citation dataset from a base or mixture law.

    Continuous draws are scaled by `scale` and rounded half-up to
    integers; the rounding convention is part of the contract so
    round-trip estimator tests are reproducible.

    Parameters
    ----------
    family : Family or str
        One of power (theta), pareto (theta, sigma), pg (alpha, beta),
        pig (alpha, beta).
    n : int
        Number of sources, at least 1.
    seed : int
        Generator seed; identical seeds give identical datasets.
    theta, sigma, alpha, beta : float
        Family parameters; sigma is the Pareto scale.
    scale : float
        Magnitude applied to continuous draws before rounding.

    Returns
    -------
    CitationDataset
    """
    family = Family(family)
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if scale <= 0:
        raise ValueError(f"scale must be positive, got {scale}")
    rng = np.random.default_rng(seed)
    uniforms = rng.random(n)

    if family is Family.POWER:
        if theta is None or theta <= 0:
            raise ValueError("power sampling needs theta > 0")
        draws = uniforms**theta
    elif family is Family.PARETO:
        if theta is None or not (0.0 < theta < 1.0):
            raise ValueError("pareto sampling needs 0 < theta < 1")
        if sigma <= 0:
            raise ValueError("pareto sampling needs sigma > 0")
        draws = sigma * (1.0 - uniforms) ** (-theta)
    elif family is Family.PG:
        if alpha is None or beta is None or alpha <= 0 or beta <= 0:
            raise ValueError("pg sampling needs alpha > 0 and beta > 0")
        thetas = rng.gamma(shape=alpha, scale=1.0 / beta, size=n)
        draws = uniforms**thetas
    elif family is Family.PIG:
        if alpha is None or beta is None or alpha <= 0 or beta <= 0:
            raise ValueError("pig sampling needs alpha > 0 and beta > 0")
        thetas = rng.wald(alpha, beta, size=n)
        draws = uniforms**thetas
    else:
        raise ValueError(f"sampling is not supported for family {family.value!r}")

    counts = _round_half_up(scale * draws)
    if label is None:
        label = f"synthetic-{family.value}-n{n}-seed{seed}"
    return CitationDataset(tuple(sorted(counts.tolist(), reverse=True)), label=label)
