"""Citation-concentration analysis with Leimkuhler curves.

The package models how total citations concentrate in the most-cited
sources.  It provides the empirical Leimkuhler polygon of a count
dataset, eight parametric curve families (a base power form, its
generalized and Pareto variants, and five mixture families capturing
heterogeneity across sources), concentration indices (Gini,
generalized Gini, Pietra), nonlinear least-squares fitting with
CAIC-based model ranking, curve dominance orderings, and report
rendering.  The `leimkuhler` console script exposes the same pipeline
on the command line.
"""

from ._version import __version__
from .curves import (
    CurveModel,
    CurvePoint,
    Family,
    ParamVector,
    ValidationReport,
    Violation,
    evaluate,
    gamma_mixing_density,
    gp,
    gpg,
    gpig,
    inverse_gaussian_mixing_density,
    leimkuhler_from_quantile,
    lorenz_to_leimkuhler,
    make_model,
    mixture_curve_numeric,
    pagb,
    pareto,
    pg,
    pig,
    power,
    tilted_beta_mixing_density,
    validate_curve,
)
from .empirical import (
    CitationDataset,
    DataError,
    DescriptiveStats,
    EmpiricalCurve,
    descriptive_stats,
    dispersion_index,
    empirical_curve,
    ingest,
    sample_synthetic,
)
from .fit import (
    FitConfig,
    FitMetrics,
    FitResult,
    ModelComparison,
    caic,
    compare_models,
    fit,
    fit_metrics,
    standard_errors,
)
from .indices import (
    IndexReport,
    IndexValue,
    PietraValue,
    empirical_indices,
    generalized_gini,
    gini,
    gini_via_mixture,
    model_indices,
    pietra,
)
from .order import (
    DominanceResult,
    PropositionCase,
    PropositionCheck,
    Relation,
    check_proposition,
    leimkuhler_compare,
)
from .report import (
    SCHEMA_VERSION,
    AnalysisReport,
    build_report,
    export_plot_data,
    parse_report,
    render_json,
    render_table,
)
from .specfun import (
    ConvergenceError,
    SpecFunResult,
    kummer_1f1,
    log_gamma,
    regularized_incomplete_beta,
    upper_incomplete_gamma,
)

__all__ = [
    "__version__",
    "AnalysisReport",
    "CitationDataset",
    "ConvergenceError",
    "CurveModel",
    "CurvePoint",
    "DataError",
    "DescriptiveStats",
    "DominanceResult",
    "EmpiricalCurve",
    "Family",
    "FitConfig",
    "FitMetrics",
    "FitResult",
    "IndexReport",
    "IndexValue",
    "ModelComparison",
    "ParamVector",
    "PietraValue",
    "PropositionCase",
    "PropositionCheck",
    "Relation",
    "SCHEMA_VERSION",
    "SpecFunResult",
    "ValidationReport",
    "Violation",
    "build_report",
    "caic",
    "check_proposition",
    "compare_models",
    "descriptive_stats",
    "dispersion_index",
    "empirical_curve",
    "empirical_indices",
    "evaluate",
    "export_plot_data",
    "fit",
    "fit_metrics",
    "gamma_mixing_density",
    "generalized_gini",
    "gini",
    "gini_via_mixture",
    "gp",
    "gpg",
    "gpig",
    "ingest",
    "inverse_gaussian_mixing_density",
    "kummer_1f1",
    "leimkuhler_compare",
    "leimkuhler_from_quantile",
    "log_gamma",
    "lorenz_to_leimkuhler",
    "make_model",
    "mixture_curve_numeric",
    "model_indices",
    "pagb",
    "pareto",
    "parse_report",
    "pg",
    "pietra",
    "pig",
    "power",
    "regularized_incomplete_beta",
    "render_json",
    "render_table",
    "sample_synthetic",
    "standard_errors",
    "upper_incomplete_gamma",
    "validate_curve",
]
