"""Parametric Leimkuhler curve families.

A Leimkuhler curve K(u) gives the fraction of total citations held by
the most-cited fraction u of sources.  Every family here satisfies
K(0) = 0, K(1) = 1, K nondecreasing and concave on [0, 1].

Four base families have elementary forms (power, generalized power,
Pareto) and five arise by mixing a base family's exponent over a
continuous density (gamma, inverse-Gaussian, or an exponentially
tilted beta), which yields the pg/pig/gpg/gpig/pagb closed forms.

Numerical conventions: log(1 - u) is always computed as log1p(-u), and
curve values near the endpoints go through expm1 so that K stays
accurate when it is close to 0 or 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import quad

from . import specfun
from .specfun import ConvergenceError

__all__ = [
    "Family",
    "ParamVector",
    "CurveModel",
    "CurvePoint",
    "Violation",
    "ValidationReport",
    "power",
    "gp",
    "pareto",
    "pg",
    "pig",
    "gpg",
    "gpig",
    "pagb",
    "make_model",
    "evaluate",
    "leimkuhler_from_quantile",
    "lorenz_to_leimkuhler",
    "mixture_curve_numeric",
    "validate_curve",
    "gamma_mixing_density",
    "inverse_gaussian_mixing_density",
    "tilted_beta_mixing_density",
]


class Family(str, Enum):
    """Tags for the eight curve families."""

    POWER = "power"
    GP = "gp"
    PARETO = "pareto"
    PG = "pg"
    PIG = "pig"
    GPG = "gpg"
    GPIG = "gpig"
    PAGB = "pagb"


# parameter names per family, in reporting order
PARAM_NAMES = {
    Family.POWER: ("theta",),
    Family.GP: ("theta", "kappa"),
    Family.PARETO: ("theta",),
    Family.PG: ("alpha", "beta"),
    Family.PIG: ("alpha", "beta"),
    Family.GPG: ("kappa", "alpha", "beta"),
    Family.GPIG: ("kappa", "alpha", "beta"),
    Family.PAGB: ("alpha", "beta", "shift"),
}


@dataclass(frozen=True)
class ParamVector:
    """Named curve parameters; a field is set only if its family uses it."""

    theta: float | None = None
    kappa: float | None = None
    alpha: float | None = None
    beta: float | None = None
    shift: float | None = None

    def present(self):
        """Mapping of the fields that are set."""
        return {k: v for k, v in self.__dict__.items() if v is not None}

    def as_tuple(self, family):
        """Values in the family's reporting order."""
        return tuple(getattr(self, name) for name in PARAM_NAMES[family])


def _check_positive(name, value):
    if not (value > 0) or not math.isfinite(value):
        raise ValueError(f"{name} must be positive and finite, got {value}")


@dataclass(frozen=True)
class CurvePoint:
    """A point (u, K(u)) on a Leimkuhler curve; both coordinates in [0, 1]."""

    u: float
    k_value: float

    def __post_init__(self):
        if not (0.0 <= self.u <= 1.0) or not (0.0 <= self.k_value <= 1.0):
            raise ValueError(f"curve point ({self.u}, {self.k_value}) outside the unit square")


@dataclass(frozen=True)
class CurveModel:
    """A curve family plus a validated parameter vector."""

    family: Family
    params: ParamVector

    def __post_init__(self):
        family = Family(self.family)
        object.__setattr__(self, "family", family)
        names = PARAM_NAMES[family]
        present = self.params.present()
        if set(present) != set(names):
            raise ValueError(
                f"family {family.value!r} takes parameters {sorted(names)}, got {sorted(present)}"
            )
        p = self.params
        if family in (Family.POWER, Family.GP):
            _check_positive("theta", p.theta)
        if family is Family.PARETO:
            if not (0.0 < p.theta < 1.0):
                raise ValueError(f"pareto theta must lie in (0, 1), got {p.theta}")
        if family in (Family.GP, Family.GPG, Family.GPIG):
            if not (0.0 < p.kappa <= 1.0):
                raise ValueError(f"kappa must lie in (0, 1], got {p.kappa}")
        if family in (Family.PG, Family.PIG, Family.GPG, Family.GPIG, Family.PAGB):
            _check_positive("alpha", p.alpha)
            _check_positive("beta", p.beta)
        if family is Family.PAGB and not math.isfinite(p.shift):
            raise ValueError(f"shift must be finite, got {p.shift}")

    def param_names(self):
        return PARAM_NAMES[self.family]

    def param_values(self):
        return self.params.as_tuple(self.family)


def make_model(family, **params):
    """Build a CurveModel from a family tag and keyword parameters."""
    return CurveModel(Family(family), ParamVector(**params))


def power(theta):
    """Power curve K(u) = 1 - (1-u)**(1+theta), theta > 0."""
    return make_model(Family.POWER, theta=float(theta))


def gp(theta, kappa):
    """Generalized power curve K(u) = 1 - (1-u**kappa)(1-u)**theta."""
    return make_model(Family.GP, theta=float(theta), kappa=float(kappa))


def pareto(theta):
    """Pareto curve K(u) = u**(1-theta), 0 < theta < 1."""
    return make_model(Family.PARETO, theta=float(theta))


def pg(alpha, beta):
    """Power curve with gamma-mixed exponent (shape alpha, rate beta)."""
    return make_model(Family.PG, alpha=float(alpha), beta=float(beta))


def pig(alpha, beta):
    """Power curve with inverse-Gaussian-mixed exponent (mean alpha, shape beta)."""
    return make_model(Family.PIG, alpha=float(alpha), beta=float(beta))


def gpg(kappa, alpha, beta):
    """Generalized power curve with gamma-mixed exponent."""
    return make_model(Family.GPG, kappa=float(kappa), alpha=float(alpha), beta=float(beta))


def gpig(kappa, alpha, beta):
    """Generalized power curve with inverse-Gaussian-mixed exponent."""
    return make_model(Family.GPIG, kappa=float(kappa), alpha=float(alpha), beta=float(beta))


def pagb(alpha, beta, shift):
    """Pareto curve with exponentially tilted beta-mixed exponent.

    K(u) = 1F1(beta; alpha+beta; shift + log u) / 1F1(beta; alpha+beta; shift).
    shift = 0 recovers the plain beta mixture.
    """
    return make_model(Family.PAGB, alpha=float(alpha), beta=float(beta), shift=float(shift))


# ---------------------------------------------------------------------------
# evaluation


def _psi_gamma(logub, alpha, beta):
    # (beta / (beta - log(1-u)))**alpha, stable via log1p
    return np.exp(-alpha * np.log1p(-logub / beta))


def _psi_invgauss(logub, alpha, beta):
    # (beta/alpha) * (1 - sqrt(1 - 2 alpha^2 log(1-u) / beta)),
    # written through m = -2 alpha^2 log(1-u)/beta >= 0 to avoid the
    # sqrt(1+m)-1 cancellation at small m
    m = -2.0 * alpha * alpha * logub / beta
    return -(beta / alpha) * m / (1.0 + np.sqrt(1.0 + m))


def _eval_power(u, p):
    return -np.expm1((1.0 + p.theta) * np.log1p(-u))


def _eval_gp(u, p):
    return 1.0 + np.expm1(p.kappa * np.log(u)) * np.exp(p.theta * np.log1p(-u))


def _eval_pareto(u, p):
    return np.exp((1.0 - p.theta) * np.log(u))


def _eval_pg(u, p):
    logub = np.log1p(-u)
    return -np.expm1(logub - p.alpha * np.log1p(-logub / p.beta))


def _eval_pig(u, p):
    logub = np.log1p(-u)
    return -np.expm1(logub + _psi_invgauss(logub, p.alpha, p.beta))


def _eval_gpg(u, p):
    logub = np.log1p(-u)
    return 1.0 + np.expm1(p.kappa * np.log(u)) * _psi_gamma(logub, p.alpha, p.beta)


def _eval_gpig(u, p):
    logub = np.log1p(-u)
    return 1.0 + np.expm1(p.kappa * np.log(u)) * np.exp(_psi_invgauss(logub, p.alpha, p.beta))


def _hyp1f1_vec(a, b, z):
    """Vector 1F1(a; b; z_i) for b > 0, routing z < 0 through the
    Kummer transform like specfun.kummer_1f1 does."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    neg = z < 0
    if np.any(~neg):
        out[~neg] = _hyp1f1_series_vec(a, b, z[~neg])
    if np.any(neg):
        zn = -z[neg]
        out[neg] = np.exp(-zn) * _hyp1f1_series_vec(b - a, b, zn)
    return out


def _hyp1f1_series_vec(a, b, z):
    # elementwise Taylor series; all z >= 0
    total = np.ones_like(z)
    term = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)
    for k in range(specfun._MAX_ITER):
        term = term * ((a + k) / ((b + k) * (k + 1.0))) * z
        total = total + term
        if k > 2:
            active = np.abs(term) >= 1e-17 * np.abs(total)
            if not active.any():
                return total
    raise ConvergenceError("vector 1F1 series did not converge")


def _eval_pagb(u, p):
    b_arg = p.alpha + p.beta
    denom = specfun.kummer_1f1(p.beta, b_arg, p.shift).value
    numer = _hyp1f1_vec(p.beta, b_arg, p.shift + np.log(u))
    return numer / denom


_EVAL = {
    Family.POWER: _eval_power,
    Family.GP: _eval_gp,
    Family.PARETO: _eval_pareto,
    Family.PG: _eval_pg,
    Family.PIG: _eval_pig,
    Family.GPG: _eval_gpg,
    Family.GPIG: _eval_gpig,
    Family.PAGB: _eval_pagb,
}


def evaluate(model, u):
    """Evaluate K(u) for a curve model.

    Parameters
    ----------
    model : CurveModel
    u : float or array_like
        Points in [0, 1].

    Returns
    -------
    float or ndarray
        K(u), with K(0) = 0 and K(1) = 1 exactly.
    """
    arr = np.asarray(u, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError("u must lie in [0, 1]")
    out = np.empty_like(arr)
    interior = (arr > 0.0) & (arr < 1.0)
    out[arr == 0.0] = 0.0
    out[arr == 1.0] = 1.0
    if interior.any():
        out[interior] = _EVAL[model.family](arr[interior], model.params)
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# generic constructions


def leimkuhler_from_quantile(quantile, mean, u, tol=1e-10):
    """Leimkuhler curve value from a distribution's quantile function.

    Computes K(u) = (1/mean) * integral of quantile(y) dy over
    (1-u, 1) by adaptive quadrature.

    Parameters
    ----------
    quantile : callable
        Quantile function F^{-1}(y) of the citation distribution,
        defined on (0, 1); an integrable endpoint singularity at y = 1
        is handled.
    mean : float
        Mean of the distribution; must be positive.
    u : float
        Point in [0, 1].
    tol : float
        Absolute error target for the integral.

    Returns
    -------
    float
    """
    if not (mean > 0) or not math.isfinite(mean):
        raise ValueError(f"mean must be positive and finite, got {mean}")
    if not (0.0 <= u <= 1.0):
        raise ValueError(f"u must lie in [0, 1], got {u}")
    if u == 0.0:
        return 0.0
    value, err = quad(quantile, 1.0 - u, 1.0, epsabs=tol * 0.5, epsrel=1e-12, limit=400)
    if not math.isfinite(value):
        raise ValueError("quantile integral is not finite")
    if err > tol:
        raise ConvergenceError(
            f"quantile integral error estimate {err:.3e} exceeds tol {tol:.3e}",
            value / mean,
            err / mean,
        )
    return value / mean


def lorenz_to_leimkuhler(lorenz, u):
    """Convert a Lorenz curve value to the dual Leimkuhler value,
    K(u) = 1 - L(1-u)."""
    return 1.0 - lorenz(1.0 - u)


def _base_curve_value(base_family, u, theta, kappa):
    base_family = Family(base_family)
    if base_family is Family.POWER:
        return -math.expm1((1.0 + theta) * math.log1p(-u))
    if base_family is Family.PARETO:
        return math.exp((1.0 - theta) * math.log(u))
    if base_family is Family.GP:
        if kappa is None:
            raise ValueError("GP base needs the fixed kappa argument")
        return 1.0 + math.expm1(kappa * math.log(u)) * math.exp(theta * math.log1p(-u))
    raise ValueError(f"unsupported base family {base_family!r}")


def mixture_curve_numeric(base_family, mixing_density, support, u, tol=1e-9, kappa=None):
    """Numeric mixture curve: integrate K_base(u; theta) against a
    mixing density over theta.

    This is the slow reference construction the closed-form mixture
    families are tested against.

    Parameters
    ----------
    base_family : Family or str
        One of power, gp, pareto.  GP also needs `kappa`.
    mixing_density : callable
        Density g(theta); must integrate to 1 over `support`.
    support : tuple of float
        Integration interval (lo, hi); hi may be inf.
    u : float
        Point in [0, 1].
    tol : float
        Absolute error target.
    kappa : float, optional
        Fixed kappa for a GP base curve.

    Returns
    -------
    float
    """
    if not (0.0 <= u <= 1.0):
        raise ValueError(f"u must lie in [0, 1], got {u}")
    lo, hi = support
    norm, norm_err = quad(mixing_density, lo, hi, epsabs=tol * 0.1, epsrel=1e-12, limit=400)
    if abs(norm - 1.0) > max(10.0 * tol, 1e-8):
        raise ValueError(f"mixing density integrates to {norm!r}, not 1, over {support}")
    if u == 0.0:
        return 0.0
    if u == 1.0:
        return 1.0

    def integrand(theta):
        return _base_curve_value(base_family, u, theta, kappa) * mixing_density(theta)

    value, err = quad(integrand, lo, hi, epsabs=tol * 0.5, epsrel=1e-12, limit=400)
    if err > tol:
        raise ConvergenceError(
            f"mixture integral error estimate {err:.3e} exceeds tol {tol:.3e}", value, err
        )
    return value


# ---------------------------------------------------------------------------
# mixing densities


def gamma_mixing_density(alpha, beta):
    """Gamma density (shape alpha, rate beta) on (0, inf), as a callable."""
    _check_positive("alpha", alpha)
    _check_positive("beta", beta)
    lognorm = alpha * math.log(beta) - math.lgamma(alpha)

    def density(theta):
        if theta <= 0:
            return 0.0
        return math.exp(lognorm + (alpha - 1.0) * math.log(theta) - beta * theta)

    return density


def inverse_gaussian_mixing_density(alpha, beta):
    """Inverse-Gaussian density (mean alpha, shape beta) on (0, inf)."""
    _check_positive("alpha", alpha)
    _check_positive("beta", beta)

    def density(theta):
        if theta <= 0:
            return 0.0
        return math.sqrt(beta / (2.0 * math.pi * theta**3)) * math.exp(
            -beta * (theta - alpha) ** 2 / (2.0 * alpha * alpha * theta)
        )

    return density


def tilted_beta_mixing_density(alpha, beta, shift):
    """Exponentially tilted beta density on (0, 1):
    g(theta) proportional to theta**(alpha-1) (1-theta)**(beta-1) exp(-shift*theta).

    The normalizer is B(alpha, beta) * 1F1(alpha; alpha+beta; -shift).
    This is the mixing density whose Pareto mixture gives the pagb
    family; shift = 0 reduces it to the Beta(alpha, beta) density.
    """
    _check_positive("alpha", alpha)
    _check_positive("beta", beta)
    if not math.isfinite(shift):
        raise ValueError(f"shift must be finite, got {shift}")
    logbeta = math.lgamma(alpha) + math.lgamma(beta) - math.lgamma(alpha + beta)
    norm = logbeta + math.log(specfun.kummer_1f1(alpha, alpha + beta, -shift).value)

    def density(theta):
        if theta <= 0.0 or theta >= 1.0:
            return 0.0
        return math.exp(
            (alpha - 1.0) * math.log(theta)
            + (beta - 1.0) * math.log1p(-theta)
            - shift * theta
            - norm
        )

    return density


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    """A single violated curve property at a grid location."""

    prop: str
    u: float
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate_curve: empty violations means a valid curve."""

    violations: tuple

    @property
    def is_valid(self):
        return not self.violations


def validate_curve(model, grid_size=512):
    """Check the defining curve properties on a uniform grid.

    Verifies K(0) = 0 and K(1) = 1, monotonicity of forward
    differences (tolerance -1e-12), and concavity of second differences
    (tolerance 1e-10).

    Returns
    -------
    ValidationReport
    """
    if grid_size < 3:
        raise ValueError("grid_size must be at least 3")
    u = np.linspace(0.0, 1.0, grid_size)
    k = evaluate(model, u)
    violations = []
    if k[0] != 0.0:
        violations.append(Violation("endpoint", 0.0, f"K(0) = {k[0]!r}"))
    if k[-1] != 1.0:
        violations.append(Violation("endpoint", 1.0, f"K(1) = {k[-1]!r}"))
    bad = ~np.isfinite(k)
    for i in np.flatnonzero(bad):
        violations.append(Violation("finite", float(u[i]), f"K = {k[i]!r}"))
    if not bad.any():
        d1 = np.diff(k)
        for i in np.flatnonzero(d1 < -1e-12):
            violations.append(
                Violation("monotone", float(u[i + 1]), f"forward difference {d1[i]:.3e}")
            )
        d2 = np.diff(k, 2)
        for i in np.flatnonzero(d2 > 1e-10):
            violations.append(
                Violation("concave", float(u[i + 1]), f"second difference {d2[i]:.3e}")
            )
    return ValidationReport(tuple(violations))
