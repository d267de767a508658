"""Special functions used by the curve and index routines.

Everything here is evaluated with plain floating point and returns a
:class:`SpecFunResult` carrying the value, a running absolute error
estimate, and a tag naming the method that produced it.  The error
estimates are working figures (truncation plus accumulated rounding),
not rigorous bounds.

The upper incomplete gamma function is the one routine with a
non-standard domain: it accepts negative shape parameters, where the
function is defined by the convergent integral of t**(a-1)*exp(-t) on
(x, inf) for x > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "SpecFunResult",
    "ConvergenceError",
    "log_gamma",
    "upper_incomplete_gamma",
    "regularized_incomplete_beta",
    "kummer_1f1",
]

_EPS = 2.220446049250313e-16
_TINY = 1e-300
_MAX_ITER = 20000


class ConvergenceError(RuntimeError):
    """An iteration failed to reach its tolerance.

    Carries the partial value and the running error estimate so callers
    can decide whether the result is still usable.
    """

    def __init__(self, message, partial_value=None, abs_error_estimate=None):
        super().__init__(message)
        self.partial_value = partial_value
        self.abs_error_estimate = abs_error_estimate


@dataclass(frozen=True)
class SpecFunResult:
    """Value plus diagnostic metadata for a special-function evaluation."""

    value: float
    abs_error_estimate: float
    method: str  # 'series' | 'continued_fraction' | 'recurrence' | 'transform'

    def __float__(self):
        return self.value


def log_gamma(a):
    """Natural log of the gamma function for a > 0."""
    if not (a > 0) or not math.isfinite(a):
        raise ValueError(f"log_gamma requires a > 0, got {a}")
    return math.lgamma(a)


# ---------------------------------------------------------------------------
# upper incomplete gamma


def _gamma_p_series(a, x):
    """Lower regularized P(a, x) by power series; valid for x < a + 1."""
    term = 1.0 / a
    total = term
    n = 0
    while n < _MAX_ITER:
        n += 1
        term *= x / (a + n)
        total += term
        if abs(term) < abs(total) * _EPS:
            prefac = math.exp(a * math.log(x) - x - math.lgamma(a))
            return prefac * total, prefac * (abs(term) + _EPS * abs(total) * n)
    raise ConvergenceError("incomplete gamma series did not converge", total, abs(term))


def _gamma_q_cf(a, x):
    """Upper Q(a, x)*Gamma(a) = Gamma(a, x) by Lentz continued fraction.

    Converges for x >= a + 1 (a > 0); also used for a = 0 at large x
    where it evaluates the exponential integral E1.
    """
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            pre = math.exp(a * math.log(x) - x)
            if math.isinf(pre):
                raise OverflowError("incomplete gamma prefactor overflowed")
            if pre == 0.0:
                # true value sits below the double range
                return 0.0, 1e-308
            value = pre * h
            return value, abs(value) * (abs(delta - 1.0) + _EPS * i)
    raise ConvergenceError("incomplete gamma continued fraction did not converge")


def _e1(x):
    """Exponential integral E1(x) = Gamma(0, x), x > 0."""
    if x <= 1.5:
        # E1 = -gamma - ln x + sum (-1)^(k+1) x^k / (k k!)
        total = -0.5772156649015328606 - math.log(x)
        term = 1.0
        for k in range(1, _MAX_ITER):
            term *= -x / k
            contrib = -term / k
            total += contrib
            if abs(contrib) < _EPS * (abs(total) + _TINY):
                return total, _EPS * abs(total) * 4, "series"
        raise ConvergenceError("E1 series did not converge")
    value, err = _gamma_q_cf(0.0, x)
    return value, err, "continued_fraction"


def upper_incomplete_gamma(a, x):
    """Upper incomplete gamma function Gamma(a, x) for real a and x > 0.

    Parameters
    ----------
    a : float
        Shape; may be negative or zero.
    x : float
        Lower integration limit; must be positive.

    Returns
    -------
    SpecFunResult

    Notes
    -----
    For a >= 1/2 the classic split is used: a power series below the
    diagonal x = a + 1 and a Lentz continued fraction above it.  For
    smaller (including negative) shapes the continued fraction is
    evaluated directly at a whenever x >= 1/4; it stays accurate there
    while the downward recurrence

        Gamma(a, x) = (Gamma(a + 1, x) - x**a * exp(-x)) / a

    amplifies rounding by roughly x/|a| per step.  Below x = 1/4 the
    recurrence is the stable route and is seeded with an evaluation at
    a pivot shape in [1/2, 3/2), never at a tiny positive shape where
    Gamma(a)*(1 - P(a, x)) would cancel catastrophically.  A chain
    through an integer shape pivots on Gamma(0, x) = E1(x) instead,
    where the recurrence would divide by zero.  Conditioning cliff:
    shapes within ~1e-8 of a negative integer (or of zero) are
    inherently ill-conditioned for x < 1/4; the error estimate reports
    the blow-up honestly.
    """
    if not (x > 0) or not math.isfinite(x) or not math.isfinite(a):
        raise ValueError(f"upper_incomplete_gamma requires finite a and x > 0, got a={a}, x={x}")

    if a >= 0.5:
        if x < a + 1.0:
            p, perr = _gamma_p_series(a, x)
            gam = math.exp(math.lgamma(a))
            if math.isinf(gam):
                raise OverflowError("Gamma(a) overflowed")
            value = gam * (1.0 - p)
            return SpecFunResult(value, gam * (perr + _EPS * (1.0 + p)), "series")
        value, err = _gamma_q_cf(a, x)
        return SpecFunResult(value, err, "continued_fraction")

    if a == 0:
        value, err, method = _e1(x)
        return SpecFunResult(value, err, method)

    if x >= 0.25:
        value, err = _gamma_q_cf(a, x)
        return SpecFunResult(value, err, "continued_fraction")

    # x < 1/4, a < 1/2: walk the recurrence down from a pivot shape in
    # [1/2, 3/2), or from E1(x) when a is a non-positive integer.
    if a < 0 and a == math.floor(a):
        pivot = 0.0
        value, err, _ = _e1(x)
    else:
        steps = math.ceil(0.5 - a)
        pivot = a + steps
        res = upper_incomplete_gamma(pivot, x)
        value, err = res.value, res.abs_error_estimate

    logx = math.log(x)
    shape = pivot
    while shape > a + 0.5:
        shape -= 1.0
        t = math.exp(shape * logx - x)
        if math.isinf(t):
            raise OverflowError("x**a * exp(-x) overflowed in gamma recurrence")
        value = (value - t) / shape
        err = (err + _EPS * t) / abs(shape) + _EPS * abs(value)
        if math.isinf(value):
            raise OverflowError("Gamma(a, x) overflowed in downward recurrence")
    return SpecFunResult(value, err, "recurrence")


# ---------------------------------------------------------------------------
# regularized incomplete beta


def _beta_cf(a, b, x):
    """Lentz continued fraction for the incomplete beta function."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h, abs(delta - 1.0) + _EPS * m
    raise ConvergenceError("incomplete beta continued fraction did not converge")


def regularized_incomplete_beta(a, b, x):
    """Regularized incomplete beta function I_x(a, b).

    Parameters
    ----------
    a, b : float
        Positive shape parameters.
    x : float
        Point in [0, 1].

    Returns
    -------
    SpecFunResult
    """
    if not (a > 0 and b > 0):
        raise ValueError(f"regularized_incomplete_beta requires a, b > 0, got a={a}, b={b}")
    if not (0.0 <= x <= 1.0):
        raise ValueError(f"regularized_incomplete_beta requires 0 <= x <= 1, got x={x}")
    if x == 0.0:
        return SpecFunResult(0.0, 0.0, "continued_fraction")
    if x == 1.0:
        return SpecFunResult(1.0, 0.0, "continued_fraction")
    logbeta = math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
    front = math.exp(a * math.log(x) + b * math.log1p(-x) - logbeta)
    if x < (a + 1.0) / (a + b + 2.0):
        cf, cferr = _beta_cf(a, b, x)
        value = front * cf / a
        return SpecFunResult(value, abs(value) * (cferr + 4 * _EPS), "continued_fraction")
    cf, cferr = _beta_cf(b, a, 1.0 - x)
    value = 1.0 - front * cf / b
    return SpecFunResult(value, (abs(front * cf / b) + 1.0) * (cferr + 4 * _EPS), "continued_fraction")


# ---------------------------------------------------------------------------
# confluent hypergeometric 1F1


def _kummer_series(a, b, z):
    """Taylor series for 1F1(a; b; z); all terms positive when a, b, z > 0."""
    term = 1.0
    total = 1.0
    total_abs = 1.0
    for k in range(_MAX_ITER):
        term *= (a + k) * z / ((b + k) * (k + 1.0))
        total += term
        total_abs += abs(term)
        if math.isinf(total):
            raise OverflowError("1F1 series overflowed")
        if abs(term) < _EPS * abs(total) and k > 2:
            return total, abs(term) + _EPS * total_abs
    raise ConvergenceError("1F1 series did not converge", total, abs(term))


def kummer_1f1(a, b, z):
    """Kummer confluent hypergeometric function 1F1(a; b; z).

    Parameters
    ----------
    a : float
    b : float
        Must be positive (the denominator parameter never hits a pole).
    z : float

    Returns
    -------
    SpecFunResult

    Notes
    -----
    Negative arguments are routed through the Kummer transform
    1F1(a; b; z) = exp(z) * 1F1(b - a; b; -z), which avoids the
    catastrophic cancellation of the alternating direct series whenever
    b >= a.  For z < 0 with a > b both routes alternate in sign and the
    attainable relative accuracy degrades; abs_error_estimate reports
    the loss honestly in that corner.
    """
    if not (b > 0) or not math.isfinite(b):
        raise ValueError(f"kummer_1f1 requires b > 0, got b={b}")
    if not (math.isfinite(a) and math.isfinite(z)):
        raise ValueError("kummer_1f1 requires finite a and z")
    if z == 0.0:
        return SpecFunResult(1.0, 0.0, "series")
    if z > 0:
        value, err = _kummer_series(a, b, z)
        return SpecFunResult(value, err, "series")
    scale = math.exp(z)
    total, err = _kummer_series(b - a, b, -z)
    value = scale * total
    if math.isinf(value):
        raise OverflowError("1F1 overflowed after Kummer transform")
    return SpecFunResult(value, scale * err + _EPS * abs(value), "transform")
