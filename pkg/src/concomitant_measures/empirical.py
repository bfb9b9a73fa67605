"""Empirical CPI from sample spacings, exact moments, and Monte Carlo validation.

Ordering a Y-sample Z_(1) <= ... <= Z_(n) and writing U_j = Z_(j+1) - Z_(j)
for the spacings, the empirical CPI of the r-th GOS concomitant is

    I_hat = sum_{j=1}^{n-1} U_j (j/n) (-log(j/n)) [1 + alpha C* (1 - j/n)].

Ties contribute zero spacings and therefore vanish from the sum.  The same
weights define spacings-based estimators of CE(Y) and CE(Y_(2:2)), and I_hat
is exactly their alpha-C* combination, mirroring the population identity.

Two sampling models admit exact moment formulas for I_hat in the record case:
exponential marginals with rate theta2 (spacings are independent exponentials
with mean 1/(theta2 (n-j))) and the standard uniform (spacings are Beta(1, n);
the variance formula treats them as independent, which overstates the true
variance -- uniform spacings are negatively correlated -- so variance-level
Monte Carlo gates should use the exponential model).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import cpi as _cpi
from .fgm import FgmModel, GosParams, c_star, format_gos, record_value
from .marginals import (
    Exponential,
    GeneralizedExponential,
    MarginalFamily,
    Uniform,
    format_marginal,
)
from .numerics import RngStream

__all__ = [
    "spacings",
    "empirical_cpi",
    "empirical_cpi_record",
    "empirical_cumulative_entropy",
    "empirical_cumulative_entropy_max2",
    "moments_mtbged",
    "moments_mtbud",
    "theoretical_moments",
    "clt_zscore",
    "lyapunov_ratio",
    "EmpiricalStudy",
    "ValidationReport",
    "mc_validate",
    "ks_statistic",
    "ks_critical_value",
    "standard_normal_cdf",
    "spearman_rho",
]


def spacings(values) -> np.ndarray:
    """Gaps between consecutive order statistics of a sample (sorted internally)."""
    z = np.sort(np.asarray(values, dtype=float))
    if z.size < 2:
        raise ValueError("need a sample of size >= 2")
    return np.diff(z)


def _weighted_spacing_sum(values, weight) -> float:
    u = spacings(values)
    n = u.size + 1
    j = np.arange(1, n) / n
    return float(np.sum(u * weight(j)))


def empirical_cpi(values, alpha: float, p: GosParams) -> float:
    """Spacings estimator of CPI for the concomitant configuration ``p``.

    The j/n weights use the sample size; the tilt coefficient C* comes from
    ``p``.  Requires |alpha| <= 1 and n >= 2.
    """
    if not abs(alpha) <= 1.0:
        raise ValueError(f"|alpha| must be <= 1, got {alpha}")
    c = alpha * c_star(p)
    return _weighted_spacing_sum(values, lambda j: j * (-np.log(j)) * (1.0 + c * (1.0 - j)))


def empirical_cpi_record(values, alpha: float, r: int) -> float:
    """Record-case estimator: tilt coefficient alpha (2^(1-r) - 1)."""
    return empirical_cpi(values, alpha, record_value(r))


def empirical_cumulative_entropy(values) -> float:
    """Spacings estimator of CE(Y): sum U_j (j/n)(-log(j/n))."""
    return _weighted_spacing_sum(values, lambda j: j * (-np.log(j)))


def empirical_cumulative_entropy_max2(values) -> float:
    """Spacings estimator of CE(Y_(2:2)): sum U_j (j/n)^2 (-2 log(j/n))."""
    return _weighted_spacing_sum(values, lambda j: -2.0 * j**2 * np.log(j))


def _estimator_weights(n: int, coeff: float) -> np.ndarray:
    j = np.arange(1, n) / n
    return j * (-np.log(j)) * (1.0 + coeff * (1.0 - j))


def _exponential_moments(n: int, rate: float, coeff: float) -> tuple[float, float]:
    # spacing j of an exponential(rate) sample ~ Exp with mean 1/(rate (n-j))
    w = _estimator_weights(n, coeff)
    mu = w / (rate * np.arange(n - 1, 0, -1))
    return float(mu.sum()), float((mu**2).sum())


def _uniform_moments(n: int, coeff: float, scale: float = 1.0) -> tuple[float, float]:
    # spacings of a uniform(0, scale) sample ~ scale * Beta(1, n), treated as
    # independent for the variance (see module docstring)
    w = _estimator_weights(n, coeff)
    mean = scale * float(w.sum()) / (n + 1)
    var = scale**2 * n / ((n + 1) ** 2 * (n + 2)) * float((w**2).sum())
    return mean, var


def moments_mtbged(n: int, theta2: float, alpha: float, r: int) -> tuple[float, float]:
    """Exact (mean, variance) of the record-case estimator, exponential marginal
    with rate theta2 (the lam = 1 generalized-exponential model)."""
    if n < 2:
        raise ValueError("need n >= 2")
    if not theta2 > 0.0:
        raise ValueError(f"theta2 must be > 0, got {theta2}")
    coeff = alpha * (2.0 ** (1 - r) - 1.0)
    return _exponential_moments(n, theta2, coeff)


def moments_mtbud(n: int, alpha: float, r: int) -> tuple[float, float]:
    """(mean, independence-approximation variance) of the record-case estimator,
    standard uniform marginal."""
    if n < 2:
        raise ValueError("need n >= 2")
    coeff = alpha * (2.0 ** (1 - r) - 1.0)
    return _uniform_moments(n, coeff)


def theoretical_moments(
    marginal: MarginalFamily, p: GosParams, alpha: float, n: int
) -> tuple[float, float] | None:
    """Exact estimator moments where the spacing law is known, else None.

    Covers exponential-type marginals (Exponential scale theta == rate
    1/theta; GeneralizedExponential with lam = 1) and Uniform(0, theta), for
    any GOS configuration via its C*.
    """
    coeff = alpha * c_star(p)
    if isinstance(marginal, Exponential):
        return _exponential_moments(n, 1.0 / marginal.theta, coeff)
    if isinstance(marginal, GeneralizedExponential) and marginal.lam == 1.0:
        return _exponential_moments(n, marginal.theta, coeff)
    if isinstance(marginal, Uniform):
        return _uniform_moments(n, coeff, scale=marginal.theta)
    return None


def clt_zscore(value: float, mean: float, variance: float) -> float:
    if not variance > 0.0:
        raise ValueError(f"variance must be > 0, got {variance}")
    return (value - mean) / math.sqrt(variance)


def lyapunov_ratio(n: int, theta2: float, alpha: float, r: int) -> float:
    """Third-moment Lyapunov quotient for the record-case estimator under the
    exponential spacing model; decays like n^(-1/6).

    Uses E|W - EW|^3 = 2 e^(-1) (6 - e) (EW)^3 for exponential W.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    coeff = alpha * (2.0 ** (1 - r) - 1.0)
    w = _estimator_weights(n, coeff)
    mu = w / (theta2 * np.arange(n - 1, 0, -1))
    s2 = float((mu**2).sum())
    s3 = 2.0 / math.e * (6.0 - math.e) * float((mu**3).sum())
    return s3 ** (1.0 / 3.0) / math.sqrt(s2)


# --- diagnostics ---------------------------------------------------------------


def standard_normal_cdf(z):
    z = np.asarray(z, dtype=float)
    out = np.array([0.5 * (1.0 + math.erf(v / math.sqrt(2.0))) for v in np.atleast_1d(z)])
    return float(out[0]) if z.ndim == 0 else out


def ks_statistic(values, cdf) -> float:
    """One-sample Kolmogorov-Smirnov distance sup |F_n - F|."""
    x = np.sort(np.asarray(values, dtype=float))
    n = x.size
    F = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n)))


def ks_critical_value(n: int, level: float = 0.01) -> float:
    """Asymptotic KS critical value: sqrt(-log(level/2) / 2) / sqrt(n)."""
    return math.sqrt(-0.5 * math.log(level / 2.0)) / math.sqrt(n)


def spearman_rho(x, y) -> float:
    rx = np.argsort(np.argsort(x)).astype(float)
    ry = np.argsort(np.argsort(y)).astype(float)
    return float(np.corrcoef(rx, ry)[0, 1])


# --- Monte Carlo validation harness ---------------------------------------------


@dataclass(frozen=True)
class EmpiricalStudy:
    """One sample's estimator value with CLT diagnostics where available."""

    sample_size: int
    gos: GosParams
    alpha: float
    value: float
    theoretical_mean: float | None = None
    theoretical_var: float | None = None
    z_score: float | None = None


def study(values, alpha: float, p: GosParams, marginal: MarginalFamily | None = None) -> EmpiricalStudy:
    values = np.asarray(values, dtype=float)
    value = empirical_cpi(values, alpha, p)
    mean = var = z = None
    if marginal is not None:
        mo = theoretical_moments(marginal, p, alpha, values.size)
        if mo is not None:
            mean, var = mo
            if var > 0.0:
                z = clt_zscore(value, mean, var)
    return EmpiricalStudy(values.size, p, alpha, value, mean, var, z)


@dataclass(frozen=True)
class ValidationReport:
    """Replicated-estimator summary produced by :func:`mc_validate`."""

    marginal: str
    gos: str
    alpha: float
    n: int
    replicates: int
    seed: int
    empirical_mean: float
    empirical_variance: float
    theoretical_mean: float | None
    theoretical_variance: float | None
    analytic_cpi: float
    bias: float
    ks_normality: float | None


def mc_validate(
    marginal: MarginalFamily,
    p: GosParams,
    alpha: float,
    n: int,
    replicates: int,
    stream: RngStream,
) -> ValidationReport:
    """Replicate the spacings estimator on fresh Y-samples and summarise.

    Replicate i draws from ``stream.substream(i)``, so the value of every
    replicate is pinned by (seed, stream_id, i) alone -- reproducible under
    any parallel execution layout.  Requires ``replicates >= 100``.
    """
    if replicates < 100:
        raise ValueError(f"need replicates >= 100, got {replicates}")
    if n < 2:
        raise ValueError("need n >= 2")
    model = FgmModel(marginal_x=marginal, marginal_y=marginal, alpha=alpha)
    vals = np.empty(replicates)
    for i in range(replicates):
        sub = stream.substream(i)
        y = marginal.quantile(sub.uniforms(n))
        vals[i] = empirical_cpi(y, alpha, p)
    emp_mean = float(vals.mean())
    emp_var = float(vals.var(ddof=1))
    mo = theoretical_moments(marginal, p, alpha, n)
    theo_mean, theo_var = mo if mo is not None else (None, None)
    analytic = _cpi.cpi_gos(model, p).value
    bias = emp_mean - (theo_mean if theo_mean is not None else analytic)
    ks = None
    if theo_var is not None and theo_var > 0.0:
        z = (vals - theo_mean) / math.sqrt(theo_var)
        ks = ks_statistic(z, standard_normal_cdf)
    return ValidationReport(
        marginal=format_marginal(marginal),
        gos=format_gos(p),
        alpha=alpha,
        n=n,
        replicates=replicates,
        seed=stream.seed,
        empirical_mean=emp_mean,
        empirical_variance=emp_var,
        theoretical_mean=theo_mean,
        theoretical_variance=theo_var,
        analytic_cpi=analytic,
        bias=bias,
        ks_normality=ks,
    )
