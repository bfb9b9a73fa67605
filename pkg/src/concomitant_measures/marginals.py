"""Univariate marginal families with analytic information functionals.

Each family provides pdf/cdf/quantile plus four functionals used throughout
the measure modules:

============================  =========================================================
``shannon_entropy()``         H = -Int_0^hi f log f dy
``phi_f()``                   Int_{F(0)}^1 u log f(Q(u)) du
``cumulative_entropy()``      CE = -Int_0^hi F log F dy
``cumulative_entropy_max2()`` CE2 = -Int_0^hi F^2 log F^2 dy (cdf of a 2-sample max)
============================  =========================================================

All four integrate over y > 0, the domain on which the inaccuracy-type
measures are defined.  For the five nonnegative families this coincides with
the full support; the standard logistic keeps its full-line pdf/cdf/quantile
but its functionals are the y > 0 values (H(Y) is exactly 1 under this
convention, not the full-line value 2 -- every closed-form identity in the
measure modules requires this reading).

Entropy and phi are analytic for every family.  CE/CE2 are analytic except
for Rayleigh and Logistic, which fall back to quadrature (cached per
instance).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, fields
from typing import ClassVar

import numpy as np

from .numerics import QuadratureResult, digamma, integrate, trigamma

__all__ = [
    "Exponential",
    "Logistic",
    "Rayleigh",
    "GeneralizedExponential",
    "Uniform",
    "InverseWeibull",
    "MARGINAL_FAMILIES",
    "SpecFormatError",
    "parse_marginal",
    "format_marginal",
]

_EULER = 0.5772156649015328606


class SpecFormatError(ValueError):
    """A marginal/GOS spec string failed to parse; names the offending token."""


def _as_array(y):
    arr = np.asarray(y, dtype=float)
    return arr, arr.ndim == 0


def _ret(arr, scalar):
    return float(arr) if scalar else arr


class MarginalFamily:
    """Shared behaviour; concrete families are frozen dataclasses below."""

    ce_exact: ClassVar[bool] = True

    def support(self) -> tuple[float, float]:
        raise NotImplementedError

    def u_lower(self) -> float:
        """cdf at 0, the lower limit of u-space measure integrals."""
        return float(self.cdf(0.0))

    def log_cdf(self, y):
        """log F(y), overridden per family so that the deep tail (F near 1)
        keeps full relative precision; cdf-based integrands depend on it."""
        y, s = _as_array(y)
        with np.errstate(divide="ignore"):
            return _ret(np.log(self.cdf(y)), s)

    # CE/CE2 default to quadrature of their definitions; families with a
    # closed form override.
    def cumulative_entropy(self) -> float:
        return _ce_quadrature(self, 1).value

    def cumulative_entropy_max2(self) -> float:
        return _ce_quadrature(self, 2).value

    def ce_error_estimate(self) -> float:
        return 0.0 if type(self).ce_exact else _ce_quadrature(self, 1).abs_error_estimate

    def ce2_error_estimate(self) -> float:
        return 0.0 if type(self).ce_exact else _ce_quadrature(self, 2).abs_error_estimate


@functools.lru_cache(maxsize=None)
def _ce_quadrature(m: MarginalFamily, power: int) -> QuadratureResult:
    hi = m.support()[1]

    def integrand(y):
        logF = m.log_cdf(y)
        # F^p log F via exp(p log F); the 0 log 0 = 0 convention at logF = -inf
        return np.where(np.isfinite(logF), -power * np.exp(power * logF) * logF, 0.0)

    return integrate(integrand, 0.0, hi)


@dataclass(frozen=True)
class Exponential(MarginalFamily):
    """Exponential with scale theta: F(y) = 1 - exp(-y/theta)."""

    theta: float = 1.0

    def __post_init__(self):
        if not self.theta > 0.0:
            raise ValueError(f"theta must be > 0, got {self.theta}")

    def support(self):
        return (0.0, math.inf)

    def pdf(self, y):
        y, s = _as_array(y)
        return _ret(np.where(y >= 0.0, np.exp(-y / self.theta) / self.theta, 0.0), s)

    def cdf(self, y):
        y, s = _as_array(y)
        return _ret(np.where(y >= 0.0, -np.expm1(-y / self.theta), 0.0), s)

    def quantile(self, u):
        u, s = _as_array(u)
        _check_u(u)
        return _ret(-self.theta * np.log1p(-u), s)

    def log_cdf(self, y):
        y, s = _as_array(y)
        t = np.maximum(y, 0.0) / self.theta
        core = np.log(np.maximum(-np.expm1(-t), 1e-300))
        return _ret(np.where(y > 0.0, core, -np.inf), s)

    def shannon_entropy(self):
        return 1.0 + math.log(self.theta)

    def phi_f(self):
        return -0.5 * math.log(self.theta) - 0.75

    def cumulative_entropy(self):
        return (math.pi**2 / 6.0 - 1.0) * self.theta

    def cumulative_entropy_max2(self):
        return 2.0 * (math.pi**2 / 6.0 - 1.25) * self.theta


@dataclass(frozen=True)
class Logistic(MarginalFamily):
    """Standard logistic: F(y) = 1/(1 + exp(-y)), support all of R.

    The information functionals are the y > 0 values (see module docstring);
    there is no closed form for CE/CE2, so those go through quadrature.
    """

    ce_exact: ClassVar[bool] = False

    def support(self):
        return (-math.inf, math.inf)

    def pdf(self, y):
        y, s = _as_array(y)
        e = np.exp(-np.abs(y))  # symmetric form, no overflow on either tail
        return _ret(e / (1.0 + e) ** 2, s)

    def cdf(self, y):
        y, s = _as_array(y)
        e = np.exp(-np.abs(y))  # stable on both tails
        return _ret(np.where(y >= 0.0, 1.0 / (1.0 + e), e / (1.0 + e)), s)

    def quantile(self, u):
        u, s = _as_array(u)
        _check_u(u)
        return _ret(np.log(u) - np.log1p(-u), s)

    def log_cdf(self, y):
        y, s = _as_array(y)
        # -log(1 + e^(-y)), stable on both tails
        return _ret(np.where(y >= 0.0, -np.log1p(np.exp(-np.abs(y))), y - np.log1p(np.exp(-np.abs(y)))), s)

    def shannon_entropy(self):
        return 1.0

    def phi_f(self):
        return -0.625 - 0.25 * math.log(2.0)


@dataclass(frozen=True)
class Rayleigh(MarginalFamily):
    """Rayleigh with scale sigma: F(y) = 1 - exp(-y^2 / (2 sigma^2))."""

    sigma: float = 1.0
    ce_exact: ClassVar[bool] = False

    def __post_init__(self):
        if not self.sigma > 0.0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")

    def support(self):
        return (0.0, math.inf)

    def pdf(self, y):
        y, s = _as_array(y)
        v = self.sigma**2
        return _ret(np.where(y >= 0.0, y / v * np.exp(-(y**2) / (2.0 * v)), 0.0), s)

    def cdf(self, y):
        y, s = _as_array(y)
        return _ret(np.where(y >= 0.0, -np.expm1(-(y**2) / (2.0 * self.sigma**2)), 0.0), s)

    def quantile(self, u):
        u, s = _as_array(u)
        _check_u(u)
        return _ret(self.sigma * np.sqrt(-2.0 * np.log1p(-u)), s)

    def log_cdf(self, y):
        y, s = _as_array(y)
        t = np.maximum(y, 0.0) ** 2 / (2.0 * self.sigma**2)
        core = np.log(np.maximum(-np.expm1(-t), 1e-300))
        return _ret(np.where(y > 0.0, core, -np.inf), s)

    def shannon_entropy(self):
        return 1.0 + 0.5 * _EULER + math.log(self.sigma / math.sqrt(2.0))

    def phi_f(self):
        return -0.5 * math.log(self.sigma) - 0.75 + 0.5 * math.log(2.0) - 0.25 * _EULER


@dataclass(frozen=True)
class GeneralizedExponential(MarginalFamily):
    """Exponentiated exponential with rate theta: F(y) = (1 - exp(-theta y))^lam.

    lam = 1 recovers the rate-theta exponential.  Note the rate convention
    here versus the scale convention of :class:`Exponential`; both appear in
    the bivariate models this package reproduces.
    """

    theta: float = 1.0
    lam: float = 1.0

    def __post_init__(self):
        if not self.theta > 0.0:
            raise ValueError(f"theta must be > 0, got {self.theta}")
        if not self.lam > 0.0:
            raise ValueError(f"lam must be > 0, got {self.lam}")

    def support(self):
        return (0.0, math.inf)

    def pdf(self, y):
        y, s = _as_array(y)
        t = self.theta * np.maximum(y, 0.0)
        base = np.where(t > 0.0, -np.expm1(-t), 1.0)  # dummy 1 where masked out below
        val = self.lam * self.theta * np.exp(-t) * base ** (self.lam - 1.0)
        return _ret(np.where(y > 0.0, val, 0.0), s)

    def cdf(self, y):
        y, s = _as_array(y)
        base = -np.expm1(-self.theta * np.maximum(y, 0.0))
        return _ret(np.where(y > 0.0, base**self.lam, 0.0), s)

    def quantile(self, u):
        u, s = _as_array(u)
        _check_u(u)
        return _ret(-np.log1p(-(u ** (1.0 / self.lam))) / self.theta, s)

    def log_cdf(self, y):
        y, s = _as_array(y)
        t = self.theta * np.maximum(y, 0.0)
        core = np.log(np.maximum(-np.expm1(-t), 1e-300))
        return _ret(np.where(y > 0.0, self.lam * core, -np.inf), s)

    def shannon_entropy(self):
        B = digamma(self.lam + 1.0) + _EULER
        return -math.log(self.lam * self.theta) + B + (self.lam - 1.0) / self.lam

    def phi_f(self):
        return (
            0.5 * math.log(self.lam * self.theta)
            - (self.lam - 1.0) / (4.0 * self.lam)
            - 0.5 * (digamma(2.0 * self.lam + 1.0) + _EULER)
        )

    def cumulative_entropy(self):
        return self.lam / self.theta * trigamma(self.lam + 1.0)

    def cumulative_entropy_max2(self):
        return 2.0 * self.lam / self.theta * trigamma(2.0 * self.lam + 1.0)


@dataclass(frozen=True)
class Uniform(MarginalFamily):
    """Uniform on (0, theta)."""

    theta: float = 1.0

    def __post_init__(self):
        if not self.theta > 0.0:
            raise ValueError(f"theta must be > 0, got {self.theta}")

    def support(self):
        return (0.0, self.theta)

    def pdf(self, y):
        y, s = _as_array(y)
        return _ret(np.where((y >= 0.0) & (y <= self.theta), 1.0 / self.theta, 0.0), s)

    def cdf(self, y):
        y, s = _as_array(y)
        return _ret(np.clip(y / self.theta, 0.0, 1.0), s)

    def quantile(self, u):
        u, s = _as_array(u)
        _check_u(u)
        return _ret(self.theta * u, s)

    def log_cdf(self, y):
        y, s = _as_array(y)
        with np.errstate(divide="ignore"):
            return _ret(np.where(y > 0.0, np.log(np.clip(y / self.theta, 1e-300, 1.0)), -np.inf), s)

    def shannon_entropy(self):
        return math.log(self.theta)

    def phi_f(self):
        return -0.5 * math.log(self.theta)

    def cumulative_entropy(self):
        return self.theta / 4.0

    def cumulative_entropy_max2(self):
        return 2.0 * self.theta / 9.0


@dataclass(frozen=True)
class InverseWeibull(MarginalFamily):
    """Inverse Weibull (Frechet): F(y) = exp(-(theta/y)^beta), y > 0.

    CE and CE2 are finite only for beta > 1 (Gamma((beta-1)/beta) has a pole
    at beta = 1); the CE-type accessors raise below that threshold while
    pdf/cdf/quantile and the entropy functionals remain valid.
    """

    theta: float = 1.0
    beta: float = 2.0

    def __post_init__(self):
        if not self.theta > 0.0:
            raise ValueError(f"theta must be > 0, got {self.theta}")
        if not self.beta > 0.0:
            raise ValueError(f"beta must be > 0, got {self.beta}")

    def support(self):
        return (0.0, math.inf)

    def pdf(self, y):
        y, s = _as_array(y)
        yy = np.where(y > 0.0, y, 1.0)
        val = (
            self.beta
            * self.theta**self.beta
            * yy ** (-self.beta - 1.0)
            * np.exp(-((self.theta / yy) ** self.beta))
        )
        return _ret(np.where(y > 0.0, val, 0.0), s)

    def cdf(self, y):
        y, s = _as_array(y)
        yy = np.where(y > 0.0, y, 1.0)
        return _ret(np.where(y > 0.0, np.exp(-((self.theta / yy) ** self.beta)), 0.0), s)

    def quantile(self, u):
        u, s = _as_array(u)
        _check_u(u)
        return _ret(self.theta * (-np.log(u)) ** (-1.0 / self.beta), s)

    def log_cdf(self, y):
        y, s = _as_array(y)
        yy = np.where(y > 0.0, y, 1.0)
        return _ret(np.where(y > 0.0, -((self.theta / yy) ** self.beta), -np.inf), s)

    def shannon_entropy(self):
        return 1.0 + _EULER * (1.0 + 1.0 / self.beta) + math.log(self.theta / self.beta)

    def phi_f(self):
        return (
            0.5 * math.log(self.beta / self.theta)
            - 0.5 * (1.0 + 1.0 / self.beta) * (_EULER + math.log(2.0))
            - 0.25
        )

    def _require_finite_ce(self):
        if not self.beta > 1.0:
            raise ValueError(
                f"cumulative entropy of InverseWeibull diverges for beta <= 1 (got beta={self.beta})"
            )

    def cumulative_entropy(self):
        self._require_finite_ce()
        return self.theta / self.beta * math.gamma((self.beta - 1.0) / self.beta)

    def cumulative_entropy_max2(self):
        self._require_finite_ce()
        return 2.0 ** (1.0 / self.beta) * self.theta / self.beta * math.gamma(
            (self.beta - 1.0) / self.beta
        )


def _check_u(u: np.ndarray) -> None:
    if np.any(u <= 0.0) or np.any(u >= 1.0):
        raise ValueError("quantile argument must lie strictly inside (0, 1)")


# --- spec-string parsing -------------------------------------------------------
#
# Format: "family:param=value,param=value", e.g. "exponential:theta=1",
# "invweibull:theta=1,beta=2".  "lambda" is accepted as an alias for "lam".

MARGINAL_FAMILIES = {
    "exponential": Exponential,
    "logistic": Logistic,
    "rayleigh": Rayleigh,
    "genexp": GeneralizedExponential,
    "uniform": Uniform,
    "invweibull": InverseWeibull,
}

_ALIASES = {"lambda": "lam"}


def parse_marginal(spec: str) -> MarginalFamily:
    name, sep, rest = spec.partition(":")
    name = name.strip().lower()
    cls = MARGINAL_FAMILIES.get(name)
    if cls is None:
        raise SpecFormatError(
            f"unknown marginal family {name!r} at position 0 in {spec!r}; "
            f"expected one of {sorted(MARGINAL_FAMILIES)}"
        )
    kwargs = {}
    if sep and rest.strip():
        offset = len(name) + 1
        for token in rest.split(","):
            key, eq, value = token.partition("=")
            key = key.strip().lower()
            key = _ALIASES.get(key, key)
            if not eq or not key:
                raise SpecFormatError(
                    f"malformed parameter token {token!r} at position {offset} in {spec!r}; "
                    f"expected name=value"
                )
            field_names = {f.name for f in fields(cls)}
            if key not in field_names:
                raise SpecFormatError(
                    f"unknown parameter {key!r} at position {offset} in {spec!r}; "
                    f"{name} takes {sorted(field_names) or 'no parameters'}"
                )
            try:
                kwargs[key] = float(value)
            except ValueError:
                raise SpecFormatError(
                    f"parameter {key!r} has non-numeric value {value.strip()!r} "
                    f"at position {offset} in {spec!r}"
                ) from None
            offset += len(token) + 1
    return cls(**kwargs)


def format_marginal(m: MarginalFamily) -> str:
    """Canonical spec string; parse_marginal(format_marginal(m)) == m."""
    for name, cls in MARGINAL_FAMILIES.items():
        if type(m) is cls:
            params = ",".join(f"{f.name}={getattr(m, f.name):g}" for f in fields(m))
            return f"{name}:{params}" if params else name
    raise ValueError(f"not a registered marginal family: {m!r}")
