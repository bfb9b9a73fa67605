"""Morgenstern (FGM) bivariate model and concomitants of generalized order statistics.

The joint pdf is f_X f_Y [1 + alpha (2 F_X - 1)(2 F_Y - 1)] with |alpha| <= 1.
Concomitant distributions of the r-th generalized order statistic depend on
the model only through the coefficient

    C*(r, n, m, k) = 2 prod_{j<=r} gamma_j / (gamma_j + 1) - 1,
    gamma_j = k + (n - j)(m + 1),

which reduces to (n - 2r + 1)/(n + 1) for ordinary order statistics
(m=0, k=1) and to 2^(1-r) - 1 for upper records (m=-1, k=1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .marginals import MarginalFamily, SpecFormatError, format_marginal
from .numerics import RngStream

__all__ = [
    "GosParams",
    "FgmModel",
    "order_statistics",
    "record_value",
    "c_star",
    "concomitant_pdf",
    "concomitant_cdf",
    "sample_joint",
    "sample_concomitant",
    "extremes_coefficient",
    "extremes_pdf",
    "parse_gos",
    "format_gos",
]


@dataclass(frozen=True)
class GosParams:
    """Index (r) and model parameters (n, m, k) of a generalized order statistic."""

    r: int
    n: int
    m: float = 0.0
    k: float = 1.0

    def __post_init__(self):
        if not (isinstance(self.r, int) and isinstance(self.n, int)):
            raise ValueError("r and n must be integers")
        if not 1 <= self.r <= self.n:
            raise ValueError(f"need 1 <= r <= n, got r={self.r}, n={self.n}")
        if not self.k > 0.0:
            raise ValueError(f"k must be > 0, got {self.k}")
        bad = [j for j in range(1, self.n + 1) if self.gamma(j) <= 0.0]
        if bad:
            raise ValueError(
                f"gamma_j = k + (n-j)(m+1) must be positive for all j; "
                f"violated at j={bad[0]} for {self!r}"
            )

    def gamma(self, j: int) -> float:
        return self.k + (self.n - j) * (self.m + 1.0)

    def is_order_statistics(self) -> bool:
        return self.m == 0.0 and self.k == 1.0

    def is_record(self) -> bool:
        return self.m == -1.0 and self.k == 1.0


def order_statistics(r: int, n: int) -> GosParams:
    """The r-th of n ordinary order statistics."""
    return GosParams(r=r, n=n, m=0.0, k=1.0)


def record_value(r: int) -> GosParams:
    """The r-th upper record value (n is immaterial; gamma_j = 1 for all j)."""
    return GosParams(r=r, n=r, m=-1.0, k=1.0)


def c_star(p: GosParams) -> float:
    """Concomitant coefficient C*(r, n, m, k); always inside [-1, 1]."""
    prod = 1.0
    for j in range(1, p.r + 1):
        g = p.gamma(j)
        prod *= g / (g + 1.0)
    return 2.0 * prod - 1.0


@dataclass(frozen=True)
class FgmModel:
    """Two marginals tied by the FGM dependence parameter alpha, |alpha| <= 1."""

    marginal_x: MarginalFamily
    marginal_y: MarginalFamily
    alpha: float

    def __post_init__(self):
        if not abs(self.alpha) <= 1.0:
            raise ValueError(f"|alpha| must be <= 1, got {self.alpha}")

    def joint_pdf(self, x, y):
        fx = self.marginal_x.pdf(x)
        fy = self.marginal_y.pdf(y)
        Fx = self.marginal_x.cdf(x)
        Fy = self.marginal_y.cdf(y)
        return fx * fy * (1.0 + self.alpha * (2.0 * Fx - 1.0) * (2.0 * Fy - 1.0))

    def joint_cdf(self, x, y):
        Fx = self.marginal_x.cdf(x)
        Fy = self.marginal_y.cdf(y)
        return Fx * Fy * (1.0 + self.alpha * (1.0 - Fx) * (1.0 - Fy))


def concomitant_pdf(model: FgmModel, p: GosParams, y):
    """pdf of the concomitant of the r-th GOS: f_Y [1 + alpha C* (1 - 2 F_Y)]."""
    c = model.alpha * c_star(p)
    return model.marginal_y.pdf(y) * (1.0 + c * (1.0 - 2.0 * model.marginal_y.cdf(y)))


def concomitant_cdf(model: FgmModel, p: GosParams, y):
    """cdf of the concomitant: F_Y [1 + alpha C* (1 - F_Y)]."""
    c = model.alpha * c_star(p)
    F = model.marginal_y.cdf(y)
    return F * (1.0 + c * (1.0 - F))


def _invert_tilted_uniform(a, u):
    """Solve a v^2 - (1+a) v + u = 0 for the root in [0, 1].

    This inverts v -> v (1 + a (1 - v)), the cdf tilt shared by the FGM
    conditional law and the concomitant cdf.  The minus-branch root
    [(1+a) - sqrt((1+a)^2 - 4au)] / (2a) is the one inside [0, 1] for every
    |a| <= 1, u in (0, 1); it is evaluated in the conjugate form
    2u / [(1+a) + sqrt(...)], which is the same root without the subtractive
    cancellation that wrecks the textbook form for small |a| (and it
    degenerates smoothly to v = u at a = 0).
    """
    a = np.asarray(a, dtype=float)
    u = np.asarray(u, dtype=float)
    disc = (1.0 + a) ** 2 - 4.0 * a * u
    return 2.0 * u / ((1.0 + a) + np.sqrt(np.maximum(disc, 0.0)))


def sample_joint(model: FgmModel, stream: RngStream, size: int | None = None):
    """Draw (x, y) from the joint law by conditional inversion.

    X is drawn marginally; given F_X(x), the conditional cdf of V = F_Y(Y) is
    v [1 + a (1 - v)] with a = alpha (1 - 2 F_X(x)), inverted in closed form.
    Returns a pair of floats for ``size=None``, else a pair of arrays.
    """
    n = 1 if size is None else int(size)
    u1 = stream.uniforms(n)
    u2 = stream.uniforms(n)
    a = model.alpha * (1.0 - 2.0 * u1)
    v = _invert_tilted_uniform(a, u2)
    x = model.marginal_x.quantile(u1)
    y = model.marginal_y.quantile(v)
    if size is None:
        return float(x[0]), float(y[0])
    return x, y


def sample_concomitant(
    model: FgmModel, p: GosParams, stream: RngStream, size: int | None = None
):
    """Draw from the concomitant law of the r-th GOS by direct cdf inversion.

    Supported for ordinary order statistics (m=0, k=1) and upper records
    (m=-1, k=1); other (m, k) raise.  The analytic pdf/cdf cover general
    parameters for measure computation without sampling.
    """
    if not (p.is_order_statistics() or p.is_record()):
        raise ValueError(
            f"sampling supports order statistics (m=0, k=1) and records (m=-1, k=1); got {p!r}"
        )
    n = 1 if size is None else int(size)
    u = stream.uniforms(n)
    v = _invert_tilted_uniform(model.alpha * c_star(p), u)
    y = model.marginal_y.quantile(v)
    if size is None:
        return float(y[0])
    return y


def extremes_coefficient(alphas, which: str) -> float:
    """Tilt coefficient for concomitants of extremes under per-pair alphas.

    ``which="min"`` gives +(n-1)/((n+1) n) sum(alpha_j); ``which="max"``
    negates it.  With all alpha_j equal this matches alpha * C* at r = 1
    (resp. r = n) for ordinary order statistics.
    """
    alphas = np.asarray(alphas, dtype=float)
    if alphas.ndim != 1 or alphas.size == 0:
        raise ValueError("alphas must be a non-empty 1-d sequence")
    if np.any(np.abs(alphas) > 1.0):
        raise ValueError("every |alpha_j| must be <= 1")
    if which not in ("min", "max"):
        raise ValueError(f"which must be 'min' or 'max', got {which!r}")
    n = alphas.size
    coeff = (n - 1) / ((n + 1) * n) * float(alphas.sum())
    return coeff if which == "min" else -coeff


def extremes_pdf(marginal_y: MarginalFamily, alphas, which: str, y):
    """pdf of the concomitant of the sample minimum or maximum, heterogeneous alphas."""
    s = extremes_coefficient(alphas, which)
    return marginal_y.pdf(y) * (1.0 + s * (1.0 - 2.0 * marginal_y.cdf(y)))


# --- spec-string parsing -------------------------------------------------------
#
# "r=<int>,n=<int>,m=<real>,k=<real>" plus the shorthands "os:r=<int>,n=<int>"
# (m=0, k=1) and "record:r=<int>" (m=-1, k=1).


def parse_gos(spec: str) -> GosParams:
    text = spec.strip().lower()
    head, sep, rest = text.partition(":")
    if sep and head == "os":
        params = _parse_int_fields(rest, spec, {"r", "n"})
        return order_statistics(params["r"], params["n"])
    if sep and head == "record":
        params = _parse_int_fields(rest, spec, {"r"})
        return record_value(params["r"])
    if sep:
        raise SpecFormatError(
            f"unknown GOS shorthand {head!r} at position 0 in {spec!r}; "
            f"expected 'os:', 'record:' or bare r=..,n=..,m=..,k=.."
        )
    out: dict[str, float] = {}
    offset = 0
    for token in text.split(","):
        key, eq, value = token.partition("=")
        key = key.strip()
        if not eq or key not in ("r", "n", "m", "k"):
            raise SpecFormatError(
                f"malformed GOS token {token!r} at position {offset} in {spec!r}; "
                f"expected r=..,n=..,m=..,k=.."
            )
        try:
            out[key] = float(value)
        except ValueError:
            raise SpecFormatError(
                f"GOS field {key!r} has non-numeric value {value.strip()!r} "
                f"at position {offset} in {spec!r}"
            ) from None
        offset += len(token) + 1
    missing = {"r", "n"} - out.keys()
    if missing:
        raise SpecFormatError(f"GOS spec {spec!r} is missing fields {sorted(missing)}")
    return GosParams(
        r=_as_index(out["r"], "r", spec),
        n=_as_index(out["n"], "n", spec),
        m=out.get("m", 0.0),
        k=out.get("k", 1.0),
    )


def _parse_int_fields(rest: str, spec: str, required: set[str]) -> dict[str, int]:
    out: dict[str, int] = {}
    for token in rest.split(","):
        key, eq, value = token.partition("=")
        key = key.strip()
        if not eq or key not in required:
            raise SpecFormatError(
                f"malformed GOS token {token!r} in {spec!r}; expected fields {sorted(required)}"
            )
        out[key] = _as_index(value, key, spec)
    missing = required - out.keys()
    if missing:
        raise SpecFormatError(f"GOS spec {spec!r} is missing fields {sorted(missing)}")
    return out


def _as_index(value, key: str, spec: str) -> int:
    try:
        fval = float(value)
    except (TypeError, ValueError):
        raise SpecFormatError(
            f"GOS field {key!r} has non-numeric value {value!r} in {spec!r}"
        ) from None
    if fval != int(fval):
        raise SpecFormatError(f"GOS field {key!r} must be an integer, got {value} in {spec!r}")
    return int(fval)


def format_gos(p: GosParams) -> str:
    """Canonical spec string; shorthands are preferred where they apply."""
    if p.is_order_statistics():
        return f"os:r={p.r},n={p.n}"
    if p.is_record():
        return f"record:r={p.r}"
    return f"r={p.r},n={p.n},m={p.m:g},k={p.k:g}"


def describe_model(model: FgmModel) -> str:
    return f"{format_marginal(model.marginal_x)} x {format_marginal(model.marginal_y)}, alpha={model.alpha:g}"
