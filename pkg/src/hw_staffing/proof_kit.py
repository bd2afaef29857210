"""Executable forms of the auxiliary random variables behind the
monotonicity of square-root-staffed delay probabilities.

The reciprocal 1/C(a + beta*sqrt(a), a) equals the beta-th moment of
Y_a = (1 + X_a)**sqrt(a), where X_a has density
g(t, a) = a t e**(-a t) (1 + t)**(a - 1) on t >= 0. This module exposes:

* density_g / cdf_x       -- X_a's density and distribution function;
* density_y / tail_y      -- Y_a's density and survival function
                             tail_y(y, a) = y**sqrt(a) * e**(-a(y**(1/sqrt(a)) - 1));
* tail_y_via_h / h        -- the rewrite tail_y = exp((log y)**2 * h(sqrt(a)/log y))
                             with h(x) = x + x**2 (1 - e**(1/x));
* h_series                -- the equivalent series -sum x**-n/(n+2)!;
* moment_y                -- E[Y_a**beta] by quadrature;
* check_stochastic_order  -- first-order dominance of Y_a in a over a grid.

Every tail/CDF evaluation goes through one shared log-space survival
kernel, so the algebraic identities between them hold to rounding error by
construction rather than by numerical coincidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError
from .numerics import DEFAULT_QUADRATURE, QuadratureConfig, _integrate_semi_infinite_core

__all__ = [
    "ProofPoint",
    "OrderReport",
    "density_g",
    "cdf_x",
    "density_y",
    "tail_y",
    "tail_y_via_h",
    "h",
    "h_series",
    "moment_y",
    "check_stochastic_order",
]

# Closed form of h loses ~log10(x) digits to cancellation; past this point
# the series is the accurate path. Both agree to ~1e-14 at the switch.
_H_SERIES_SWITCH = 20.0
_H_SERIES_TERMS = 30

# Combined absolute tolerance when asserting tail dominance: strict
# inequality cannot be resolved at float-equality scale.
_ORDER_TOL = 1e-13


def _check_load(a: float) -> float:
    a = float(a)
    if not (a > 0.0 and math.isfinite(a)):
        raise DomainError(f"load parameter must be positive and finite, got a={a}")
    return a


@dataclass(frozen=True)
class ProofPoint:
    """A jointly consistent evaluation point (a, t, y, x).

    y = (1 + t)**sqrt(a) is the change of variables linking X_a and Y_a;
    x = sqrt(a)/log(y) is the argument the tail rewrite hands to h.
    """

    a: float
    t: float
    y: float
    x: float

    def __post_init__(self):
        _check_load(self.a)
        if self.t < 0.0:
            raise DomainError(f"t must be >= 0, got {self.t}")
        if not (self.y > 1.0):
            raise DomainError(f"y must be > 1, got {self.y}")
        if not (self.x > 0.0):
            raise DomainError(f"x must be > 0, got {self.x}")

    @classmethod
    def from_load_and_t(cls, a: float, t: float) -> "ProofPoint":
        a = _check_load(a)
        if not (t > 0.0):
            raise DomainError(f"t must be > 0 to map into y > 1, got t={t}")
        sqrt_a = math.sqrt(a)
        log_y = sqrt_a * math.log1p(t)
        return cls(a=a, t=t, y=math.exp(log_y), x=sqrt_a / log_y)


@dataclass(frozen=True)
class OrderReport:
    """Evidence that Y_{a_high} dominates Y_{a_low} over a tail grid."""

    a_low: float
    a_high: float
    y_grid: tuple[float, ...]
    violations: tuple[tuple[float, float, float], ...]
    passed: bool


def _log_survival_x(x: float, a: float) -> float:
    """log Pr{X_a > x} = a*log1p(x) - a*x; the single shared tail kernel."""
    return a * math.log1p(x) - a * x


def density_g(t: float, a: float) -> float:
    """Density of X_a: a t e**(-a t) (1 + t)**(a - 1), in log space."""
    a = _check_load(a)
    t = float(t)
    if t < 0.0 or not math.isfinite(t):
        raise DomainError(f"t must be finite and >= 0, got {t}")
    if t == 0.0:
        return 0.0
    return math.exp(math.log(a) + math.log(t) - a * t + (a - 1.0) * math.log1p(t))


def cdf_x(x: float, a: float) -> float:
    """Distribution function of X_a: 1 - (1 + x)**a e**(-a x).

    The closed form is the antiderivative identity that makes g a density;
    its derivative reproduces density_g (checked by finite differences in
    the test suite).
    """
    a = _check_load(a)
    x = float(x)
    if x < 0.0 or math.isnan(x):
        raise DomainError(f"x must be >= 0, got {x}")
    if math.isinf(x):
        return 1.0
    return -math.expm1(_log_survival_x(x, a))


def _y_to_x(y: float, a: float) -> float:
    """Inverse change of variables x(y) = y**(1/sqrt(a)) - 1, cancellation-free."""
    return math.expm1(math.log(y) / math.sqrt(a))


def density_y(y: float, a: float) -> float:
    """Density of Y_a: sqrt(a) y**(sqrt(a)-1) (y**(1/sqrt(a)) - 1)
    e**(-a (y**(1/sqrt(a)) - 1)), in log space."""
    a = _check_load(a)
    y = float(y)
    if not (y > 1.0):
        raise DomainError(f"density_y requires y > 1, got {y}")
    if math.isinf(y):
        return 0.0
    x = _y_to_x(y, a)
    sqrt_a = math.sqrt(a)
    return math.exp(
        0.5 * math.log(a) + (sqrt_a - 1.0) * math.log(y) + math.log(x) - a * x
    )


def tail_y(y: float, a: float) -> float:
    """Survival function Pr{Y_a > y} = y**sqrt(a) e**(-a (y**(1/sqrt(a)) - 1)).

    Defined for y >= 1; the boundary y = 1 carries the full mass and
    returns exactly 1.
    """
    a = _check_load(a)
    y = float(y)
    if y < 1.0 or math.isnan(y):
        raise DomainError(f"tail_y requires y >= 1, got {y}")
    if y == 1.0:
        return 1.0
    if math.isinf(y):
        return 0.0
    return math.exp(_log_survival_x(_y_to_x(y, a), a))


def h(x: float) -> float:
    """The monotone core of the tail rewrite: h(x) = x + x**2 (1 - e**(1/x)).

    Strictly increasing on x > 0 and bounded above by -1/2. For x > 20 the
    closed form cancels catastrophically and the series takes over.
    """
    x = float(x)
    if not (x > 0.0 and math.isfinite(x)):
        raise DomainError(f"h requires finite x > 0, got {x}")
    if x > _H_SERIES_SWITCH:
        return h_series(x, _H_SERIES_TERMS)
    return x + x * x * -math.expm1(1.0 / x)


def h_series(x: float, terms: int) -> float:
    """Truncated series -sum_{n=0}^{terms-1} x**-n / (n+2)!.

    For x >= 1 the omitted tail is positive and below the first omitted
    term, so 30 terms give ~1e-33 truncation error.
    """
    x = float(x)
    if not (x > 0.0 and math.isfinite(x)):
        raise DomainError(f"h_series requires finite x > 0, got {x}")
    if terms < 1:
        raise DomainError(f"terms must be >= 1, got {terms}")
    inv_x = 1.0 / x
    power = 1.0
    factorial = 2.0  # (n+2)! starting at n = 0
    total = 0.0
    for n in range(terms):
        total += power / factorial
        power *= inv_x
        factorial *= n + 3.0
    return -total


def tail_y_via_h(y: float, a: float) -> float:
    """Survival of Y_a through the rewrite exp((log y)**2 h(sqrt(a)/log y)).

    Requires y > 1 strictly (the rewrite divides by log y).
    """
    a = _check_load(a)
    y = float(y)
    if not (y > 1.0):
        raise DomainError(f"tail_y_via_h requires y > 1, got {y}")
    log_y = math.log(y)
    return math.exp(log_y * log_y * h(math.sqrt(a) / log_y))


def moment_y(
    a: float, beta: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> float:
    """E[Y_a**beta] = integral of (1 + t)**(beta*sqrt(a)) g(t, a) dt.

    Its reciprocal is the delay probability at s = a + beta*sqrt(a); the
    integral is evaluated directly in t (no substitution) so it provides a
    route independent of the delay-probability quadrature.
    """
    a = _check_load(a)
    beta = float(beta)
    if not (beta > 0.0 and math.isfinite(beta)):
        raise DomainError(f"moment_y requires beta > 0, got {beta}")
    log_a = math.log(a)
    exponent = a - 1.0 + beta * math.sqrt(a)

    def log_integrand(t: float) -> float:
        if t <= 0.0:
            return -math.inf
        return log_a + math.log(t) - a * t + exponent * math.log1p(t)

    value, _ = _integrate_semi_infinite_core(log_integrand, cfg)
    return value


def check_stochastic_order(
    a_low: float, a_high: float, y_grid: Sequence[float]
) -> OrderReport:
    """First-order dominance check: tail_y(y, a_low) <= tail_y(y, a_high).

    Records every grid point where the low-load tail exceeds the high-load
    tail by more than the combined tolerance. Swapped loads therefore
    report violations everywhere; equal loads pass trivially.
    """
    a_low = _check_load(a_low)
    a_high = _check_load(a_high)
    grid = tuple(float(y) for y in y_grid)
    if any(y <= 1.0 for y in grid):
        raise DomainError("all grid points must be > 1")
    for u, v in zip(grid, grid[1:]):
        if not (v > u):
            raise DomainError(f"y_grid must be strictly increasing, got {u} before {v}")

    violations = []
    for y in grid:
        lo = tail_y(y, a_low)
        hi = tail_y(y, a_high)
        if lo > hi + _ORDER_TOL:
            violations.append((y, lo, hi))
    return OrderReport(a_low, a_high, grid, tuple(violations), not violations)
