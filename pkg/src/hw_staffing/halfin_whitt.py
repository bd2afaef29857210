"""Square-root staffing and its heavy-traffic limit.

The staffing rule s = a + beta*sqrt(a) keeps the delay probability
C(a + beta*sqrt(a), a) nondegenerate as the offered load a grows; its limit
is hw_limit(beta) = 1/(1 + beta*Phi(beta)/phi(beta)). The sweep generators
here produce the evidence tables behind two facts:

* the load-parametrized curve C(a + beta*sqrt(a), a) decreases strictly in
  a and stays above the limit for every beta > 0 (verified per sweep);
* the server-parametrized curve C(s, s - beta*sqrt(s)) is NOT claimed to be
  monotone -- inverse_sweep only emits the data.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .erlang import erlang_c_real
from .errors import DomainError, NumericalError
from .numerics import DEFAULT_QUADRATURE, QuadratureConfig, bisect_monotone, normal_cdf, normal_pdf

__all__ = [
    "Regime",
    "HwPoint",
    "InversePoint",
    "SweepResult",
    "hw_limit",
    "staffing",
    "inverse_load",
    "beta_for_target",
    "hw_sweep",
    "inverse_sweep",
    "default_load_grid",
]


class Regime(enum.Enum):
    LOAD_PARAMETRIZED = "hw"
    SERVER_PARAMETRIZED = "inverse"


@dataclass(frozen=True)
class HwPoint:
    """One row of a load-parametrized sweep: s = a + beta*sqrt(a)."""

    beta: float
    a: float
    s: float
    c_value: float | None
    c_star: float
    error_bound: float = 0.0
    error: str | None = None

    @property
    def gap(self) -> float | None:
        if self.c_value is None:
            return None
        return self.c_value - self.c_star


@dataclass(frozen=True)
class InversePoint:
    """One row of a server-parametrized sweep: a = s - beta*sqrt(s)."""

    s: float
    a: float
    c_value: float | None
    error_bound: float = 0.0
    error: str | None = None


@dataclass(frozen=True)
class SweepResult:
    """Ordered sweep rows plus the verification flags (hw regime only).

    decreasing/gaps_positive are None for the server-parametrized regime
    (no monotonicity claim is made there) and None when any row failed,
    since grid-wide claims are then unverifiable.
    """

    regime: Regime
    beta: float
    rows: tuple
    decreasing: bool | None = None
    gaps_positive: bool | None = None

    @property
    def verified(self) -> bool | None:
        if self.decreasing is None or self.gaps_positive is None:
            return None
        return self.decreasing and self.gaps_positive


def hw_limit(beta: float) -> float:
    """Limiting delay probability (1 + beta*Phi(beta)/phi(beta))**-1.

    beta = 0 is accepted as the boundary case and returns 1; negative beta
    is rejected.
    """
    beta = float(beta)
    if not math.isfinite(beta):
        raise DomainError(f"beta must be finite, got {beta}")
    if beta < 0.0:
        raise DomainError(f"hw_limit requires beta >= 0, got {beta}")
    if beta == 0.0:
        return 1.0
    pdf = normal_pdf(beta)
    if pdf == 0.0:  # beta beyond ~38: the limit underflows to zero
        return 0.0
    return 1.0 / (1.0 + beta * normal_cdf(beta) / pdf)


def staffing(a: float, beta: float) -> float:
    """Square-root staffing level s = a + beta*sqrt(a); requires beta > 0
    so the result stays in the validity region a < s."""
    if not (a > 0.0 and math.isfinite(a)):
        raise DomainError(f"offered load must be positive and finite, got a={a}")
    if not (beta > 0.0 and math.isfinite(beta)):
        raise DomainError(
            f"staffing requires beta > 0 to keep s > a (validity of the "
            f"continuous delay formula), got beta={beta}"
        )
    return a + beta * math.sqrt(a)


def inverse_load(n: float, beta: float) -> float:
    """Offered load a = n - beta*sqrt(n); valid only for n > beta**2."""
    if not (beta > 0.0 and math.isfinite(beta)):
        raise DomainError(f"inverse_load requires beta > 0, got beta={beta}")
    if not (n > beta * beta):
        raise DomainError(
            f"inverse_load requires n > beta**2 = {beta * beta} so the load "
            f"stays positive, got n={n}"
        )
    return n - beta * math.sqrt(n)


def beta_for_target(epsilon: float) -> float:
    """Slack beta with hw_limit(beta) = epsilon, by monotone bisection."""
    if not (0.0 < epsilon < 1.0):
        raise DomainError(f"target must lie in (0, 1), got epsilon={epsilon}")
    hi = 1.0
    while hw_limit(hi) > epsilon:
        hi *= 2.0
    root = bisect_monotone(hw_limit, 0.0, hi, epsilon, 1e-12)
    return root.value


def default_load_grid(lo: float = 0.01, hi: float = 1e4, points: int = 40) -> tuple[float, ...]:
    """Log-spaced offered-load grid; convergence spans orders of magnitude."""
    if points == 1:
        return (lo,)
    r = math.log(hi / lo) / (points - 1)
    return tuple(lo * math.exp(r * i) for i in range(points))


def _check_grid(grid: Sequence[float], name: str):
    if len(grid) == 0:
        raise DomainError(f"{name} must not be empty")
    for x, y in zip(grid, grid[1:]):
        if not (y > x):
            raise DomainError(f"{name} must be strictly increasing, got {x} before {y}")


def hw_sweep(
    beta: float,
    a_grid: Sequence[float],
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> SweepResult:
    """Evaluate C(a + beta*sqrt(a), a) across a strictly increasing load grid.

    Per-point numerical failures are recorded in-row and do not abort the
    sweep. The result's flags report whether the successful values were
    strictly decreasing (successive decrements must exceed the summed error
    bounds, to separate real monotonicity from quadrature noise) and whether
    every gap above the limit was positive.
    """
    if not (beta > 0.0 and math.isfinite(beta)):
        raise DomainError(f"hw_sweep requires beta > 0, got beta={beta}")
    _check_grid(a_grid, "a_grid")
    if any(a <= 0.0 for a in a_grid):
        raise DomainError("all loads in a_grid must be positive")

    c_star = hw_limit(beta)
    rows = []
    for a in a_grid:
        s = staffing(a, beta)
        try:
            c = erlang_c_real(s, a, cfg)
            rows.append(HwPoint(beta, a, s, c.value, c_star, c.error_bound))
        except NumericalError as exc:
            rows.append(HwPoint(beta, a, s, None, c_star, 0.0, str(exc)))

    if any(r.c_value is None for r in rows):
        # failed rows leave the grid-wide claims unverifiable
        return SweepResult(Regime.LOAD_PARAMETRIZED, beta, tuple(rows), None, None)
    decreasing = all(
        x.c_value - y.c_value > x.error_bound + y.error_bound
        for x, y in zip(rows, rows[1:])
    )
    gaps_positive = all(r.gap > 0.0 for r in rows)
    return SweepResult(Regime.LOAD_PARAMETRIZED, beta, tuple(rows), decreasing, gaps_positive)


def inverse_sweep(
    beta: float,
    s_grid: Sequence[float],
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> SweepResult:
    """Evaluate C(s, s - beta*sqrt(s)) across a strictly increasing server grid.

    Every s must exceed beta**2. No monotonicity flag is computed: the
    curve's behaviour is an open question and the rows feed the figure
    emitter as-is.
    """
    if not (beta > 0.0 and math.isfinite(beta)):
        raise DomainError(f"inverse_sweep requires beta > 0, got beta={beta}")
    _check_grid(s_grid, "s_grid")

    rows = []
    for s in s_grid:
        a = inverse_load(s, beta)  # raises DomainError if s <= beta**2
        try:
            c = erlang_c_real(s, a, cfg)
            rows.append(InversePoint(s, a, c.value, c.error_bound))
        except NumericalError as exc:
            rows.append(InversePoint(s, a, None, 0.0, str(exc)))
    return SweepResult(Regime.SERVER_PARAMETRIZED, beta, tuple(rows), None, None)
