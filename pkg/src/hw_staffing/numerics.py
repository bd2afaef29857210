"""Foundation numerics: normal distribution, log-gamma, regularized upper
incomplete gamma, adaptive semi-infinite quadrature in log space, and
monotone bisection.

Everything here is a pure function of its arguments and safe to call
concurrently. The quadrature engine is the workhorse behind the real-server
delay probability: integrands arrive as *log* integrands so that peaks of
magnitude e**(+-600) can be handled by max-shifting before exponentiation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import BracketError, DomainError, NumericalError

__all__ = [
    "QuadratureConfig",
    "DEFAULT_QUADRATURE",
    "BracketedRoot",
    "normal_pdf",
    "normal_cdf",
    "log_gamma",
    "upper_gamma_regularized",
    "integrate_semi_infinite",
    "bisect_monotone",
]

_INV_SQRT_2PI = 0.3989422804014327  # 1/sqrt(2*pi)
_INV_SQRT_2 = 0.7071067811865476  # 1/sqrt(2)


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and limits for the adaptive semi-infinite integrator.

    rel_tol / abs_tol bound the accepted error estimate; max_refinements
    caps the number of adaptive subdivision rounds; truncation_log_cutoff is
    how far (in nats) below the running maximum of the log integrand the
    tail may fall before it is discarded. The cutoff must stay >= 30 so the
    discarded mass is below e**-30 of the peak contribution.
    """

    rel_tol: float = 1e-12
    abs_tol: float = 1e-300
    max_refinements: int = 60
    truncation_log_cutoff: float = 40.0

    def __post_init__(self):
        if not (self.rel_tol > 0.0):
            raise DomainError(f"rel_tol must be > 0, got {self.rel_tol}")
        if not (self.abs_tol > 0.0):
            raise DomainError(f"abs_tol must be > 0, got {self.abs_tol}")
        if self.max_refinements < 1:
            raise DomainError(f"max_refinements must be >= 1, got {self.max_refinements}")
        if not (self.truncation_log_cutoff >= 30.0):
            raise DomainError(
                f"truncation_log_cutoff must be >= 30, got {self.truncation_log_cutoff}"
            )


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class BracketedRoot:
    """A root located by bisection: lo <= value <= hi, |hi - lo| <= tol."""

    lo: float
    hi: float
    value: float
    residual: float


def _require_finite(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return x


def normal_pdf(x: float) -> float:
    """Standard normal density exp(-x**2/2)/sqrt(2*pi)."""
    x = _require_finite(x, "x")
    return _INV_SQRT_2PI * math.exp(-0.5 * x * x)


def normal_cdf(x: float) -> float:
    """Standard normal distribution function.

    Evaluated through the complementary error function, Phi(x) =
    erfc(-x/sqrt(2))/2, which keeps the relative error at libm level
    (~1e-16) even deep in the lower tail.
    """
    x = _require_finite(x, "x")
    return 0.5 * math.erfc(-x * _INV_SQRT_2)


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    x = _require_finite(x, "x")
    if x <= 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


_GAMMA_MAX_ITER = 10_000
_GAMMA_EPS = 1e-16


def upper_gamma_regularized(s: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(s, x) = Gamma(s, x)/Gamma(s).

    Uses the lower-gamma power series for x < s + 1 and the continued
    fraction (modified Lentz) otherwise; both are evaluated against the
    scaled prefactor x**s e**-x / Gamma(s) assembled in log space.
    """
    s = _require_finite(s, "s")
    x = _require_finite(x, "x")
    if s <= 0.0:
        raise DomainError(f"upper_gamma_regularized requires s > 0, got s={s}")
    if x < 0.0:
        raise DomainError(f"upper_gamma_regularized requires x >= 0, got x={x}")
    if x == 0.0:
        return 1.0

    log_prefactor = s * math.log(x) - x - math.lgamma(s)

    if x < s + 1.0:
        # P(s,x) = prefactor * sum_k x^k / (s(s+1)...(s+k)); Q = 1 - P.
        term = 1.0 / s
        total = term
        denom = s
        for _ in range(_GAMMA_MAX_ITER):
            denom += 1.0
            term *= x / denom
            total += term
            if abs(term) < abs(total) * _GAMMA_EPS:
                return 1.0 - math.exp(log_prefactor) * total
        raise NumericalError(
            f"lower-gamma series failed to converge for s={s}, x={x}",
            iterations=_GAMMA_MAX_ITER,
        )

    # Q(s,x) = prefactor * 1/(x+1-s- 1*(1-s)/(x+3-s- 2*(2-s)/(x+5-s- ...)))
    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b if b != 0.0 else 1.0 / tiny
    f = d
    for i in range(1, _GAMMA_MAX_ITER + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if d == 0.0:
            d = tiny
        c = b + an / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = d * c
        f *= delta
        if abs(delta - 1.0) < _GAMMA_EPS:
            return math.exp(log_prefactor) * f
    raise NumericalError(
        f"upper-gamma continued fraction failed to converge for s={s}, x={x}",
        iterations=_GAMMA_MAX_ITER,
    )


# 15-point Kronrod extension of 7-point Gauss (nodes on [-1, 1]); the
# embedded pair gives the per-panel error estimate.
_GK_NODES = (
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
)
_GK_WK = (
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
)
_GK_WG = (
    0.0,
    0.129484966168870,
    0.0,
    0.279705391489277,
    0.0,
    0.381830050505119,
    0.0,
    0.417959183673469,
)

_SCAN_LO_EXP = -40  # scan starts at 2**-40
_SCAN_HI_EXP = 10  # initial scan top 2**10
_SCAN_MAX_DOUBLINGS = 500
_MAX_PANELS = 20_000


def _gk_panel(log_f, lo: float, hi: float, shift: float):
    """Gauss and Kronrod sums of exp(log_f - shift) over [lo, hi].

    Returns (gauss, kronrod, panel_log_max). Panel endpoints are never
    evaluated, so log_f may be -inf at 0.
    """
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    gauss = 0.0
    kronrod = 0.0
    panel_max = -math.inf
    for node, wk, wg in zip(_GK_NODES, _GK_WK, _GK_WG):
        if node == 0.0:
            v = log_f(mid)
            if v > panel_max:
                panel_max = v
            y = math.exp(v - shift) if v > -math.inf else 0.0
            kronrod += wk * y
            gauss += wg * y
            continue
        for t in (mid - half * node, mid + half * node):
            v = log_f(t)
            if v > panel_max:
                panel_max = v
            y = math.exp(v - shift) if v > -math.inf else 0.0
            kronrod += wk * y
            gauss += wg * y
    return gauss * half, kronrod * half, panel_max


def _panel_error(gauss: float, kronrod: float) -> float:
    diff = abs(kronrod - gauss)
    if diff == 0.0:
        return 0.0
    return min(diff, (200.0 * diff) ** 1.5)


def _integrate_semi_infinite_core(
    log_integrand: Callable[[float], float],
    config: QuadratureConfig,
) -> tuple[float, float]:
    """Adaptive integral of exp(log_integrand) over [0, inf).

    Returns (value, error_estimate). Strategy: geometric scan to bracket the
    peak and find where the tail drops truncation_log_cutoff nats below the
    running maximum, then adaptive Gauss-Kronrod on the truncated range with
    all exponentials max-shifted by the running maximum M and the result
    rescaled by e**M.
    """
    cutoff = config.truncation_log_cutoff

    # Geometric scan: find the peak region and a decayed tail.
    ts = [0.0]
    vs = [-math.inf]
    t = 2.0 ** _SCAN_LO_EXP
    while t <= 2.0 ** _SCAN_HI_EXP:
        ts.append(t)
        vs.append(log_integrand(t))
        t *= 2.0
    m = max(vs)
    if m == -math.inf:  # integrand vanishes on the whole scan range
        return 0.0, 0.0
    doublings = 0
    while vs[-1] > m - cutoff or vs[-1] == -math.inf:
        if vs[-1] == -math.inf and m > -math.inf:
            break  # tail already identically zero
        t = ts[-1] * 2.0
        ts.append(t)
        vs.append(log_integrand(t))
        m = max(m, vs[-1])
        doublings += 1
        if doublings > _SCAN_MAX_DOUBLINGS:
            raise NumericalError(
                "semi-infinite integrand tail did not decay within the scan range"
            )

    # Truncate: keep everything up to the first post-peak point that has
    # fallen cutoff nats below the maximum.
    i_peak = vs.index(m)
    i_end = len(ts) - 1
    for i in range(i_peak + 1, len(ts)):
        if vs[i] < m - cutoff:
            i_end = i
            break
    breakpoints = ts[: i_end + 1]

    shift = m
    panels = []  # entries: [lo, hi, gauss, kronrod, error]

    def add_panel(lo, hi):
        nonlocal shift
        g, k, pmax = _gk_panel(log_integrand, lo, hi, shift)
        if pmax > shift:
            # A node exceeded the running maximum: rescale everything.
            factor = math.exp(shift - pmax)
            for p in panels:
                p[2] *= factor
                p[3] *= factor
                p[4] *= factor
            g *= factor
            k *= factor
            shift = pmax
        panels.append([lo, hi, g, k, _panel_error(g, k)])

    for lo, hi in zip(breakpoints[:-1], breakpoints[1:]):
        add_panel(lo, hi)

    def tolerance(total):
        tol = config.rel_tol * abs(total)
        if -shift < 700.0:  # abs floor irrelevant (and exp overflows) below this
            tol = max(tol, config.abs_tol * math.exp(-shift))
        return tol

    def rescaled(value):
        if shift > 709.0:  # e**shift exceeds double range
            return math.inf if value > 0.0 else 0.0
        return value * math.exp(shift)

    for _ in range(config.max_refinements):
        total = math.fsum(p[3] for p in panels)
        err = math.fsum(p[4] for p in panels)
        if err <= tolerance(total):
            return rescaled(total), rescaled(err)
        if len(panels) >= _MAX_PANELS:
            break
        # Split every panel whose error exceeds its share of the budget.
        share = tolerance(total) / (2.0 * len(panels))
        offenders = [p for p in panels if p[4] > share]
        for p in offenders:
            panels.remove(p)
            mid = 0.5 * (p[0] + p[1])
            add_panel(p[0], mid)
            add_panel(mid, p[1])

    total = math.fsum(p[3] for p in panels)
    err = math.fsum(p[4] for p in panels)
    if err <= tolerance(total):
        return rescaled(total), rescaled(err)
    raise NumericalError(
        f"quadrature did not reach tolerance after {config.max_refinements} "
        f"refinement rounds ({len(panels)} panels)",
        estimate=rescaled(total),
        error_bound=rescaled(err),
        iterations=config.max_refinements,
    )


def integrate_semi_infinite(
    log_integrand: Callable[[float], float],
    config: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float:
    """Integral of exp(log_integrand(t)) dt over t in [0, inf).

    The integrand must be given in log space (may return -inf where it
    vanishes) with an eventually decaying tail. Raises NumericalError with
    the best estimate attached if the refinement cap is hit first.
    """
    value, _ = _integrate_semi_infinite_core(log_integrand, config)
    return value


def bisect_monotone(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    target: float,
    tol: float,
) -> BracketedRoot:
    """Solve f(x) = target for monotone f with bisection.

    Works for increasing or decreasing f; the endpoint values must bracket
    the target. Stops when the bracket width is <= tol.
    """
    lo = _require_finite(lo, "lo")
    hi = _require_finite(hi, "hi")
    if not (tol > 0.0):
        raise DomainError(f"tol must be > 0, got {tol}")
    if lo > hi:
        raise DomainError(f"need lo <= hi, got lo={lo}, hi={hi}")

    f_lo = f(lo) - target
    f_hi = f(hi) - target
    if f_lo == 0.0:
        return BracketedRoot(lo, lo, lo, 0.0)
    if f_hi == 0.0:
        return BracketedRoot(hi, hi, hi, 0.0)
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise BracketError(
            f"target {target} not bracketed: f({lo})={f_lo + target}, "
            f"f({hi})={f_hi + target}"
        )

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # bracket at floating-point resolution
        f_mid = f(mid) - target
        if f_mid == 0.0:
            return BracketedRoot(lo, hi, mid, 0.0)
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid

    value = 0.5 * (lo + hi)
    return BracketedRoot(lo, hi, value, f(value) - target)
