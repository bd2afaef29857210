"""Command-line surface: compute, staff, sweep, verify, simulate.

Exit codes: 0 success, 1 verification failure, 2 domain/config error,
3 numerical error. All numeric output uses 17 significant digits so parsing
the text reproduces the binary value; identical argument vectors produce
byte-identical stdout and files.
"""

from __future__ import annotations

import argparse
import enum
import math
import os
import sys
from dataclasses import dataclass

from . import erlang, halfin_whitt, mmn_oracle, proof_kit
from .errors import DomainError, NumericalError
from .numerics import QuadratureConfig
from .svg import polyline_chart

CONFIG_ENV_VAR = "HW_STAFFING_CONFIG"

_EXIT_OK = 0
_EXIT_VERIFY_FAILED = 1
_EXIT_DOMAIN = 2
_EXIT_NUMERICAL = 3


class OutputFormat(enum.Enum):
    CSV = "csv"
    SVG = "svg"
    BOTH = "both"


@dataclass(frozen=True)
class OutputSpec:
    """Where and how sweep output is written; path "-" means stdout."""

    format: OutputFormat
    path: str
    svg_width: int = 640
    svg_height: int = 480
    log_x: bool = False

    def __post_init__(self):
        if self.svg_width <= 0 or self.svg_height <= 0:
            raise DomainError(
                f"svg dimensions must be positive, got {self.svg_width}x{self.svg_height}"
            )
        if self.path == "-" and self.format is not OutputFormat.CSV:
            raise DomainError("svg output cannot go to stdout; give --out PATH")


def fmt(x: float) -> str:
    """17 significant digits: round-trips any double."""
    return f"{x:.17g}"


# --------------------------------------------------------------------------
# quadrature configuration: defaults < config file < flags
# --------------------------------------------------------------------------

_CONFIG_KEYS = {
    "rel_tol": float,
    "abs_tol": float,
    "max_refinements": int,
    "truncation_log_cutoff": float,
}


def _read_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise DomainError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, text = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise DomainError(f"{path}:{lineno}: unknown config key {key!r}")
        try:
            values[key] = _CONFIG_KEYS[key](text.strip())
        except ValueError as exc:
            raise DomainError(f"{path}:{lineno}: bad value for {key}: {text.strip()!r}") from exc
    return values


def _resolve_quadrature(args) -> QuadratureConfig:
    values = {}
    path = args.config or os.environ.get(CONFIG_ENV_VAR)
    if path:
        values.update(_read_config_file(path))
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    return QuadratureConfig(**values)


def _add_quadrature_flags(parser):
    parser.add_argument("--config", help="key = value file presetting the quadrature config")
    parser.add_argument("--rel-tol", dest="rel_tol", type=float, default=None)
    parser.add_argument("--abs-tol", dest="abs_tol", type=float, default=None)
    parser.add_argument("--max-refinements", dest="max_refinements", type=int, default=None)
    parser.add_argument(
        "--truncation-log-cutoff", dest="truncation_log_cutoff", type=float, default=None
    )


# --------------------------------------------------------------------------
# compute
# --------------------------------------------------------------------------


def _cmd_compute(args) -> int:
    cfg = _resolve_quadrature(args)
    s, a = args.s, args.a

    method = args.method
    if method == "auto":
        method = "recurrence" if float(s).is_integer() else "gamma"
    if method == "recurrence" and not float(s).is_integer():
        raise DomainError(f"the recurrence method needs an integer server count, got s={s}")

    results = []
    if method == "recurrence" or (method == "all" and float(s).is_integer()):
        results.append(erlang.erlang_c_integer(int(s), a))
    if method in ("quadrature", "all"):
        results.append(erlang.erlang_c_real(s, a, cfg))
    if method in ("gamma", "all"):
        results.append(erlang.erlang_c_gamma(s, a))
    for r in results:
        print(f"{r.method.value} {fmt(r.value)} {fmt(r.error_bound)}")
    return _EXIT_OK


# --------------------------------------------------------------------------
# staff
# --------------------------------------------------------------------------


def _cmd_staff(args) -> int:
    cfg = _resolve_quadrature(args)
    if args.mode == "beta":
        beta = halfin_whitt.beta_for_target(args.epsilon)
        print(f"beta = {fmt(beta)}")
        if args.a is not None:
            print(f"n = {fmt(halfin_whitt.staffing(args.a, beta))}")
        return _EXIT_OK
    if args.a is None:
        raise DomainError(f"--a is required for mode {args.mode}")
    if args.mode == "integer":
        print(f"n = {erlang.min_servers(args.a, args.epsilon)}")
    else:
        print(f"s = {fmt(erlang.real_staffing_level(args.a, args.epsilon, cfg))}")
    return _EXIT_OK


# --------------------------------------------------------------------------
# sweep
# --------------------------------------------------------------------------


def _build_grid(lo: float, hi: float, points: int, log_x: bool) -> tuple[float, ...]:
    if points < 1:
        raise DomainError(f"--points must be >= 1, got {points}")
    if points == 1:
        return (lo,)
    if not (hi > lo):
        raise DomainError(f"need --to > --from, got [{lo}, {hi}]")
    if log_x:
        if lo <= 0.0:
            raise DomainError(f"log spacing requires --from > 0, got {lo}")
        ratio = math.log(hi / lo) / (points - 1)
        grid = [lo * math.exp(ratio * i) for i in range(points)]
    else:
        step = (hi - lo) / (points - 1)
        grid = [lo + step * i for i in range(points)]
    grid[-1] = hi
    return tuple(grid)


def _sweep_csv(result: halfin_whitt.SweepResult) -> str:
    def cell(v):
        return "" if v is None else fmt(v)

    lines = []
    if result.regime is halfin_whitt.Regime.LOAD_PARAMETRIZED:
        lines.append("a,s,c,c_star,gap,error")
        for r in result.rows:
            err = r.error or ""
            lines.append(
                f"{fmt(r.a)},{fmt(r.s)},{cell(r.c_value)},{fmt(r.c_star)},{cell(r.gap)},{err}"
            )
    else:
        lines.append("s,a,c,error")
        for r in result.rows:
            err = r.error or ""
            lines.append(f"{fmt(r.s)},{fmt(r.a)},{cell(r.c_value)},{err}")
    return "\n".join(lines) + "\n"


def _sweep_svg(result: halfin_whitt.SweepResult, spec: OutputSpec) -> str:
    ok = [r for r in result.rows if r.c_value is not None]
    if not ok:
        raise DomainError("no successful rows to plot")
    beta_text = f"{result.beta:.6g}"
    if result.regime is halfin_whitt.Regime.LOAD_PARAMETRIZED:
        xs = [r.a for r in ok]
        title = f"C(a + beta*sqrt(a), a), beta = {beta_text}"
        x_label = "offered load a"
    else:
        xs = [r.s for r in ok]
        title = f"C(s, s - beta*sqrt(s)), beta = {beta_text}"
        x_label = "servers s"
    return polyline_chart(
        xs,
        [r.c_value for r in ok],
        title=title,
        x_label=x_label,
        y_label="delay probability C",
        width=spec.svg_width,
        height=spec.svg_height,
        log_x=spec.log_x,
    )


def _default_sweep_range(regime: str, beta: float) -> tuple[float, float, int]:
    if regime == "hw":
        return 1.0, 1e4, 40
    return beta * beta * (1.0 + 1e-9), 500.0, 200


def _cmd_sweep(args) -> int:
    cfg = _resolve_quadrature(args)
    beta = args.beta
    if not (beta > 0.0 and math.isfinite(beta)):
        raise DomainError(f"--beta must be > 0, got {beta}")

    default_lo, default_hi, default_points = _default_sweep_range(args.regime, beta)
    lo = args.lo if args.lo is not None else default_lo
    hi = args.hi if args.hi is not None else default_hi
    points = args.points if args.points is not None else default_points

    if args.regime == "inverse":
        floor = beta * beta * (1.0 + 1e-9)
        if lo < floor:
            print(
                f"warning: --from {fmt(lo)} is at or below beta**2; clamped to {fmt(floor)}",
                file=sys.stderr,
            )
            lo = floor

    spec = OutputSpec(
        format=OutputFormat(args.format),
        path=args.out,
        svg_width=args.svg_width,
        svg_height=args.svg_height,
        log_x=args.log_x,
    )

    grid = _build_grid(lo, hi, points, spec.log_x)
    if args.regime == "hw":
        result = halfin_whitt.hw_sweep(beta, grid, cfg)
    else:
        result = halfin_whitt.inverse_sweep(beta, grid, cfg)

    if not any(r.c_value is not None for r in result.rows):
        raise NumericalError("every sweep row failed")

    if spec.format in (OutputFormat.CSV, OutputFormat.BOTH):
        text = _sweep_csv(result)
        if spec.path == "-":
            sys.stdout.write(text)
        else:
            path = spec.path if spec.format is OutputFormat.CSV else spec.path + ".csv"
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            print(f"wrote {path}")
    if spec.format in (OutputFormat.SVG, OutputFormat.BOTH):
        text = _sweep_svg(result, spec)
        path = spec.path if spec.format is OutputFormat.SVG else spec.path + ".svg"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"wrote {path}")
    return _EXIT_OK


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------

_VERIFY_BETAS = (0.1, 0.5, 1.0, 2.0, 3.0)
_VERIFY_ORDER_LOADS = tuple(0.5 * 2.0 ** k for k in range(12))  # 0.5 .. 1024
_AGREEMENT_N = (1, 2, 5, 10, 20, 50, 100, 500)
_AGREEMENT_RHO = (0.1, 0.3, 0.5, 0.7, 0.9, 0.95)


def _geom_grid(lo: float, hi: float, points: int) -> tuple[float, ...]:
    r = math.log(hi / lo) / (points - 1)
    return tuple(lo * math.exp(r * i) for i in range(points))


def _checks_monotonicity(cfg: QuadratureConfig):
    checks = []
    grid = halfin_whitt.default_load_grid(0.01, 1e4, 40)
    for beta in _VERIFY_BETAS:
        sweep = halfin_whitt.hw_sweep(beta, grid, cfg)
        ok = [r for r in sweep.rows if r.c_value is not None]
        margins = [
            x.c_value - y.c_value - (x.error_bound + y.error_bound)
            for x, y in zip(ok, ok[1:])
        ]
        checks.append(
            (
                f"strict-decrease beta={beta:g}",
                bool(sweep.decreasing),
                f"min decrement margin {fmt(min(margins))}" if margins else "no rows",
            )
        )
        checks.append(
            (
                f"above-limit beta={beta:g}",
                bool(sweep.gaps_positive),
                f"min gap {fmt(min(r.gap for r in ok))}" if ok else "no rows",
            )
        )
    return checks


def _checks_order():
    checks = []
    y_grid = _geom_grid(1.01, 100.0, 50)
    for a_low, a_high in zip(_VERIFY_ORDER_LOADS, _VERIFY_ORDER_LOADS[1:]):
        report = proof_kit.check_stochastic_order(a_low, a_high, y_grid)
        worst = max(
            proof_kit.tail_y(y, a_low) - proof_kit.tail_y(y, a_high) for y in y_grid
        )
        checks.append(
            (
                f"tail-dominance a={a_low:g}->{a_high:g}",
                report.passed,
                f"worst excess {fmt(worst)}",
            )
        )
    return checks


def _log_density_g(t: float, a: float) -> float:
    if t <= 0.0:
        return -math.inf
    return math.log(a) + math.log(t) - a * t + (a - 1.0) * math.log1p(t)


def _log_density_y_shifted(v: float, a: float) -> float:
    # density of Y_a at y = 1 + v, for integration over v in [0, inf)
    if v <= 0.0:
        return -math.inf
    d = proof_kit.density_y(1.0 + v, a)
    return math.log(d) if d > 0.0 else -math.inf


def _checks_identities(cfg: QuadratureConfig):
    from .numerics import integrate_semi_infinite

    checks = []

    worst = 0.0
    for a in (0.25, 1.0, 9.0, 100.0, 2500.0):
        worst = max(worst, abs(integrate_semi_infinite(lambda t: _log_density_g(t, a), cfg) - 1.0))
        worst = max(worst, abs(integrate_semi_infinite(lambda v: _log_density_y_shifted(v, a), cfg) - 1.0))
    checks.append(("density-normalization", worst <= 1e-10, f"worst |integral - 1| {fmt(worst)}"))

    worst = 0.0
    for y in _geom_grid(1.1, 100.0, 20):
        for a in _geom_grid(0.5, 1000.0, 20):  # floor keeps tails above underflow
            t1 = proof_kit.tail_y(y, a)
            t2 = proof_kit.tail_y_via_h(y, a)
            worst = max(worst, abs(t1 - t2) / t1)
    checks.append(("tail-rewrite", worst <= 1e-12, f"worst relative diff {fmt(worst)}"))

    worst = 0.0
    for x in _geom_grid(1.0, 1e3, 40):
        worst = max(worst, abs(proof_kit.h(x) - proof_kit.h_series(x, 30)))
    checks.append(("h-series", worst <= 1e-12, f"worst |closed - series| {fmt(worst)}"))

    worst = 0.0
    for a in (1.0, 10.0, 100.0):
        for beta in (0.5, 1.0, 3.0):
            c = erlang.erlang_c_real(halfin_whitt.staffing(a, beta), a, cfg).value
            worst = max(worst, abs(1.0 / proof_kit.moment_y(a, beta, cfg) - c) / c)
    checks.append(("moment-identity", worst <= 1e-8, f"worst relative diff {fmt(worst)}"))

    worst = 0.0
    for n in _AGREEMENT_N:
        for rho in _AGREEMENT_RHO:
            a = n * rho
            values = [
                erlang.erlang_c_integer(n, a).value,
                erlang.erlang_c_real(float(n), a, cfg).value,
                erlang.erlang_c_gamma(float(n), a).value,
            ]
            for i in range(3):
                for j in range(3):
                    if i != j:
                        worst = max(worst, abs(values[i] - values[j]) / values[j])
    checks.append(("three-way-agreement", worst <= 1e-10, f"worst relative diff {fmt(worst)}"))
    return checks


def _cmd_verify(args) -> int:
    cfg = _resolve_quadrature(args)
    checks = []
    if args.suite in ("all", "monotonicity"):
        checks.extend(_checks_monotonicity(cfg))
    if args.suite in ("all", "order"):
        checks.extend(_checks_order())
    if args.suite in ("all", "identities"):
        checks.extend(_checks_identities(cfg))

    failed = 0
    for name, passed, detail in checks:
        status = "PASS" if passed else "FAIL"
        failed += 0 if passed else 1
        print(f"{status} {name}: {detail}")
    print(f"{len(checks) - failed}/{len(checks)} properties passed")
    return _EXIT_OK if failed == 0 else _EXIT_VERIFY_FAILED


# --------------------------------------------------------------------------
# simulate
# --------------------------------------------------------------------------


def _cmd_simulate(args) -> int:
    cfg = mmn_oracle.SimConfig(
        n=args.n,
        lam=args.lam,
        mu=args.mu,
        measured_arrivals=args.arrivals,
        seed=args.seed,
        warmup_arrivals=args.warmup,
    )
    estimate = mmn_oracle.simulate_mmn(cfg)
    analytic = erlang.erlang_c_integer(cfg.n, cfg.offered_load).value
    if estimate.ci_halfwidth > 0.0:
        standardized = (estimate.p_wait - analytic) / estimate.ci_halfwidth
    else:
        standardized = math.inf if estimate.p_wait != analytic else 0.0
    print(
        f"p_wait = {fmt(estimate.p_wait)} +/- {fmt(estimate.ci_halfwidth)} "
        f"(95% CI, {estimate.batches} batches)"
    )
    print(f"analytic = {fmt(analytic)}")
    print(f"standardized discrepancy = {fmt(standardized)}")
    return _EXIT_OK


# --------------------------------------------------------------------------
# parser and entry point
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hw-staffing",
        description="Erlang C delay probabilities and square-root staffing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="delay probability C(s, a)")
    p.add_argument("--s", type=float, required=True, help="servers (real)")
    p.add_argument("--a", type=float, required=True, help="offered load (erlangs)")
    p.add_argument(
        "--method",
        choices=["auto", "recurrence", "quadrature", "gamma", "all"],
        default="auto",
    )
    _add_quadrature_flags(p)
    p.set_defaults(handler=_cmd_compute)

    p = sub.add_parser("staff", help="invert the delay probability for staffing")
    p.add_argument("--a", type=float, default=None, help="offered load (erlangs)")
    p.add_argument("--epsilon", type=float, required=True, help="target delay probability")
    p.add_argument("--mode", choices=["integer", "real", "beta"], default="integer")
    _add_quadrature_flags(p)
    p.set_defaults(handler=_cmd_staff)

    p = sub.add_parser("sweep", help="sweep a staffing regime, emit CSV/SVG")
    p.add_argument("--regime", choices=["hw", "inverse"], required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--from", dest="lo", type=float, default=None)
    p.add_argument("--to", dest="hi", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--log-x", dest="log_x", action="store_true")
    p.add_argument("--format", choices=["csv", "svg", "both"], default="csv")
    p.add_argument("--out", default="-", help="output path; '-' writes CSV to stdout")
    p.add_argument("--svg-width", type=int, default=640)
    p.add_argument("--svg-height", type=int, default=480)
    _add_quadrature_flags(p)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("verify", help="run the property verification suites")
    p.add_argument(
        "--suite", choices=["all", "monotonicity", "order", "identities"], default="all"
    )
    _add_quadrature_flags(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("simulate", help="discrete-event M/M/n simulation oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--arrivals", type=int, default=100_000, help="measured arrivals")
    p.add_argument("--warmup", type=int, default=None)
    p.set_defaults(handler=_cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_DOMAIN
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return _EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
