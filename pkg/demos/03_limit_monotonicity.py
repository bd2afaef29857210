"""The square-root staffed delay curve decreases to its limit.

For fixed slack beta, C(a + beta*sqrt(a), a) is strictly decreasing in the
offered load a and approaches hw_limit(beta) from above, so the limit is a
true lower bound and a safe first approximation for large systems.
"""

from hw_staffing import default_load_grid, hw_limit, hw_sweep

beta = 1.0
grid = default_load_grid(0.01, 1e4, 13)
sweep = hw_sweep(beta, grid)

print(f"beta = {beta}, C*(beta) = {hw_limit(beta):.10f}\n")
print(f"{'a':>12s} {'s = a+sqrt(a)':>16s} {'C(s,a)':>14s} {'gap above C*':>14s}")
for row in sweep.rows:
    print(f"{row.a:12.4f} {row.s:16.4f} {row.c_value:14.10f} {row.gap:14.3e}")

print(f"\nstrictly decreasing: {sweep.decreasing}")
print(f"every value above the limit: {sweep.gaps_positive}")

# The same holds for any beta > 0; the verification sweep in the CLI
# (`hw-staffing verify --suite monotonicity`) checks five slacks at once.
for b in (0.1, 0.5, 2.0, 3.0):
    assert hw_sweep(b, default_load_grid(0.01, 1e4, 40)).verified
print("verified for beta in {0.1, 0.5, 2, 3} over 40 log-spaced loads")
