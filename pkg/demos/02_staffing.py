"""Staffing a service system against a delay-probability target.

Three inversions: the smallest integer server count meeting a target, the
continuous staffing level, and the square-root slack beta whose limiting
delay probability equals the target.
"""

from hw_staffing import (
    beta_for_target,
    erlang_c_integer,
    hw_limit,
    min_servers,
    real_staffing_level,
    staffing,
)

load = 64.0
target = 0.2

n = min_servers(load, target)
print(f"target Pr(wait) <= {target}, offered load {load}:")
print(f"  integer staffing : n = {n}  (C = {erlang_c_integer(n, load).value:.4f})")
print(f"  continuous level : s = {real_staffing_level(load, target):.6f}")

beta = beta_for_target(target)
print(f"  asymptotic slack : beta = {beta:.6f}")
print(f"  square-root rule : a + beta*sqrt(a) = {staffing(load, beta):.3f}")

# The square-root rule is conservative for finite systems: the true curve
# sits above its limit, so staffing by the limit slightly overshoots the
# target delay probability downward.
print("\nsquare-root staffing at beta for several loads (target 0.2):")
for a in (16.0, 64.0, 256.0, 1024.0):
    s = staffing(a, beta)
    n = int(s) + 1
    c = erlang_c_integer(n, a).value
    print(f"  a = {a:6.0f}: s = {s:9.3f}, ceil -> n = {n:5d}, C = {c:.4f}")

print(f"\nlimit value hw_limit(beta) = {hw_limit(beta):.6f} (= target by construction)")
