"""Delay probabilities, computed three independent ways.

The waiting probability C(s, a) of an M/M/s queue with offered load a can
be evaluated by the classical recurrence (integer s), by adaptive
quadrature of the continuous-server integral, or by an incomplete-gamma
closed form. They should never disagree beyond ~1e-12.
"""

from hw_staffing import erlang_c_gamma, erlang_c_integer, erlang_c_real

print("C(s, a) for 110 servers at offered load 100:")
for result in (
    erlang_c_integer(110, 100.0),
    erlang_c_real(110.0, 100.0),
    erlang_c_gamma(110.0, 100.0),
):
    print(f"  {result.method.value:12s} {result.value:.15f}  (error bound {result.error_bound:.1e})")

# The continuous extension accepts fractional server counts, which is what
# square-root staffing produces before rounding.
print("\nFractional servers between 5 and 6, load 4:")
for s in (5.0, 5.25, 5.5, 5.75, 6.0):
    print(f"  C({s:4.2f}, 4) = {erlang_c_real(s, 4.0).value:.6f}")

# Near the stability boundary the delay probability approaches 1.
print("\nApproaching the validity boundary s -> a:")
for s in (4.5, 4.1, 4.01, 4.001):
    print(f"  C({s:5.3f}, 4) = {erlang_c_real(s, 4.0).value:.6f}")
