"""Model-level oracles: birth-death chain and discrete-event simulation.

Both estimate the same quantity as the Erlang C formula without using it:
the chain by solving the stationary distribution, the simulation by
counting arrivals that find every server busy (Poisson arrivals see time
averages). Fixed seeds make simulation estimates bit-reproducible.
"""

from hw_staffing import SimConfig, birth_death_wait_prob, erlang_c_integer, simulate_mmn

n, lam, mu = 5, 4.0, 1.0
a = lam / mu

analytic = erlang_c_integer(n, a).value
chain = birth_death_wait_prob(n, a)
print(f"analytic C({n}, {a})      = {analytic:.12f}")
print(f"birth-death stationary = {chain:.12f}  (diff {abs(chain - analytic):.2e})")

print("\nsimulation estimates (200k measured arrivals each):")
for seed in (1, 2, 3):
    est = simulate_mmn(SimConfig(n=n, lam=lam, mu=mu, measured_arrivals=200_000, seed=seed))
    deviation = (est.p_wait - analytic) / est.ci_halfwidth
    print(
        f"  seed {seed}: p_wait = {est.p_wait:.5f} +/- {est.ci_halfwidth:.5f} "
        f"({est.batches} batches, {deviation:+.2f} half-widths from analytic)"
    )

# Identical seeds reproduce identical estimates, bit for bit.
one = simulate_mmn(SimConfig(n=n, lam=lam, mu=mu, measured_arrivals=50_000, seed=7))
two = simulate_mmn(SimConfig(n=n, lam=lam, mu=mu, measured_arrivals=50_000, seed=7))
print(f"\nsame seed, same estimate: {one == two}")
