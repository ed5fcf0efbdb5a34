"""Seeded Monte Carlo against the exact oracle.

Estimates are reproducible from (family, query, samples, seed) alone: the
generator is PCG64 and the stream is consumed one uniform per variable, in
variable index order, per sample. Intervals are distribution-free 99%
Hoeffding intervals, so they shrink like 1/sqrt(n) regardless of the
family.
"""

from readk import TailQuery, estimate_tail, gen_random_family, sum_pmf, tail_prob

spec = gen_random_family(m=10, r=8, k=3, max_arity=3, seed=1234)
query = TailQuery(5, "ge")
exact = tail_prob(sum_pmf(spec), query)
print(f"exact tail probability: {exact:.8f}\n")

print(f"{'samples':>9} {'estimate':>12} {'99% interval':>28} {'covers exact?':>14}")
for n in (100, 1_000, 10_000, 100_000, 1_000_000):
    est = estimate_tail(spec, query, samples=n, seed=7)
    covers = est.ci_low <= exact <= est.ci_high
    print(f"{n:>9} {est.estimate:>12.8f} [{est.ci_low:.8f}, {est.ci_high:.8f}] {str(covers):>14}")

again = estimate_tail(spec, query, samples=10_000, seed=7)
print(f"\nsame seed, same answer, every time: {again.estimate:.8f}")
