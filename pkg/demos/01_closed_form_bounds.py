"""How the tail bound degrades as the read budget k grows.

For r indicator variables that can be written as Boolean functions of
independent variables, with no underlying variable feeding more than k of
them, the upper tail obeys

    Pr[Y >= (p + eps) r] <= exp(-KL(p + eps || p) * r / k).

With k = 1 this is the classic Chernoff bound; every unit of k divides the
exponent. The weaker quadratic form exp(-2 eps^2 r/k) is usually what gets
quoted, and it is never smaller.
"""

from readk import BoundQuery, read_k_tail_bound, shearer_and_bound, simplified_tail_bound

r, p, eps = 100, 0.5, 0.25

print(f"upper tail at p+eps = {p + eps} with r = {r}\n")
print(f"{'k':>3} {'KL-form bound':>16} {'quadratic form':>16}")
for k in (1, 2, 4, 8, 16):
    tight = read_k_tail_bound(BoundQuery(r, k, p, eps, "upper"))
    loose = simplified_tail_bound(BoundQuery(r, k, p, eps, "upper"))
    print(f"{k:>3} {tight.bound:>16.6e} {loose.bound:>16.6e}")

print("\nThe all-ones event is the extreme deviation eps = 1 - p; there the")
print("KL-form bound collapses to the AND bound p^(r/k):")
for k in (1, 2, 4):
    tail = read_k_tail_bound(BoundQuery(r, k, p, 1 - p, "upper"))
    conj = shearer_and_bound(r, k, p)
    print(f"  k={k}: tail route {tail.bound:.6e}   AND route {conj.bound:.6e}")

print("\nLog-space first, exponentiation last, so huge exponents stay exact:")
big = read_k_tail_bound(BoundQuery(1_000_000, 1, 0.5, 0.25, "upper"))
print(f"  r = 10^6, k = 1: log bound = {big.log_bound:.6f}, bound = {big.bound}")
