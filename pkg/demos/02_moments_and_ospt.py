"""Positive moments, the binomial basis change, and ospt positivity.

The r-th positive moment (sum of m^r over positive statistic values) is an
exact integer linear combination of symmetrized moments; the combination
coefficients come from expressing m^r in the binomial basis.  The crank
moments dominate the rank moments, and their difference (the ospt function)
stays strictly positive.
"""

from overmoments import basis_change, build_table, ospt_values, positive_moment
from overmoments.moments import positive_moment_values

# --- basis change -----------------------------------------------------------

for r in range(1, 7):
    bc = basis_change(r)
    terms = " + ".join(f"{a} B_{l}(m)" for l, a in enumerate(bc.a) if a)
    rhs = f"{r}! B_{r}(m)" + (f" + {terms}" if terms else "")
    print(f"m^{r} = {rhs}")

# --- exact moments, small N from tables, large N from series ----------------

crank_table = build_table("crank", 20)
rank_table = build_table("rank", 20)
print("\ncrank positive moments r=2, n<=12 (table):",
      [positive_moment(crank_table, 2, n) for n in range(13)])
print("same values from the generating series:   ",
      positive_moment_values("crank", 2, 12))

# --- ospt positivity ---------------------------------------------------------

print("\nospt_r(N) for small N:")
for r in (1, 2, 3):
    vals = ospt_values(r, 16)
    print(f"  r={r}:", vals[1:])

big = ospt_values(1, 500)
print("\nospt_1 positive for every N <= 500:", all(v > 0 for v in big[1:]))
print("ospt_1(500) has", len(str(big[500])), "digits")
