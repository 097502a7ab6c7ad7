"""
Counting with soft shattering
=============================

The classical Sauer-Perles-Shelah lemma caps a family's size once no
d-element set is shattered. The soft variant used here asks only that no
d-element set is k-shattered (every pattern hit k times) and still gives a
cap, paid for by a tail factor. This script prints the exact rational
bounds and checks them against Hamming balls, where the cap is provably
within a factor (1 + n/d) once d is not tiny.
"""

from adderbound.families import hamming_ball, shattering_profile, soft_sauer_bound

# the worked example: n = 4, nothing 1-shattered beyond single elements
b = soft_sauer_bound(4, 2, 1)
print(f"soft_sauer_bound(4, 2, 1): t* = {b.t_star}, exact = {b.exact} = {b.value}")

# raising k weakens the hypothesis, so the cap must grow with k
print("\nbound growth in k at n = 8, d = 3:")
for k in (1, 2, 4, 8):
    b = soft_sauer_bound(8, 3, k)
    print(f"  k = {k}: t* = {b.t_star}, bound = {float(b.exact):9.2f}")

# Hamming balls: measure the true max k-shattered size, feed d = size + 1
print("\nball of radius r in {0,1}^10 vs the cap (k = 2):")
print("  r   |ball|   max 2-shattered   bound      ratio")
for radius in range(1, 6):
    f = hamming_ball(10, radius)
    _, size = shattering_profile(f, (2,))[2]
    d = size + 1
    b = soft_sauer_bound(10, d, 2)
    print(
        f"  {radius}   {len(f):5d}   {size:15d}   {b.value:9.1f}   {b.value / len(f):.2f}"
    )
