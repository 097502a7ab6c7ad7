"""
Union-free systems and the log2(3) construction
===============================================

A union-free system is a collection of family pairs on a common ground set
where each pair's vector sums are all distinct, and sums stay distinct
across pairs as well. Its rate triple (r0, r1, r2) measures pair index,
first-family, and second-family information per coordinate. The explicit
construction below pushes the total toward log2(3), the largest sum rate a
single coordinate can carry.
"""

import math

from adderbound.families import exhaustive_pair_search, max_k_shattered
from adderbound.systems import (
    derive_system,
    is_valid_system,
    log3_construction,
    system_rates,
)

print("log2(3) =", f"{math.log2(3):.6f}")
print("\nn    pairs   r0       r1   r2       total")
for n in (3, 6, 9, 12, 15):
    u = log3_construction(n)
    r = system_rates(u)
    assert is_valid_system(u)
    print(
        f"{n:<2}   {u.m0:5d}   {r.r0:.5f}  {r.r1:.1f}  {r.r2:.5f}  {r.total:.5f}"
    )

# any single union-free pair plus a shattered set also yields a system:
# partition both families by their trace on S and pair up complementary cells
res = exhaustive_pair_search(3, budget_secs=5.0)
print(f"\nbest pair at n = 3: product {res.product} (exact: {res.exact})")
s_mask, size = max_k_shattered(res.f1, 1)
u, r = derive_system(res.f1, res.f2, s_mask, 1)
print(
    f"derived system on {u.n} coordinate(s): {u.m0} pair(s), "
    f"rates ({r.r0:.3f}, {r.r1:.3f}, {r.r2:.3f}), valid: {is_valid_system(u)}"
)
