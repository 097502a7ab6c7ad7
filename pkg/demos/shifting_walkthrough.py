"""
Shifting a family monotone
==========================

The shifting operator replaces members F by F - {i} whenever that smaller
set is free, one element at a time, until the family is closed under taking
subsets. Size is preserved, and crucially nothing new becomes shattered:
any set the output k-shatters, the input already k-shattered. This is the
step that lets the counting arguments assume monotonicity for free.
"""

from adderbound.families import Family, is_k_shattered, shift_monotonize


def pretty(mask, n):
    return "{" + ",".join(str(i + 1) for i in range(n) if mask >> i & 1) + "}"


n = 4
f = Family(n, (0b1100, 0b1010, 0b0110, 0b1001, 0b0011))
g = shift_monotonize(f)

print("input family: ", " ".join(pretty(m, n) for m in f.members))
print("shifted:      ", " ".join(pretty(m, n) for m in sorted(g.members)))
print(f"sizes: {len(f)} -> {len(g)} (always equal)")

# compare which sets each family 1- and 2-shatters
print("\nshattered sets (S : input / shifted):")
for s_mask in range(1, 1 << n):
    flags = []
    for fam in (f, g):
        ks = [k for k in (1, 2) if is_k_shattered(fam, s_mask, k)]
        flags.append("k<=" + str(max(ks)) if ks else "-")
    if flags != ["-", "-"]:
        print(f"  {pretty(s_mask, n):10s} {flags[0]:5s} / {flags[1]}")

# the one-way street: shifted shattering implies input shattering
assert all(
    is_k_shattered(f, s, k)
    for s in range(1 << n)
    for k in (1, 2)
    if is_k_shattered(g, s, k)
)
print("\nevery set the shifted family shatters, the input shattered too")
