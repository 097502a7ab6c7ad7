"""Indexed collections of union-free family pairs with disjoint sum supports.

A system is a list of pairs (f1_i, f2_i) of families over a common ground
set, all f1_i of one cardinality m1 and all f2_i of another m2. It is valid
when every pair is multiset-union-free and the pairwise vector-sum supports
never overlap across pairs, so the m0*m1*m2 ternary sum vectors are all
distinct. Systems are the finite-n object behind the sum-rate bound: the
rates (log2 m0, log2 m1, log2 m2)/n of any valid system land inside the
region that r_sigma constrains.

Two constructions are provided: an explicit family whose sum rate approaches
log2(3), and the reduction that turns one union-free pair plus a k-shattered
set into a system on the complementary coordinates.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .families import (
    Family,
    _spread,
    family_from_text,
    family_to_text,
    is_k_shattered,
    is_multiset_union_free,
)

__all__ = [
    "UnionFreeSystem",
    "SystemRates",
    "DerivationError",
    "validate_system",
    "is_valid_system",
    "system_rates",
    "log3_construction",
    "derive_system",
    "system_to_json",
    "system_from_json",
]


@dataclass(frozen=True)
class UnionFreeSystem:
    """Pairs of families over [n]; every f1 has m1 members, every f2 has m2."""

    n: int
    pairs: Tuple[Tuple[Family, Family], ...]

    def __post_init__(self) -> None:
        if not self.pairs:
            raise ValueError("a system needs at least one pair")
        m1 = len(self.pairs[0][0])
        m2 = len(self.pairs[0][1])
        for i, (f1, f2) in enumerate(self.pairs):
            if f1.n != self.n or f2.n != self.n:
                raise ValueError(f"pair {i} lives on a different ground set")
            if len(f1) != m1:
                raise ValueError(f"pair {i}: first family has {len(f1)} members, expected {m1}")
            if len(f2) != m2:
                raise ValueError(f"pair {i}: second family has {len(f2)} members, expected {m2}")

    @property
    def m0(self) -> int:
        return len(self.pairs)

    @property
    def m1(self) -> int:
        return len(self.pairs[0][0])

    @property
    def m2(self) -> int:
        return len(self.pairs[0][1])


@dataclass(frozen=True)
class SystemRates:
    """Rates in bits per ground-set element: r_l = log2(M_l) / n."""

    r0: float
    r1: float
    r2: float

    @property
    def total(self) -> float:
        return self.r0 + self.r1 + self.r2

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.r0, self.r1, self.r2)


class DerivationError(ValueError):
    """The pair/shattered-set reduction cannot produce a system."""


def validate_system(u: UnionFreeSystem) -> Optional[str]:
    """None if the system is valid, else a message naming the first failure."""
    seen: Dict[int, int] = {}
    for i, (f1, f2) in enumerate(u.pairs):
        if not is_multiset_union_free(f1, f2):
            return f"pair {i} is not multiset-union-free"
        for a in f1.members:
            sa = _spread(a)
            for c in f2.members:
                key = sa + _spread(c)
                if key in seen:
                    return f"pairs {seen[key]} and {i} share a sum vector"
                seen[key] = i
    return None


def is_valid_system(u: UnionFreeSystem) -> bool:
    return validate_system(u) is None


def system_rates(u: UnionFreeSystem) -> SystemRates:
    n = u.n
    return SystemRates(
        math.log2(u.m0) / n,
        math.log2(u.m1) / n,
        math.log2(u.m2) / n,
    )


def _submasks(mask: int) -> List[int]:
    out = []
    sub = mask
    while True:
        out.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    out.reverse()
    return out


def log3_construction(n: int) -> UnionFreeSystem:
    """A valid system whose sum rate tends to log2(3) as n grows.

    Index the pairs by the subsets F0 of [n] with |F0| = 2n/3; pair i is
    ({F0_i}, all subsets of F0_i). Sums of pair i take value >= 1 exactly on
    F0_i, which keeps the supports disjoint across pairs. M0 = C(n, 2n/3),
    M1 = 1, M2 = 2^{2n/3}.
    """
    if n % 3 != 0:
        raise ValueError(f"n must be divisible by 3, got {n}")
    if not 3 <= n <= 15:
        raise ValueError(f"n {n} outside [3, 15]")
    m = 2 * n // 3
    pairs = []
    for combo in itertools.combinations(range(n), m):
        f0 = 0
        for i in combo:
            f0 |= 1 << i
        pairs.append((Family(n, (f0,)), Family(n, tuple(_submasks(f0)))))
    return UnionFreeSystem(n, tuple(pairs))


def _compact(mask: int, bits: List[int]) -> int:
    out = 0
    for j, b in enumerate(bits):
        if mask >> b & 1:
            out |= 1 << j
    return out


def derive_system(
    f1: Family, f2: Family, s_mask: int, k: int
) -> Tuple[UnionFreeSystem, SystemRates]:
    """Turn a union-free pair plus a k-shattered set S into a system on [n]-S.

    Both families are partitioned by their projection on S. Each f1-cell is
    trimmed to exactly k members and each nonempty f2-cell to its largest
    power-of-two prefix (so at least half survives); trims keep the
    lexicographically smallest members. Among the power classes 2^k', the one
    holding the most surviving f2 members is selected (smallest k' on ties),
    and cell G of f2 is paired with cell S\\G of f1: members of such a pair
    sum to exactly 1 on every coordinate of S, so after projecting onto the
    complement of S the system inherits union-freeness and disjoint supports
    from the input pair.
    """
    if f1.n != f2.n:
        raise ValueError(f"ground set mismatch: {f1.n} vs {f2.n}")
    n = f1.n
    if s_mask < 0 or s_mask >> n:
        raise ValueError(f"subset mask {s_mask} does not fit a {n}-element ground set")
    if s_mask == (1 << n) - 1:
        raise DerivationError("S covers the whole ground set; nothing remains to project onto")
    if len(f2) == 0:
        raise DerivationError("second family is empty; no cell can be selected")
    if not is_multiset_union_free(f1, f2):
        raise DerivationError("input pair is not multiset-union-free")
    if not is_k_shattered(f1, s_mask, k):
        raise DerivationError(f"S is not {k}-shattered by the first family")

    cells1 = defaultdict(list)
    for m in f1.members:
        cells1[m & s_mask].append(m)
    cells2 = defaultdict(list)
    for m in f2.members:
        cells2[m & s_mask].append(m)

    # power-of-two trim of the f2 cells, grouped by the surviving exponent
    classes: Dict[int, List[int]] = defaultdict(list)
    trimmed2: Dict[int, List[int]] = {}
    for g, ms in cells2.items():
        kp = len(ms).bit_length() - 1
        trimmed2[g] = ms[: 1 << kp]
        classes[kp].append(g)

    best_kp = max(classes, key=lambda kp: (len(classes[kp]) << kp, -kp))
    chosen = sorted(classes[best_kp])

    free_bits = [i for i in range(n) if not s_mask >> i & 1]
    m_out = len(free_bits)
    pairs = []
    for g in chosen:
        partner = s_mask ^ g
        side1 = cells1[partner][:k]
        side2 = trimmed2[g]
        fam1 = Family(m_out, tuple(_compact(m, free_bits) for m in side1))
        fam2 = Family(m_out, tuple(_compact(m, free_bits) for m in side2))
        pairs.append((fam1, fam2))
    system = UnionFreeSystem(m_out, tuple(pairs))
    return system, system_rates(system)


def system_to_json(u: UnionFreeSystem) -> str:
    payload = {
        "n": u.n,
        "m0": u.m0,
        "m1": u.m1,
        "m2": u.m2,
        "pairs": [[family_to_text(f1), family_to_text(f2)] for f1, f2 in u.pairs],
    }
    return json.dumps(payload, indent=2) + "\n"


def system_from_json(text: str) -> UnionFreeSystem:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad system JSON: {exc}") from None
    for key in ("n", "m0", "m1", "m2", "pairs"):
        if key not in payload:
            raise ValueError(f"system JSON is missing the {key!r} field")
    pairs = tuple(
        (family_from_text(t1), family_from_text(t2)) for t1, t2 in payload["pairs"]
    )
    u = UnionFreeSystem(int(payload["n"]), pairs)
    for name, got, want in (
        ("m0", u.m0, int(payload["m0"])),
        ("m1", u.m1, int(payload["m1"])),
        ("m2", u.m2, int(payload["m2"])),
    ):
        if got != want:
            raise ValueError(f"system JSON declares {name}={want} but the pairs give {got}")
    return u
