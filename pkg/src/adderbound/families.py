"""Exact combinatorics on families of subsets of {1,...,n}, encoded as bitmasks.

A family is a (possibly repeating) list of subsets of an n-element ground set,
each subset stored as an integer mask with bit i standing for element i+1.
This module provides the pieces the rate bounds are built from:

  * multiset-union-freeness of a pair of families (all vector sums distinct),
  * projection multisets and k-shattered sets,
  * the shifting/monotonization procedure,
  * a soft Sauer-Perles-Shelah counting bound (exact rational arithmetic),
  * Hamming balls, the guaranteed shattered-size formula, and a small-n
    exhaustive search for the best union-free pair.

Everything is deterministic; search tie-breaks always prefer the numerically
smallest mask, and the pair search uses an explicit node budget instead of
wall-clock time so results are machine-independent.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

import numpy as np

from .entropy import binary_entropy, binary_entropy_inv

__all__ = [
    "MAX_GROUND",
    "Family",
    "ProjectionMultiset",
    "SearchBudgetError",
    "is_multiset_union_free",
    "project",
    "is_k_shattered",
    "max_k_shattered",
    "shattering_profile",
    "shift_monotonize",
    "SoftSauerBound",
    "soft_sauer_bound",
    "shattering_guarantee",
    "hamming_ball",
    "PairSearchResult",
    "exhaustive_pair_search",
    "family_to_text",
    "family_from_text",
]

MAX_GROUND = 64

# cap on the number of candidate subsets a shattering search may enumerate
_SUBSET_BUDGET = 2_000_000

# cap on materialized Hamming-ball members
_BALL_CAP = 4_000_000


class SearchBudgetError(RuntimeError):
    """Raised when an exhaustive subset scan would exceed the internal budget."""


@dataclass(frozen=True)
class Family:
    """A list of subsets of [n], kept sorted; duplicates are permitted."""

    n: int
    members: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_GROUND:
            raise ValueError(f"ground set size {self.n} outside [1, {MAX_GROUND}]")
        full = (1 << self.n) - 1
        ms = tuple(sorted(int(m) for m in self.members))
        for m in ms:
            if m < 0 or m > full:
                raise ValueError(f"member {m} does not fit a {self.n}-element ground set")
        object.__setattr__(self, "members", ms)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def has_duplicates(self) -> bool:
        return len(set(self.members)) != len(self.members)


@dataclass(frozen=True)
class ProjectionMultiset:
    """Projections of a family onto a subset S, counted with multiplicity.

    Only masks that actually occur are stored; multiplicity() returns 0 for
    the rest.
    """

    subset_mask: int
    counts: Mapping[int, int]

    def __post_init__(self) -> None:
        for m, c in self.counts.items():
            if m & ~self.subset_mask:
                raise ValueError(f"projected mask {m} is not a submask of {self.subset_mask}")
            if c < 1:
                raise ValueError(f"multiplicity of {m} must be positive, got {c}")

    def multiplicity(self, mask: int) -> int:
        return self.counts.get(mask, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def _check_same_ground(f1: Family, f2: Family) -> None:
    if f1.n != f2.n:
        raise ValueError(f"ground set mismatch: {f1.n} vs {f2.n}")


def _spread(mask: int) -> int:
    """Embed a binary mask into base 4 (a zero bit between every pair of bits).

    Sums of two spread masks have digits at most 2, so no carries occur and
    integer equality of spread sums is equality of the element-wise vector
    sums a+c in {0,1,2}^n.
    """
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << (2 * i)
        mask >>= 1
        i += 1
    return out


def is_multiset_union_free(f1: Family, f2: Family) -> bool:
    """True iff all |f1|*|f2| vector sums a+c are distinct.

    Requires duplicate-free families on a common ground set; a duplicated
    member would make the count trivially collide.
    """
    _check_same_ground(f1, f2)
    if f1.has_duplicates or f2.has_duplicates:
        raise ValueError("union-freeness is only defined for duplicate-free families")
    s1 = [_spread(a) for a in f1.members]
    s2 = [_spread(c) for c in f2.members]
    seen = set()
    for a in s1:
        for c in s2:
            seen.add(a + c)
    return len(seen) == len(s1) * len(s2)


def project(f: Family, s_mask: int) -> ProjectionMultiset:
    """The multiset {F & S : F in f} with multiplicities."""
    _check_mask(f.n, s_mask)
    return ProjectionMultiset(s_mask, dict(Counter(m & s_mask for m in f.members)))


def _check_mask(n: int, s_mask: int) -> None:
    if s_mask < 0 or s_mask >> n:
        raise ValueError(f"subset mask {s_mask} does not fit a {n}-element ground set")


def _min_multiplicity(members: Sequence[int], s_mask: int) -> int:
    """Min over all submasks of s_mask of their multiplicity in the projection.

    Zero when some submask never occurs. This is the quantity whose >= k
    comparison defines k-shattering.
    """
    cells = 1 << s_mask.bit_count()
    if cells > len(members):
        return 0
    counts = Counter(m & s_mask for m in members)
    if len(counts) < cells:
        return 0
    return min(counts.values())


def is_k_shattered(f: Family, s_mask: int, k: int) -> bool:
    """True iff every submask of s_mask occurs at least k times in project(f, s_mask)."""
    _check_mask(f.n, s_mask)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return _min_multiplicity(f.members, s_mask) >= k


def _gosper(n: int, size: int) -> Iterator[int]:
    """All masks with `size` bits set that fit in n bits, in increasing order."""
    if size == 0:
        yield 0
        return
    if size > n:
        return
    v = (1 << size) - 1
    limit = 1 << n
    while v < limit:
        yield v
        # Gosper's hack: next larger integer with the same popcount
        c = v & -v
        r = v + c
        v = (((r ^ v) >> 2) // c) | r


def max_k_shattered(f: Family, k: int, size_cap: int = 25) -> Tuple[int, int]:
    """A largest k-shattered set, as (mask, size).

    Scans sizes from the counting cap floor(log2(|f|/k)) downward and returns
    on the first hit, which by the enumeration order is the numerically
    smallest mask of the largest k-shattered size. The empty set qualifies
    whenever |f| >= k, so the scan always terminates with an answer.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not 0 <= size_cap <= 25:
        raise ValueError(f"size_cap {size_cap} outside [0, 25]")
    if len(f) < k:
        raise ValueError(f"family of size {len(f)} cannot {k}-shatter any set, even the empty one")
    # a k-shattered S needs k * 2^|S| members, so sizes above this floor are dead
    start = min(f.n, size_cap, (len(f) // k).bit_length() - 1)
    total = sum(math.comb(f.n, s) for s in range(1, start + 1))
    if total > _SUBSET_BUDGET:
        raise SearchBudgetError(
            f"scanning sizes 1..{start} on n={f.n} needs {total} subsets (budget {_SUBSET_BUDGET})"
        )
    for size in range(start, 0, -1):
        for mask in _gosper(f.n, size):
            if _min_multiplicity(f.members, mask) >= k:
                return mask, size
    return 0, 0


def shattering_profile(f: Family, ks: Sequence[int] = (1, 2, 4)) -> Dict[int, Tuple[int, int]]:
    """max_k_shattered for several k values in a single bottom-up pass.

    Builds the complex of 1-shattered sets level by level (a set can only be
    shattered if all its one-element-smaller subsets are), recording the
    minimum projection multiplicity of each set. One pass therefore answers
    every k at once; results agree with max_k_shattered exactly, including
    the smallest-mask tie-break.
    """
    ks = sorted(set(int(k) for k in ks))
    if not ks:
        raise ValueError("need at least one k")
    if ks[0] < 1:
        raise ValueError(f"k must be >= 1, got {ks[0]}")
    if len(f) < ks[-1]:
        raise ValueError(f"family of size {len(f)} cannot {ks[-1]}-shatter any set")
    members = np.asarray(f.members, dtype=np.uint64)
    best = {k: (0, 0) for k in ks}
    level: Dict[int, int] = {0: len(f)}
    size = 0
    elems = [1 << i for i in range(f.n)]
    while level:
        size += 1
        prev = level
        prev_keys = set(prev)
        cand = set()
        for s in prev:
            for e in elems:
                if not s & e:
                    cand.add(s | e)
        cells = 1 << size
        level = {}
        for s in sorted(cand):
            if any((s & ~e) not in prev_keys for e in elems if s & e):
                continue
            proj = members & np.uint64(s)
            vals, counts = np.unique(proj, return_counts=True)
            if len(vals) < cells:
                continue
            level[s] = int(counts.min())
        for k in ks:
            hits = [s for s, m in level.items() if m >= k]
            if hits:
                best[k] = (min(hits), size)
    return best


def shift_monotonize(f: Family) -> Family:
    """Monotonize a duplicate-free family by repeated downward shifts.

    For each element i in cyclic order, every member that contains i and
    whose i-removed version is absent gets i removed. Cardinality is
    preserved, the result is closed under taking subsets, and any set that is
    k-shattered by the output was already k-shattered by the input.
    """
    if f.has_duplicates:
        raise ValueError("shifting requires a duplicate-free family")
    cur = set(f.members)
    changed = True
    while changed:
        changed = False
        for i in range(f.n):
            bit = 1 << i
            moved = [g for g in cur if g & bit and (g ^ bit) not in cur]
            if moved:
                changed = True
                cur.difference_update(moved)
                cur.update(g ^ bit for g in moved)
    return Family(f.n, tuple(cur))


@dataclass(frozen=True)
class SoftSauerBound:
    """Result of the soft Sauer-Perles-Shelah count: exact rational plus t*."""

    n: int
    d: int
    k: int
    t_star: int
    exact: Fraction

    @property
    def value(self) -> float:
        return float(self.exact)


def soft_sauer_bound(n: int, d: int, k: int) -> SoftSauerBound:
    """Upper bound on |f| when no d-element set is k-shattered by f.

    t* is the smallest t with C(n-d, t-d) >= k (or n when none exists); the
    bound is

        sum_{t=0}^{t*} C(n,t)  +  C(n,t*) * sum_{t=t*+1}^{n} C(t*,d)/C(t,d)

    evaluated in exact integer/rational arithmetic. The head sum must start
    at t=0: after monotonizing, the empty set is always a member, and for
    k >= 2 the full subset lattice meets the hypothesis with d = n while
    every per-cardinality cap is tight, so dropping the t=0 term would
    undercount it by exactly one (n=1, f={{},{1}}, k=2 already fails).
    """
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got d={d}, n={n}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    t_star = n
    for t in range(d, n + 1):
        if math.comb(n - d, t - d) >= k:
            t_star = t
            break
    head = sum(math.comb(n, t) for t in range(t_star + 1))
    tail = sum(
        (Fraction(math.comb(t_star, d), math.comb(t, d)) for t in range(t_star + 1, n + 1)),
        Fraction(0),
    )
    return SoftSauerBound(n, d, k, t_star, head + math.comb(n, t_star) * tail)


def shattering_guarantee(rate: float, alpha: float, n: int) -> Tuple[int, int]:
    """Guaranteed (set size, multiplicity) shattered in a family of rate `rate`.

    A family with 2^{n(rate+eps)} members k-shatters, for large n, a set of
    size ceil(n*alpha) with k = ceil(2^{n*beta}) copies of every subset, where
    beta = (1-alpha) * h((h_inv(rate)-alpha)/(1-alpha)). Valid for
    0 <= alpha <= h_inv(rate).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"rate {rate} outside [0, 1]")
    p = binary_entropy_inv(rate)
    if alpha < 0.0 or alpha > p + 1e-12:
        raise ValueError(f"alpha {alpha} outside [0, h_inv(rate)] = [0, {p}]")
    alpha = min(alpha, p)
    if p == alpha:
        beta = 0.0
    else:
        beta = (1.0 - alpha) * binary_entropy((p - alpha) / (1.0 - alpha))
    size = math.ceil(n * alpha - 1e-9)
    mult = math.ceil(2.0 ** (n * beta) - 1e-9)
    return size, mult


def hamming_ball(n: int, radius: int) -> Family:
    """All subsets of [n] of cardinality at most `radius`."""
    if not 1 <= n <= 25:
        raise ValueError(f"n {n} outside [1, 25]")
    if not 0 <= radius <= n:
        raise ValueError(f"radius {radius} outside [0, {n}]")
    count = sum(math.comb(n, t) for t in range(radius + 1))
    if count > _BALL_CAP:
        raise ValueError(f"ball has {count} members, over the in-memory cap {_BALL_CAP}")
    members = []
    for t in range(radius + 1):
        for combo in itertools.combinations(range(n), t):
            m = 0
            for i in combo:
                m |= 1 << i
            members.append(m)
    return Family(n, tuple(members))


@dataclass(frozen=True)
class PairSearchResult:
    f1: Family
    f2: Family
    product: int
    exact: bool
    nodes: int


def exhaustive_pair_search(n: int, budget_secs: float = 10.0) -> PairSearchResult:
    """Best multiset-union-free pair over [n] by branch-and-bound.

    Maximizes |f1|*|f2| over ordered pairs of nonempty duplicate-free
    families. The budget is converted to a deterministic node count
    (150000 nodes per second), so identical arguments give identical results
    on any machine; `exact` reports whether the space was exhausted. Ties are
    broken toward the lexicographically smallest (f1, f2) member tuples,
    which the ascending-mask enumeration yields for free. For n <= 3 the
    search completes exactly well within the default budget.
    """
    if not 1 <= n <= 6:
        raise ValueError(f"n {n} outside [1, 6]")
    if budget_secs <= 0:
        raise ValueError(f"budget must be positive, got {budget_secs}")
    node_budget = int(budget_secs * 150_000)
    num = 1 << n
    spreads = [_spread(m) for m in range(num)]
    cap = 3**n

    best_product = 0
    best_pair: Tuple[Tuple[int, ...], Tuple[int, ...]] = ((), ())
    nodes = 0
    exhausted = False

    f1: List[int] = []
    f2: List[int] = []
    used: set = set()

    def extend_f2(start: int) -> None:
        # grow f2 with masks >= start, keeping all pairwise sums distinct
        nonlocal nodes, best_product, best_pair, exhausted
        if exhausted:
            return
        nodes += 1
        if nodes >= node_budget:
            exhausted = True
            return
        prod = len(f1) * len(f2)
        if f2 and prod > best_product:
            best_product = prod
            best_pair = (tuple(f1), tuple(f2))
        # even taking every remaining mask cannot beat the incumbent
        if len(f1) * (len(f2) + num - start) <= best_product:
            return
        for c in range(start, num):
            sums = [sa + spreads[c] for sa in map(spreads.__getitem__, f1)]
            if any(s in used for s in sums):
                continue
            used.update(sums)
            f2.append(c)
            extend_f2(c + 1)
            f2.pop()
            used.difference_update(sums)
            if exhausted:
                return

    def extend_f1(start: int) -> None:
        nonlocal nodes, exhausted
        if exhausted:
            return
        nodes += 1
        if nodes >= node_budget:
            exhausted = True
            return
        if f1:
            # the partner family can never push the product past 3^n
            if len(f1) * min(num, cap // len(f1)) > best_product:
                extend_f2(0)
        for a in range(start, num):
            if (len(f1) + 1 + num - a - 1) * num <= best_product:
                break
            f1.append(a)
            extend_f1(a + 1)
            f1.pop()
            if exhausted:
                return

    extend_f1(0)
    fam1 = Family(n, best_pair[0])
    fam2 = Family(n, best_pair[1])
    return PairSearchResult(fam1, fam2, best_product, not exhausted, nodes)


def family_to_text(f: Family) -> str:
    """Serialize a family: `n=<int>` then one line per member.

    Members are written as sorted comma-separated 1-indexed elements, with
    `-` standing for the empty set.
    """
    lines = [f"n={f.n}"]
    for m in f.members:
        if m == 0:
            lines.append("-")
        else:
            lines.append(",".join(str(i + 1) for i in range(f.n) if m >> i & 1))
    return "\n".join(lines) + "\n"


def family_from_text(text: str) -> Family:
    """Parse the family text format; inverse of family_to_text."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("family text must start with an n=<int> line")
    try:
        n = int(lines[0][2:])
    except ValueError:
        raise ValueError(f"bad ground set line {lines[0]!r}") from None
    members = []
    for ln in lines[1:]:
        if ln == "-":
            members.append(0)
            continue
        m = 0
        for part in ln.split(","):
            try:
                elem = int(part)
            except ValueError:
                raise ValueError(f"bad element {part!r} in line {ln!r}") from None
            if not 1 <= elem <= n:
                raise ValueError(f"element {elem} outside [1, {n}]")
            m |= 1 << (elem - 1)
        members.append(m)
    return Family(n, tuple(members))
