"""Entropy primitives, all in bits.

Scalar arguments take a fast pure-math path; numpy arrays are handled
element-wise. Probabilities are validated with a small slack (1e-12) so that
accumulated rounding never trips a domain check, but anything further outside
[0, 1] is treated as a caller bug and raises ValueError.
"""

from __future__ import annotations

import math
from typing import Sequence, Union

import numpy as np

__all__ = [
    "PROB_SLACK",
    "binary_entropy",
    "binary_entropy_inv",
    "binary_convolve",
    "entropy",
]

PROB_SLACK = 1e-12

ArrayLike = Union[float, np.ndarray]


def _as_prob(p: float, name: str = "p") -> float:
    """Clamp a float into [0, 1], rejecting anything beyond the slack."""
    if p < 0.0:
        if p < -PROB_SLACK:
            raise ValueError(f"{name}={p!r} is not a probability")
        return 0.0
    if p > 1.0:
        if p > 1.0 + PROB_SLACK:
            raise ValueError(f"{name}={p!r} is not a probability")
        return 1.0
    if math.isnan(p):
        raise ValueError(f"{name} is NaN")
    return p


def _as_prob_array(p: np.ndarray, name: str = "p") -> np.ndarray:
    if np.any(p < -PROB_SLACK) or np.any(p > 1.0 + PROB_SLACK) or np.any(np.isnan(p)):
        raise ValueError(f"{name} contains values outside [0, 1]")
    return np.clip(p, 0.0, 1.0)


def binary_entropy(p: ArrayLike) -> ArrayLike:
    """h(p) = -p log2 p - (1-p) log2 (1-p), with h(0) = h(1) = 0."""
    if isinstance(p, np.ndarray):
        q = _as_prob_array(p)
        out = np.zeros_like(q, dtype=float)
        mask = (q > 0.0) & (q < 1.0)
        qm = np.minimum(q[mask], 1.0 - q[mask])
        out[mask] = -qm * np.log2(qm) - (1.0 - qm) * np.log2(1.0 - qm)
        return out
    q = _as_prob(float(p))
    if q == 0.0 or q == 1.0:
        return 0.0
    # canonicalize to the smaller argument: 1-q is exact for q >= 1/2
    # (Sterbenz), which makes h(p) and h(1-p) agree to the last few ulps
    if q > 0.5:
        q = 1.0 - q
    r = 1.0 - q
    return -q * math.log2(q) - r * math.log2(r)


def binary_entropy_inv(x: float, tol: float = 1e-12, max_iter: int = 200) -> float:
    """Inverse of binary_entropy restricted to [0, 1/2], by bisection.

    Returns p with |binary_entropy(p) - x| <= tol. The restriction makes the
    inverse single-valued; the other preimage is 1 - p.
    """
    if math.isnan(x) or x < -PROB_SLACK or x > 1.0 + PROB_SLACK:
        raise ValueError(f"entropy value {x!r} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 0.5
    lo, hi = 0.0, 0.5
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        val = binary_entropy(mid)
        if abs(val - x) <= tol:
            return mid
        if val < x:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-17:
            break
    return 0.5 * (lo + hi)


def binary_convolve(p: ArrayLike, q: ArrayLike) -> ArrayLike:
    """p * q = p(1-q) + q(1-p): the probability two independent bits differ."""
    if isinstance(p, np.ndarray) or isinstance(q, np.ndarray):
        pa = _as_prob_array(np.asarray(p, dtype=float), "p")
        qa = _as_prob_array(np.asarray(q, dtype=float), "q")
        return pa * (1.0 - qa) + qa * (1.0 - pa)
    pf = _as_prob(float(p), "p")
    qf = _as_prob(float(q), "q")
    return pf * (1.0 - qf) + qf * (1.0 - pf)


def entropy(pmf: Sequence[float]) -> float:
    """Shannon entropy (bits) of a finite pmf.

    The masses must be nonnegative and sum to 1 within 1e-12.
    """
    masses = [float(m) for m in pmf]
    if not masses:
        raise ValueError("empty pmf")
    total = 0.0
    acc = 0.0
    for m in masses:
        mm = _as_prob(m, "mass")
        total += mm
        if mm > 0.0:
            acc -= mm * math.log2(mm)
    if abs(total - 1.0) > 1e-12:
        raise ValueError(f"pmf sums to {total!r}, not 1")
    return acc
