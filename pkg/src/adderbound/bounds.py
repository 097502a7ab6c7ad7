"""Upper bounds on the rate pairs (r1, r2) of multiset-union-free family pairs,
equivalently on the zero-error capacity region of the two-user binary adder
channel.

Three bounds on r2 as a function of r1 are provided:

  simple_bound   the sum-rate bound r1 + r2 <= 3/2,
  ul_bound       the Urbanke-Li minimax bound,
  main_bound     the envelope bound through r_sigma (strictly better near r1=1).

All optimizations are grid searches followed by golden-section refinement
(scalar_maximize); inner maxima are always fully resolved before an outer
minimum samples them, since an under-resolved inner max would invalidly lower
an upper bound. Everything here is deterministic: same inputs and config give
bit-identical results.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

import numpy as np

from .entropy import (
    PROB_SLACK,
    binary_convolve,
    binary_entropy,
    binary_entropy_inv,
)

__all__ = [
    "LOG2_3",
    "EvaluationError",
    "OptimizerConfig",
    "DEFAULT_CONFIG",
    "scalar_maximize",
    "sum_rate_envelope",
    "conditional_sum_envelope",
    "sum_rate_bound",
    "simple_bound",
    "weldon_bound",
    "weldon_nonsystematic_bound",
    "ul_mixture_entropy",
    "ul_sum_bound",
    "ul_bound",
    "main_bound",
    "BoundCurve",
    "curve",
]

LOG2_3 = math.log2(3.0)


class EvaluationError(RuntimeError):
    """An objective returned a non-finite value; carries the offending argument."""

    def __init__(self, argument: float, value: float):
        self.argument = argument
        self.value = value
        super().__init__(f"objective returned {value!r} at x={argument!r}")


@dataclass(frozen=True)
class OptimizerConfig:
    """Grid density and refinement depth for the scalar searches."""

    grid_points: int = 4096
    refine_iters: int = 64
    tol: float = 1e-7

    def __post_init__(self):
        if self.grid_points < 64:
            raise ValueError(f"grid_points={self.grid_points} < 64")
        if self.refine_iters < 1:
            raise ValueError(f"refine_iters={self.refine_iters} < 1")
        if not self.tol > 0.0:
            raise ValueError(f"tol={self.tol} must be positive")


DEFAULT_CONFIG = OptimizerConfig()

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _checked(f: Callable[[float], float], x: float) -> float:
    v = float(f(x))
    if not math.isfinite(v):
        raise EvaluationError(x, v)
    return v


def _golden_max(f, a: float, b: float, iters: int) -> Tuple[float, float]:
    # Golden-section search for a maximum on [a, b]. Tracks the best point seen
    # so kinks inside the bracket cannot lose an already-evaluated value.
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = _checked(f, c)
    fd = _checked(f, d)
    if fc >= fd:
        best_x, best_v = c, fc
    else:
        best_x, best_v = d, fd
    for _ in range(iters):
        if b - a <= 1e-15:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = _checked(f, c)
            x, v = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = _checked(f, d)
            x, v = d, fd
        if v > best_v:
            best_x, best_v = x, v
    return best_x, best_v


def scalar_maximize(
    f,
    lo: float,
    hi: float,
    cfg: OptimizerConfig = DEFAULT_CONFIG,
    *,
    vectorized: bool = False,
) -> Tuple[float, float]:
    """Maximize f on [lo, hi]: dense grid, then golden-section refinement
    around the three best grid candidates.

    Args:
        f: objective. With vectorized=True it must also accept a numpy array
           (used for the grid pass; refinement always calls it with floats).
        lo, hi: interval endpoints, lo <= hi. A degenerate interval returns
           (lo, f(lo)).
        cfg: grid density / refinement depth.

    Returns:
        (argmax, max); the value is within cfg.tol of the true maximum for
        objectives smooth at the scale of one grid step.

    Raises:
        EvaluationError: if f returns a non-finite value.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
        raise ValueError(f"bad interval [{lo!r}, {hi!r}]")
    if hi == lo:
        return lo, _checked(f, lo)
    xs = np.linspace(lo, hi, cfg.grid_points)
    if vectorized:
        vals = np.asarray(f(xs), dtype=float)
        if vals.shape != xs.shape:
            raise ValueError("vectorized objective returned wrong shape")
        bad = ~np.isfinite(vals)
        if bad.any():
            i = int(np.argmax(bad))
            raise EvaluationError(float(xs[i]), float(vals[i]))
    else:
        vals = np.empty(cfg.grid_points)
        for i in range(cfg.grid_points):
            vals[i] = _checked(f, float(xs[i]))
    order = np.argsort(vals)
    best_i = int(order[-1])
    best_x, best_v = float(xs[best_i]), float(vals[best_i])
    step = (hi - lo) / (cfg.grid_points - 1)
    for i in order[-3:]:
        a = max(lo, float(xs[i]) - step)
        b = min(hi, float(xs[i]) + step)
        x, v = _golden_max(f, a, b, cfg.refine_iters)
        if v > best_v:
            best_x, best_v = x, v
    return best_x, best_v


def _scalar_minimize(f, lo, hi, cfg, *, vectorized=False):
    x, v = scalar_maximize(lambda t: -f(t), lo, hi, cfg, vectorized=vectorized)
    return x, -v


def _check_unit(x: float, name: str, hi: float = 1.0) -> float:
    if math.isnan(x) or x < -PROB_SLACK or x > hi + PROB_SLACK:
        raise ValueError(f"{name}={x!r} outside [0, {hi}]")
    return min(max(x, 0.0), hi)


def sum_rate_envelope(eta):
    """L(eta) = h(eta) + 1 - eta on [0, 1/2]: the largest sum rate compatible
    with sum-variable disagreement probability eta. Peaks at log2(3) at
    eta = 1/3. Accepts a float or an ndarray."""
    if isinstance(eta, np.ndarray):
        if np.any(eta < -PROB_SLACK) or np.any(eta > 0.5 + PROB_SLACK):
            raise ValueError("eta outside [0, 1/2]")
        e = np.clip(eta, 0.0, 0.5)
        return binary_entropy(e) + 1.0 - e
    e = _check_unit(float(eta), "eta", 0.5)
    return binary_entropy(e) + 1.0 - e


def _j_branch1(e):
    # 2 h((1 - sqrt(1-2e))/2) - e; radicand clamped against float drift
    if isinstance(e, np.ndarray):
        rad = np.maximum(1.0 - 2.0 * e, 0.0)
        return 2.0 * binary_entropy(0.5 * (1.0 - np.sqrt(rad))) - e
    rad = 1.0 - 2.0 * e
    if rad < 0.0:
        rad = 0.0
    return 2.0 * binary_entropy(0.5 * (1.0 - math.sqrt(rad))) - e


def _j_branch2(e, s: float):
    # second line of the envelope, valid for e < s = p*p; needs the entropy
    # argument (1 - ratio)/2 nonnegative, i.e. e >= 2p^2 roughly
    denom = 1.0 - 2.0 * s
    if denom <= 0.0:
        raise ValueError("conditional envelope singular at p = 1/2 below eta = 1/2")
    root = math.sqrt(denom)
    if isinstance(e, np.ndarray):
        gap = 1.0 - e - s
        arg = 0.5 * (1.0 - gap / root)
        if np.any(arg < -PROB_SLACK):
            raise ValueError("eta below the valid range of the second branch")
        arg = np.clip(arg, 0.0, 1.0)
        return 2.0 * binary_entropy(arg) - 0.5 * (1.0 - gap * gap / denom)
    gap = 1.0 - e - s
    arg = 0.5 * (1.0 - gap / root)
    if arg < -PROB_SLACK:
        raise ValueError("eta below the valid range of the second branch")
    arg = min(max(arg, 0.0), 1.0)
    return 2.0 * binary_entropy(arg) - 0.5 * (1.0 - gap * gap / denom)


def conditional_sum_envelope(p: float, eta):
    """J(p, eta): upper envelope of the conditional sum entropy H(X1+X2|U)
    over joints with P(X1 != X2) = eta and H(X1|U) >= h(p).

    Two branches split at eta = p*p (binary convolution of p with itself);
    they agree at the boundary. Accepts eta as float or ndarray.
    """
    pf = _check_unit(float(p), "p", 0.5)
    s = binary_convolve(pf, pf)
    if isinstance(eta, np.ndarray):
        if np.any(eta < -PROB_SLACK) or np.any(eta > 0.5 + PROB_SLACK):
            raise ValueError("eta outside [0, 1/2]")
        e = np.clip(eta, 0.0, 0.5)
        out = np.empty_like(e, dtype=float)
        hi_mask = e >= s
        if hi_mask.any():
            out[hi_mask] = _j_branch1(e[hi_mask])
        lo_mask = ~hi_mask
        if lo_mask.any():
            out[lo_mask] = _j_branch2(e[lo_mask], s)
        return out
    e = _check_unit(float(eta), "eta", 0.5)
    if e >= s:
        return _j_branch1(e)
    return _j_branch2(e, s)


def sum_rate_bound(r0: float, r1: float, cfg: OptimizerConfig = DEFAULT_CONFIG) -> float:
    """R_sigma(r0, r1): max over eta in [h_inv(r1), 1/2] of
    min{L(eta), J(h_inv(r1), eta) + r0}.

    Bounds the total rate r0 + r1 + r2 of any multiset-union-free system whose
    first-family rate is r1 and pair-index rate is r0. Always in
    [3/2, log2(3)]; equals exactly 3/2 at r0 = 0.
    """
    if r0 < 0.0:
        raise ValueError(f"r0={r0!r} must be nonnegative")
    r1c = _check_unit(float(r1), "r1")
    p = binary_entropy_inv(r1c)

    def obj(eta):
        if isinstance(eta, np.ndarray):
            return np.minimum(
                sum_rate_envelope(eta), conditional_sum_envelope(p, eta) + r0
            )
        lv = sum_rate_envelope(eta)
        jv = conditional_sum_envelope(p, eta) + r0
        return lv if lv <= jv else jv

    _, v = scalar_maximize(obj, p, 0.5, cfg, vectorized=True)
    return v


def simple_bound(r1: float) -> float:
    """r2 <= 3/2 - r1: the classical sum-rate bound, floored at 0."""
    r1c = _check_unit(float(r1), "r1")
    return max(1.5 - r1c, 0.0)


def weldon_bound(r1: float) -> float:
    """r2 <= (1 - r1) log2(3), for systematic first families; clamped to [0,1]."""
    r1c = _check_unit(float(r1), "r1")
    return min(max((1.0 - r1c) * LOG2_3, 0.0), 1.0)


def weldon_nonsystematic_bound(r1: float) -> float:
    """r2 <= (1 - h_inv(r1)) log2(3), dropping the systematic requirement;
    clamped to [0,1]. Looser than the sum-rate bound everywhere."""
    r1c = _check_unit(float(r1), "r1")
    return min(max((1.0 - binary_entropy_inv(r1c)) * LOG2_3, 0.0), 1.0)


def _nlog2n(x):
    if isinstance(x, np.ndarray):
        out = np.zeros_like(x, dtype=float)
        m = x > 0.0
        out[m] = -x[m] * np.log2(x[m])
        return out
    return 0.0 if x <= 0.0 else -x * math.log2(x)


def ul_mixture_entropy(rho: float, cfg: OptimizerConfig = DEFAULT_CONFIG) -> float:
    """g*(rho) = max over beta in [0,1] of the entropy of the ternary pmf
    ((1-rho)(1-beta), rho(1-beta) + (1-rho)beta, rho*beta)."""
    r = _check_unit(float(rho), "rho", 0.5)

    def obj(beta):
        p0 = (1.0 - r) * (1.0 - beta)
        p1 = r * (1.0 - beta) + (1.0 - r) * beta
        p2 = r * beta
        return _nlog2n(p0) + _nlog2n(p1) + _nlog2n(p2)

    _, v = scalar_maximize(obj, 0.0, 1.0, cfg, vectorized=True)
    return v


def ul_sum_bound(r1: float, cfg: OptimizerConfig = DEFAULT_CONFIG) -> float:
    """The Urbanke-Li bound on the sum rate r1 + r2:

    min over rho in [0,1/2] of max over kappa in [0,1] of
        h(<1 - h_inv(r1) - kappa>) - h(rho)
        + min{ g*(rho), <rho+kappa> + h(<rho+kappa>) }

    where <a> = min(a, 1/2).
    """
    r1c = _check_unit(float(r1), "r1")
    p1 = binary_entropy_inv(r1c)

    def outer(rho):
        rho = float(rho)
        g = ul_mixture_entropy(rho, cfg)
        hrho = binary_entropy(rho)

        def inner(kappa):
            if isinstance(kappa, np.ndarray):
                # first term is undefined past kappa = 1 - p1; clipping to 0
                # leaves the max unchanged (those kappa are dominated by
                # kappa = 1 - p1, where the term is already 0)
                a = np.clip(1.0 - p1 - kappa, 0.0, 0.5)
                b = np.minimum(rho + kappa, 0.5)
                second = np.minimum(g, b + binary_entropy(b))
                return binary_entropy(a) - hrho + second
            a = 1.0 - p1 - kappa
            a = 0.5 if a > 0.5 else (0.0 if a < 0.0 else a)
            b = rho + kappa
            if b > 0.5:
                b = 0.5
            sec = b + binary_entropy(b)
            if g < sec:
                sec = g
            return binary_entropy(a) - hrho + sec

        _, v = scalar_maximize(inner, 0.0, 1.0, cfg, vectorized=True)
        return v

    _, v = _scalar_minimize(outer, 0.0, 0.5, cfg)
    return v


def ul_bound(r1: float, cfg: OptimizerConfig = DEFAULT_CONFIG) -> float:
    """The r2 value implied by the Urbanke-Li sum bound: ul_sum_bound(r1) - r1,
    clamped to [0, 1].

    Note this is a bound on the sum converted to a bound on r2; at r1 = 1 it
    evaluates to about 0.492.
    """
    r1c = _check_unit(float(r1), "r1")
    return min(max(ul_sum_bound(r1c, cfg) - r1c, 0.0), 1.0)


def _gamma(p1: float, alpha: float) -> float:
    # h((p1 - alpha)/(1 - alpha)); the argument lies in [0, p1] for
    # alpha in [0, p1], so no singularity (alpha <= 1/2 < 1)
    ratio = (p1 - alpha) / (1.0 - alpha)
    if ratio < 0.0:
        ratio = 0.0
    elif ratio > 0.5:
        ratio = 0.5
    return binary_entropy(ratio)


def main_bound(r1: float, cfg: OptimizerConfig = DEFAULT_CONFIG) -> float:
    """The envelope bound on r2:

    min over alpha in [0, h_inv(r1)] of
        (1 - alpha) * (r_sigma(alpha/(1-alpha), Gamma) - Gamma),
    Gamma = h((h_inv(r1) - alpha)/(1 - alpha)).

    Clamped to [0, 1]. Strictly below ul_bound near r1 = 1 (about 0.4798 at
    r1 = 1 versus 0.492).
    """
    r1c = _check_unit(float(r1), "r1")
    p1 = binary_entropy_inv(r1c)

    def obj(alpha):
        alpha = float(alpha)
        gamma = _gamma(p1, alpha)
        r0 = alpha / (1.0 - alpha)
        return (1.0 - alpha) * (sum_rate_bound(r0, gamma, cfg) - gamma)

    _, v = _scalar_minimize(obj, 0.0, p1, cfg)
    return min(max(v, 0.0), 1.0)


@dataclass(frozen=True)
class BoundCurve:
    """Rows of (r1, simple, ul, main), r1 strictly increasing."""

    rows: Tuple[Tuple[float, float, float, float], ...]

    def __post_init__(self):
        rows = tuple(tuple(float(x) for x in row) for row in self.rows)
        for row in rows:
            if len(row) != 4:
                raise ValueError(f"row {row!r} does not have 4 columns")
            if any(x < 0.0 for x in row[1:]):
                raise ValueError(f"negative bound in row {row!r}")
        r1s = [row[0] for row in rows]
        if any(b <= a for a, b in zip(r1s, r1s[1:])):
            raise ValueError("r1 column must be strictly increasing")
        object.__setattr__(self, "rows", rows)

    def to_csv(self) -> str:
        """Serialize with header r1,simple,ul,main, 6 decimal digits."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r1", "simple", "ul", "main"])
        for r1, s, u, m in self.rows:
            w.writerow([f"{r1:.6f}", f"{s:.6f}", f"{u:.6f}", f"{m:.6f}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "BoundCurve":
        rdr = csv.reader(io.StringIO(text))
        header = next(rdr, None)
        if header != ["r1", "simple", "ul", "main"]:
            raise ValueError(f"unexpected CSV header {header!r}")
        rows = []
        for rec in rdr:
            if not rec:
                continue
            if len(rec) != 4:
                raise ValueError(f"unexpected CSV row {rec!r}")
            rows.append(tuple(float(x) for x in rec))
        return cls(tuple(rows))


def curve(
    r1_lo: float,
    r1_hi: float,
    steps: int,
    cfg: OptimizerConfig = DEFAULT_CONFIG,
) -> BoundCurve:
    """Evaluate simple_bound, ul_bound and main_bound on a uniform r1 grid."""
    if not 0.0 <= r1_lo < r1_hi <= 1.0 + PROB_SLACK:
        raise ValueError(f"bad range [{r1_lo!r}, {r1_hi!r}]")
    if steps < 2:
        raise ValueError(f"steps={steps} < 2")
    rows = []
    for r1 in np.linspace(r1_lo, min(r1_hi, 1.0), steps):
        r1 = float(r1)
        rows.append((r1, simple_bound(r1), ul_bound(r1, cfg), main_bound(r1, cfg)))
    return BoundCurve(tuple(rows))
