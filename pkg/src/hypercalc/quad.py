"""Adaptive quadrature along horizontal contour lines and over boxes in R^n.

The line integrator is an adaptive bisection scheme with an embedded
Gauss-Legendre pair (10/21 points) per panel; panels of oscillatory
integrands are pre-split to resolve the oscillation wavelength.  Truncation
tails are certified from the declared growth class of the integrand.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import gammaincc, gamma as gamma_fn

from .growth import GrowthClass

__all__ = [
    "ContourSpec", "QuadResult", "integrate_line", "integrate_box",
    "tail_bound", "verify_growth", "ConvergenceError", "DivergentTailError",
    "DimensionError",
]


class ConvergenceError(Exception):
    pass


class DivergentTailError(Exception):
    pass


class DimensionError(Exception):
    pass


@dataclass(frozen=True)
class ContourSpec:
    """Parameters of a truncated horizontal line contour Im z = eta."""

    imag_offset: float = 0.5
    truncation_radius: Optional[float] = None  # None = auto from growth
    abs_tol: float = 1e-9
    max_subdivisions: int = 4000
    osc_freq: float = 0.0  # |xi| of a factor exp(-i z xi), if any
    growth: Optional[GrowthClass] = None  # declared decay of the integrand
    weight_exponent: float = 0.0  # extra polynomial weight |x|^w in the tail


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error_estimate: float
    tail_bound: float
    nodes_used: int


# ---------------------------------------------------------------------------
# embedded Gauss-Legendre pair

_XL, _WL = np.polynomial.legendre.leggauss(10)
_XH, _WH = np.polynomial.legendre.leggauss(21)


def _panel(f, a, b):
    """Return (value, error, nodes) for one panel of a vectorized integrand."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = np.concatenate([mid + half * _XL, mid + half * _XH])
    y = np.asarray(f(x))
    lo = half * np.sum(_WL * y[: len(_XL)])
    hi = half * np.sum(_WH * y[len(_XL):])
    return hi, abs(hi - lo), len(x)


def adaptive_interval(f, a, b, abs_tol, max_subdivisions=4000,
                      breakpoints: Sequence[float] = (), max_panel=None):
    """Adaptive bisection of a vectorized integrand over [a, b]."""
    pts = sorted({float(a), float(b), *[p for p in breakpoints if a < p < b]})
    if max_panel is not None and max_panel > 0:
        refined = []
        for lo, hi in zip(pts[:-1], pts[1:]):
            k = max(1, int(math.ceil((hi - lo) / max_panel)))
            refined.extend(lo + (hi - lo) * j / k for j in range(k))
        pts = refined + [pts[-1]]
    heap = []
    total = 0.0 + 0.0j
    total_err = 0.0
    nodes = 0
    panels = {}
    for idx, (lo, hi) in enumerate(zip(pts[:-1], pts[1:])):
        val, err, n = _panel(f, lo, hi)
        nodes += n
        panels[idx] = (lo, hi, val, err)
        heapq.heappush(heap, (-err, idx))
    next_idx = len(panels)
    splits = 0
    while True:
        total = sum(v for (_, _, v, _) in panels.values())
        total_err = sum(e for (_, _, _, e) in panels.values())
        if total_err <= abs_tol:
            break
        if splits >= max_subdivisions:
            raise ConvergenceError(
                f"did not reach abs_tol={abs_tol:g}: error estimate "
                f"{total_err:g} after {splits} subdivisions")
        neg_err, idx = heapq.heappop(heap)
        if idx not in panels:
            continue
        lo, hi, _, _ = panels.pop(idx)
        mid = 0.5 * (lo + hi)
        for sub in ((lo, mid), (mid, hi)):
            val, err, n = _panel(f, *sub)
            nodes += n
            panels[next_idx] = (sub[0], sub[1], val, err)
            heapq.heappush(heap, (-err, next_idx))
            next_idx += 1
        splits += 1
    # deterministic reduction in panel order
    ordered = sorted(panels.values(), key=lambda p: p[0])
    total = sum(v for (_, _, v, _) in ordered)
    total_err = sum(e for (_, _, _, e) in ordered)
    return total, total_err, nodes


def _geometric_breakpoints(radius):
    """Panel seeds +-2^k, suited to integrands varying on a log scale."""
    pts = [0.0]
    x = 1.0
    while x < radius:
        pts.extend([x, -x])
        x *= 2.0
    return pts


def auto_radius(growth: GrowthClass, abs_tol: float, weight_exponent: float = 0.0,
                cap: float = 1e12) -> float:
    """Smallest radius whose certified tail is below abs_tol / 10."""
    target = abs_tol / 10.0
    lo, hi = 1.0, 2.0
    while hi < cap:
        try:
            if tail_bound(growth, weight_exponent, hi) <= target:
                break
        except DivergentTailError:
            raise
        hi *= 2.0
    else:
        raise ConvergenceError("tail target unreachable below the radius cap")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if tail_bound(growth, weight_exponent, mid) <= target:
            hi = mid
        else:
            lo = mid
    return hi


def integrate_line(integrand: Callable, spec: ContourSpec) -> QuadResult:
    """Integrate along Im z = imag_offset over |Re z| <= R, left to right.

    ``integrand`` must accept numpy arrays of complex points.  When the
    truncation radius is None it is chosen so that the certified tail bound
    of the declared growth class is below abs_tol / 10.
    """
    eta = spec.imag_offset
    if spec.truncation_radius is not None:
        radius = float(spec.truncation_radius)
        tail = (tail_bound(spec.growth, spec.weight_exponent, radius)
                if spec.growth is not None else 0.0)
    else:
        if spec.growth is None:
            raise ValueError("auto truncation radius requires a declared growth class")
        radius = auto_radius(spec.growth, spec.abs_tol, spec.weight_exponent)
        tail = tail_bound(spec.growth, spec.weight_exponent, radius)

    def g(x):
        return integrand(x + 1j * eta)

    max_panel = math.pi / spec.osc_freq if spec.osc_freq > 0 else None
    if max_panel is not None and radius / max_panel > 5e4:
        raise ConvergenceError("oscillation too fast for the requested radius")
    value, err, nodes = adaptive_interval(
        g, -radius, radius, spec.abs_tol, spec.max_subdivisions,
        breakpoints=_geometric_breakpoints(radius), max_panel=max_panel)
    return QuadResult(value, err, tail, nodes)


# ---------------------------------------------------------------------------
# boxes in R^n


def integrate_box(integrand: Callable, box, abs_tol: float = 1e-9,
                  max_points: int = 257) -> QuadResult:
    """Tensor-product Gauss-Legendre over a box, refined by point doubling.

    ``box`` is a sequence of per-axis radii R_i (axis i spans [-R_i, R_i]) or
    of explicit (lo, hi) pairs.  ``integrand`` receives an (N, n) array of
    points.  n <= 3.
    """
    axes = []
    for b in box:
        if np.isscalar(b):
            axes.append((-float(b), float(b)))
        else:
            axes.append((float(b[0]), float(b[1])))
    n = len(axes)
    if n < 1 or n > 3:
        raise DimensionError(f"box dimension {n} not supported (1 <= n <= 3)")
    prev = None
    m = 16
    nodes_used = 0
    while m <= max_points:
        grids = []
        for lo, hi in axes:
            x, w = np.polynomial.legendre.leggauss(m)
            mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
            grids.append((mid + half * x, half * w))
        mesh = np.meshgrid(*[g[0] for g in grids], indexing="ij")
        pts = np.stack([mm.ravel() for mm in mesh], axis=-1)
        wmesh = np.meshgrid(*[g[1] for g in grids], indexing="ij")
        weights = wmesh[0].ravel()
        for wm in wmesh[1:]:
            weights = weights * wm.ravel()
        vals = np.asarray(integrand(pts))
        nodes_used += pts.shape[0]
        cur = np.sum(weights * vals)
        if prev is not None:
            err = abs(cur - prev)
            if err <= abs_tol:
                return QuadResult(complex(cur), float(err), 0.0, nodes_used)
        prev = cur
        m *= 2
    raise ConvergenceError(f"box rule did not converge to abs_tol={abs_tol:g}")


# ---------------------------------------------------------------------------
# certified tails


def tail_bound(growth: GrowthClass, weight_exponent: float, radius: float) -> float:
    """Upper bound for the two discarded tails |x| > radius of a line integral
    of a function in the declared class against a weight |x|^weight_exponent.
    """
    if growth is None:
        raise ValueError("tail_bound requires a growth class")
    w = float(weight_exponent)
    r = float(radius)
    c = growth.constant
    if growth.kind == "exp_decay":
        d = growth.rate
        if w <= 0:
            return 2.0 * c * (1.0 + r) ** w * math.exp(-d * r) / d
        # int_R^inf x^w e^(-d x) dx = d^(-w-1) Gamma(w+1, d R)
        return 2.0 * c * d ** (-w - 1.0) * gamma_fn(w + 1.0) * gammaincc(w + 1.0, d * r)
    if growth.kind == "tempered":
        p = growth.gamma + w
        if p >= -1.0:
            raise DivergentTailError(
                f"tail exponent {p:g} >= -1: line integral tail diverges")
        return 2.0 * c * r ** (p + 1.0) / (-(p + 1.0))
    if growth.kind == "asymptotic":
        # conservative stand-in: rapid decay treated as the power that makes
        # the weighted tail O(1/R)
        surrogate = GrowthClass.tempered(-(w + 2.0), constant=c)
        return tail_bound(surrogate, w, r)
    raise DivergentTailError("infra-exponential growth has no convergent line tail")


# ---------------------------------------------------------------------------
# growth spot checks


@dataclass(frozen=True)
class GrowthReport:
    passed: bool
    claimed: GrowthClass
    worst_ratio: float
    failures: tuple  # (radius, |value|, envelope) triples


def verify_growth(e, claimed: GrowthClass, sample_radii=(5.0, 10.0, 20.0),
                  slack: float = 10.0) -> GrowthReport:
    """Spot-check a declared growth class on the real axis.

    ``e`` is an expression or any callable of a complex argument.  The check
    fails if |e| exceeds the claimed envelope by more than ``slack`` at any
    sampled radius.
    """
    fn = e if callable(e) else None
    if fn is None:
        raise TypeError("verify_growth needs a callable or expression")
    failures = []
    worst = 0.0
    for r in sample_radii:
        for x in (r, -r):
            v = abs(complex(np.asarray(fn(complex(x)))))
            env = claimed.envelope(abs(x))
            ratio = v / env if env > 0 else math.inf
            worst = max(worst, ratio)
            if ratio > slack:
                failures.append((x, v, env))
    return GrowthReport(passed=not failures, claimed=claimed,
                        worst_ratio=worst, failures=tuple(failures))
