"""Radon calculus on multidimensional inputs.

Inputs are restricted to two computable variants: rapidly decreasing smooth
functions given by expressions in x1..xn, and finite combinations of
derivative operators applied to shifted deltas.  The slice in a direction
omega is an ordinary one-dimensional hyperfunction in t, with defining
function G(omega, tau) = (-1/2 pi i) * integral of f(x) / (tau - omega.x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from . import expr as ex
from . import hyper as hy
from . import spectral as sp
from .growth import GrowthClass
from .hyper import Hyperfunction1D, TestFunction, TWO_PI_I, _leggauss
from .quad import DimensionError, integrate_box

__all__ = [
    "SmoothRapid", "PointSource", "DeltaCombo", "RadonSlice", "HomogeneousPoly",
    "radon_transform", "radon_via_fourier", "helgason_moment", "slice_moment",
    "radon_asymptotic_sum", "gevrey_probe", "support_check", "multi_indices",
]


def multi_indices(n: int, k: int):
    """All multi-indices alpha in N^n with |alpha| = k, lexicographic."""
    if n == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in multi_indices(n - 1, k - first):
            yield (first,) + rest


def _is_exact(x):
    return isinstance(x, (int, Fraction))


# ---------------------------------------------------------------------------
# input variants


@dataclass(frozen=True)
class SmoothRapid:
    """Rapidly decreasing smooth function given by an expression in x1..xn."""

    expr: ex.Expr
    dimension: int
    radius: float = 7.0  # quadrature box half-width per axis
    label: str = ""

    def __post_init__(self):
        if not 1 <= self.dimension <= 3:
            raise DimensionError(f"dimension {self.dimension} not supported")

    def __call__(self, pts):
        pts = np.asarray(pts, dtype=complex)
        env = {f"x{i + 1}": pts[..., i] for i in range(self.dimension)}
        return ex.evaluate(self.expr, env)


@dataclass(frozen=True)
class PointSource:
    """weight * J(D) delta(x - point) with J(D) = sum b_alpha D^alpha."""

    coefficients: Mapping[tuple, object]  # multi-index -> coefficient
    point: tuple
    weight: object = 1

    @property
    def exact(self):
        return (all(_is_exact(c) for c in self.coefficients.values())
                and all(_is_exact(p) for p in self.point) and _is_exact(self.weight))


@dataclass(frozen=True)
class DeltaCombo:
    sources: tuple  # of PointSource
    dimension: int
    label: str = ""

    def __post_init__(self):
        if not 1 <= self.dimension <= 3:
            raise DimensionError(f"dimension {self.dimension} not supported")


MultiDimFunction = Union[SmoothRapid, DeltaCombo]


@dataclass(frozen=True)
class RadonSlice:
    omega: tuple
    hyper: Hyperfunction1D
    label: str = ""


@dataclass(frozen=True)
class HomogeneousPoly:
    """Homogeneous polynomial of the given degree over multi-indices."""

    degree: int
    coefficients: Mapping[tuple, object]

    def __post_init__(self):
        for alpha in self.coefficients:
            if sum(alpha) != self.degree:
                raise ValueError(f"index {alpha} is not of degree {self.degree}")

    def __call__(self, omega):
        total = 0
        for alpha, c in self.coefficients.items():
            term = c
            for a, w in zip(alpha, omega):
                term = term * w ** a
            total = total + term
        return total

    def parity_value(self):
        return (-1) ** self.degree


def _orthonormal_frame(omega):
    """Rows: omega followed by an orthonormal basis of its complement."""
    omega = np.asarray(omega, dtype=float)
    n = len(omega)
    frame = [omega]
    for i in np.argsort(np.abs(omega)):
        if len(frame) == n:
            break
        cand = np.zeros(n)
        cand[i] = 1.0
        for prev in frame:
            cand = cand - np.dot(cand, prev) * prev
        norm = np.linalg.norm(cand)
        if norm > 1e-8:
            frame.append(cand / norm)
    return [tuple(v) for v in frame]


def _check_unit(omega):
    omega = tuple(float(w) for w in omega)
    norm = math.sqrt(sum(w * w for w in omega))
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"direction must be a unit vector (|omega| = {norm:g})")
    return omega


# ---------------------------------------------------------------------------
# box grids shared by the quadrature-backed routes


def _tensor_grid(radius: float, n: int, panels: int, deg: int = 8):
    nodes, wts = _leggauss(deg)
    edges = np.linspace(-radius, radius, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    axis = (mid[:, None] + half * nodes[None, :]).ravel()
    aw = np.tile(half * wts, panels)
    mesh = np.meshgrid(*([axis] * n), indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=-1)
    wmesh = np.meshgrid(*([aw] * n), indexing="ij")
    w = wmesh[0].ravel()
    for wm in wmesh[1:]:
        w = w * wm.ravel()
    return pts, w


def _composite_axis(extent: float, panels: int, deg: int = 8):
    nodes, wts = _leggauss(deg)
    edges = np.linspace(-extent, extent, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    axis = (mid[:, None] + half * nodes[None, :]).ravel()
    return axis, np.tile(half * wts, panels)


def _projection(f, omega, frame, u_axis, trans_panels):
    """p(u) = integral of f over the hyperplane omega.x = u."""
    n = f.dimension
    if n == 1:
        return np.asarray(f(u_axis[:, None]))
    extent = f.radius * math.sqrt(n)
    vpts, vw = _tensor_grid(extent, n - 1, trans_panels)
    tang = np.asarray(frame[1:])  # (n-1, n)
    shifted = vpts @ tang  # (Nv, n)
    pts = u_axis[:, None, None] * np.asarray(omega)[None, None, :] \
        + shifted[None, :, :]
    vals = np.asarray(f(pts.reshape(-1, n))).reshape(len(u_axis), -1)
    return vals @ vw


# ---------------------------------------------------------------------------
# the transform


def _delta_combo_slice(f: DeltaCombo, omega) -> Hyperfunction1D:
    """J(omega D_t) delta(t - a.omega) summed over sources, symbolically."""
    total = ex._ZERO
    supports = set()
    for src in f.sources:
        t0 = sum(float(p) * o for p, o in zip(src.point, omega))
        supports.add(round(t0, 12))
        for alpha, b in src.coefficients.items():
            m = sum(alpha)
            c = complex(src.weight) * complex(b)
            for a, o in zip(alpha, omega):
                c *= o ** a
            amp = c * (-1.0 / TWO_PI_I) * (-1.0) ** m * math.factorial(m)
            base = ex.Var("z") if t0 == 0 else ex.Sub(ex.Var("z"), ex.Const(complex(t0)))
            total = ex.Add(total, ex.Div(ex.Const(complex(amp)), ex.Pow(base, m + 1)))
    if len(supports) > 1:
        raise NotImplementedError(
            "sources with distinct projected supports need one slice per point")
    total = ex.simplify(total)
    return Hyperfunction1D(
        f_plus=total, f_minus=total, strip_plus=math.inf, strip_minus=math.inf,
        growth=GrowthClass.tempered(-1.0), point_support=supports.pop(),
        label=f"radon({f.label})")


def radon_transform(f: MultiDimFunction, omega, abs_tol: float = 1e-9) -> RadonSlice:
    """Slice hyperfunction of f in direction omega."""
    omega = _check_unit(omega)
    if isinstance(f, DeltaCombo):
        return RadonSlice(omega=omega, hyper=_delta_combo_slice(f, omega),
                          label=f.label)

    n = f.dimension
    frame = _orthonormal_frame(omega)
    extent = f.radius * math.sqrt(n)
    state = {"u_panels": 16, "trans_panels": 12, "cache": {}}

    def weighted_projection(u_panels, trans_panels):
        key = (u_panels, trans_panels)
        if key not in state["cache"]:
            u_axis, uw = _composite_axis(extent, u_panels)
            pv = _projection(f, omega, frame, u_axis, trans_panels) * uw
            state["cache"][key] = (u_axis, pv)
        return state["cache"][key]

    def G(tau):
        taus = np.atleast_1d(np.asarray(tau, dtype=complex))
        eta = float(np.min(np.abs(taus.imag)))
        if eta <= 0:
            raise ValueError("defining function evaluated on the real axis")
        up, tp = state["u_panels"], state["trans_panels"]
        # once a resolution has converged it is trusted for contours at
        # least as far from the axis
        if state.get("eta_ok") is not None and eta >= state["eta_ok"]:
            u_axis, pv = weighted_projection(up, tp)
            cur = (-1.0 / TWO_PI_I) * \
                (pv[None, :] / (taus[:, None] - u_axis[None, :])).sum(axis=1)
            return cur if np.ndim(tau) else cur[0]
        prev = None
        while True:
            u_axis, pv = weighted_projection(up, tp)
            cur = (-1.0 / TWO_PI_I) * \
                (pv[None, :] / (taus[:, None] - u_axis[None, :])).sum(axis=1)
            if prev is not None and np.max(np.abs(cur - prev)) <= abs_tol:
                state["u_panels"], state["trans_panels"] = up, tp
                state["eta_ok"] = min(eta, state.get("eta_ok") or math.inf)
                break
            if up >= 2048:
                break
            prev = cur
            up *= 2
            tp = min(48, tp * 2)
        return cur if np.ndim(tau) else cur[0]

    slice_hyper = Hyperfunction1D(
        f_plus=G, f_minus=G, strip_plus=math.inf, strip_minus=math.inf,
        growth=GrowthClass.tempered(-1.0), tail_gain=1,
        label=f"radon({f.label})")
    return RadonSlice(omega=omega, hyper=slice_hyper, label=f.label)


def multidim_fourier_ray(f: MultiDimFunction, omega) -> sp.SmoothField:
    """rho -> hat f(rho omega), the Fourier-slice ray."""
    omega = _check_unit(omega)
    if isinstance(f, DeltaCombo):
        def hat(rho, order=0):
            if order != 0:
                raise NotImplementedError("ray fields expose only order 0")
            rho = np.asarray(rho, dtype=float)
            total = np.zeros(np.shape(rho), dtype=complex)
            for src in f.sources:
                adot = sum(float(p) * o for p, o in zip(src.point, omega))
                phase = np.exp(-1j * rho * adot)
                for alpha, b in src.coefficients.items():
                    c = complex(src.weight) * complex(b)
                    for a, o in zip(alpha, omega):
                        c *= o ** a
                    total = total + c * (1j * rho) ** sum(alpha) * phase
            return total

        return sp.SmoothField(hat, growth=GrowthClass.infra_exponential(),
                              cheap=True, label=f"ray({f.label})")

    n = f.dimension
    frame = _orthonormal_frame(omega)
    extent = f.radius * math.sqrt(n)

    def table(rhos):
        rhos = np.asarray(rhos, dtype=float)
        peak = max(1.0, float(np.max(np.abs(rhos))))
        u_panels = max(12, int(1.2 * extent * peak / math.pi) + 1)
        trans_panels = 12
        prev = None
        while True:
            u_axis, uw = _composite_axis(extent, u_panels)
            pv = _projection(f, omega, frame, u_axis, trans_panels) * uw
            out = np.empty(rhos.shape, dtype=complex)
            flat = rhos.ravel()
            for start in range(0, flat.size, 512):
                chunk = flat[start:start + 512]
                out.ravel()[start:start + 512] = \
                    np.exp(-1j * np.multiply.outer(chunk, u_axis)) @ pv
            if prev is not None and np.max(np.abs(out - prev)) <= 1e-10:
                break
            if u_panels >= 4096:
                break
            prev = out
            u_panels *= 2
            trans_panels = min(48, trans_panels * 2)
        return out

    def hat(rho, order=0):
        if order != 0:
            raise NotImplementedError("ray fields expose only order 0")
        arr = np.asarray(rho, dtype=float)
        return table(np.atleast_1d(arr))[0] if not arr.ndim else table(arr)

    v0 = abs(complex(np.asarray(hat(0.0))))
    samples = [abs(complex(np.asarray(hat(r)))) for r in (4.0, 8.0)]
    rate = 0.25
    if samples[0] > 1e-300 and samples[1] > 1e-300:
        rate = max(0.05, min(2.0, math.log(samples[0] / samples[1]) / 4.0))
    return sp.SmoothField(hat, table=table, label=f"ray({f.label})",
                          growth=GrowthClass.exp_decay(rate, constant=10.0 * (v0 + 1.0)))


def radon_via_fourier(f: MultiDimFunction, omega, label: str = "") -> Hyperfunction1D:
    """Slice through the Fourier route: (1/2 pi) int hat f(rho omega) e^(i rho t)."""
    ray = multidim_fourier_ray(f, omega)
    return sp.inverse_fourier(ray, label=label or f"radonF({getattr(f, 'label', '')})")


# ---------------------------------------------------------------------------
# moments of f and of its slices


def multidim_moment(f: MultiDimFunction, alpha, abs_tol: float = 1e-10):
    """mu^alpha(f) = integral of x^alpha f; symbolic for delta combinations."""
    if isinstance(f, DeltaCombo):
        exact = all(src.exact for src in f.sources)
        total = Fraction(0) if exact else 0j
        for src in f.sources:
            for beta, b in src.coefficients.items():
                if any(bi > ai for bi, ai in zip(beta, alpha)):
                    continue
                term = src.weight * b * (-1) ** sum(beta)
                for ai, bi, pi in zip(alpha, beta, src.point):
                    falling = Fraction(math.factorial(ai), math.factorial(ai - bi))
                    term = term * (falling if exact else float(falling))
                    term = term * pi ** (ai - bi)
                total = total + term
        return total

    def integrand(pts):
        vals = np.asarray(f(pts))
        for i, a in enumerate(alpha):
            if a:
                vals = vals * pts[:, i] ** a
        return vals

    res = integrate_box(integrand, [f.radius] * f.dimension, abs_tol=abs_tol)
    return res.value


def helgason_moment(f: MultiDimFunction, k: int, cap: int = 8) -> HomogeneousPoly:
    """p^k(omega) = k! sum_{|alpha|=k} mu^alpha(f) / alpha! * omega^alpha."""
    if k > cap:
        raise ValueError(f"degree {k} above the configured cap {cap}")
    n = f.dimension
    coeffs = {}
    for alpha in multi_indices(n, k):
        mu = multidim_moment(f, alpha)
        fac = 1
        for a in alpha:
            fac *= math.factorial(a)
        c = mu * Fraction(math.factorial(k), fac) if _is_exact(mu) \
            else mu * (math.factorial(k) / fac)
        coeffs[alpha] = c
    return HomogeneousPoly(degree=k, coefficients=coeffs)


def slice_moment(f: MultiDimFunction, omega, k: int):
    """k-th t-moment of the slice, via the plane-integral identity
    mu^k(Rf(omega, .)) = integral of (omega.x)^k f(x) dx."""
    omega = _check_unit(omega)
    if isinstance(f, DeltaCombo):
        return _slice_moment_delta(f, omega, k)

    def integrand(pts):
        u = pts @ np.asarray(omega)
        return np.asarray(f(pts)) * u ** k

    res = integrate_box(integrand, [f.radius] * f.dimension, abs_tol=1e-10)
    return res.value


def _slice_moment_delta(f: DeltaCombo, omega, k: int) -> complex:
    total = 0j
    for src in f.sources:
        adot = sum(float(p) * o for p, o in zip(src.point, omega))
        for alpha, b in src.coefficients.items():
            m = sum(alpha)
            if m > k:
                continue
            c = complex(src.weight) * complex(b)
            for a, o in zip(alpha, omega):
                c *= o ** a
            # mu^k(delta^(m)(. - c)) = (-1)^m k!/(k-m)! c^(k-m)
            total += c * (-1.0) ** m * math.factorial(k) / math.factorial(k - m) \
                * adot ** (k - m)
    return total


# ---------------------------------------------------------------------------
# the Radon asymptotic expansion


@dataclass(frozen=True)
class RadonExpansion:
    order: int
    polys: tuple  # HomogeneousPoly for k = 0..N

    def coefficient(self, k: int, omega):
        """Coefficient of delta^(k)(t) in the expansion: (-1)^k p^k(omega)/k!."""
        val = self.polys[k](omega)
        if _is_exact(val):
            return val * Fraction((-1) ** k, math.factorial(k))
        return complex(val) * (-1.0) ** k / math.factorial(k)


def radon_asymptotic_sum(f: MultiDimFunction, N: int) -> RadonExpansion:
    return RadonExpansion(order=N,
                          polys=tuple(helgason_moment(f, k) for k in range(N + 1)))


def example_point_coefficient(src: PointSource, omega, k: int):
    """Closed-form expansion coefficient of delta^(k)(t) for one point source:
    sum over |alpha| <= k of (-1)^(k-|alpha|)/(k-|alpha|)! b_alpha omega^alpha
    (a.omega)^(k-|alpha|)."""
    adot = 0
    for p, o in zip(src.point, omega):
        adot = adot + p * o
    total = 0
    for alpha, b in src.coefficients.items():
        m = sum(alpha)
        if m > k:
            continue
        term = src.weight * b
        for a, o in zip(alpha, omega):
            term = term * o ** a
        j = k - m
        sign = (-1) ** j
        if _is_exact(term) and _is_exact(adot):
            term = term * Fraction(sign, math.factorial(j)) * adot ** j
        else:
            term = term * sign / math.factorial(j) * adot ** j
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Gevrey probe


_FD_STENCILS = {
    0: ((0, 1.0),),
    1: ((-1, -0.5), (1, 0.5)),
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    3: ((-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)),
    4: ((-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)),
}


def defining_function_value(f: MultiDimFunction, omega, tau: complex) -> complex:
    """G(omega, tau) off the real axis."""
    omega = _check_unit(omega)
    if isinstance(f, DeltaCombo):
        total = 0j
        for src in f.sources:
            adot = sum(float(p) * o for p, o in zip(src.point, omega))
            for alpha, b in src.coefficients.items():
                m = sum(alpha)
                c = complex(src.weight) * complex(b)
                for a, o in zip(alpha, omega):
                    c *= o ** a
                total += c * (-1.0 / TWO_PI_I) * (-1.0) ** m * math.factorial(m) \
                    / (tau - adot) ** (m + 1)
        return total
    sl = radon_transform(f, omega)
    return complex(np.asarray(sl.hyper.plus(np.array([tau]))[0]))


@dataclass(frozen=True)
class GevreyFit:
    C: float
    v: float
    derivative_magnitudes: tuple
    envelope_ok: bool
    negligible: bool
    residual: float = 0.0


def gevrey_probe(f: MultiDimFunction, omega0, tau0: complex, max_order: int = 4,
                 h: float = 0.2) -> GevreyFit:
    """Tangential omega-derivatives of G at (omega0, tau0) by finite
    differences on the sphere, fitted against C (m!)^2 / v^m."""
    if max_order > 4:
        raise ValueError("max_order above 4 is not supported (differencing noise)")
    omega0 = np.asarray(_check_unit(omega0))
    n = len(omega0)
    # unit tangent: rotate the axis least aligned with omega0 into the
    # orthogonal complement
    base = np.zeros(n)
    base[int(np.argmin(np.abs(omega0)))] = 1.0
    tangent = base - np.dot(base, omega0) * omega0
    tangent /= np.linalg.norm(tangent)

    def g(theta):
        w = math.cos(theta) * omega0 + math.sin(theta) * tangent
        return defining_function_value(f, tuple(w), tau0)

    mags = []
    for m in range(max_order + 1):
        acc = 0j
        for off, coef in _FD_STENCILS[m]:
            acc += coef * g(off * h)
        mags.append(abs(acc) / h ** m)
    g0 = max(abs(g(0.0)), 1e-30)
    if all(v <= 1e-8 * g0 for v in mags[1:]):
        # tangential variation below differencing noise (radial inputs)
        return GevreyFit(C=g0, v=1.0, derivative_magnitudes=tuple(mags),
                         envelope_ok=True, negligible=True, residual=0.0)
    rows, rhs = [], []
    for m, val in enumerate(mags):
        if val <= 0:
            continue
        rows.append([1.0, -float(m)])
        rhs.append(math.log(val) - 2.0 * math.log(math.factorial(m)))
    A, b = np.asarray(rows), np.asarray(rhs)
    sol, *_ = np.linalg.lstsq(A, b, rcond=None)
    residual = float(np.max(np.abs(A @ sol - b))) if len(b) else 0.0
    v = math.exp(sol[1])
    # inflate the constant so the fitted envelope majorizes every probed order
    C = max(math.exp(sol[0]),
            max(mag * v ** m / math.factorial(m) ** 2
                for m, mag in enumerate(mags)))
    ok = all(mag <= C * math.factorial(m) ** 2 / v ** m * (1.0 + 1e-12)
             for m, mag in enumerate(mags))
    return GevreyFit(C=C, v=v, derivative_magnitudes=tuple(mags),
                     envelope_ok=ok, negligible=False, residual=residual)


# ---------------------------------------------------------------------------
# support from moments


@dataclass(frozen=True)
class SupportReport:
    passed: dict
    rate: Optional[float]
    diagnosis: str
    sums: tuple  # (q, |Sigma(q)|, certified truncation tail)
    residual: float = 0.0


def _exp_remainder(x: float, K: int) -> float:
    """e^x minus its first K Taylor terms, evaluated stably."""
    if K <= 0:
        return math.exp(x)
    term = x ** K / math.factorial(K)
    acc, k = 0.0, K
    while term > acc * 1e-18 + 1e-320 and k < K + 500:
        acc += term
        k += 1
        term *= x / k
    return acc


def support_check(moments, S: float, eps_list: Sequence[float] = (1e-3, 0.1, 0.5),
                  q_max: int = 12, bound: Optional[tuple] = None) -> SupportReport:
    """Sub-exponential growth test of Sigma(q) = sum mu^k/k! (1/2S)(-pi i q/S)^k.

    A declared bound |mu^k| <= M R^k certifies the truncation tail; fitting
    is restricted to the q whose certified tail is negligible.  Without a
    bound the supplied sequence is treated as the complete series (all later
    moments zero) and must itself pass a ratio test.
    """
    if isinstance(moments, sp.MomentSequence):
        bound = bound or moments.bound
        values = list(moments.values)
    else:
        values = list(moments)
    if S <= 0:
        raise ValueError("support radius S must be positive")
    if bound is not None:
        M, R = bound
        for k, mu in enumerate(values):
            if abs(mu) > M * R ** k * (1.0 + 1e-9):
                raise ValueError(
                    f"declared moment bound violated at k={k}: |mu|={abs(mu):g} "
                    f"> {M * R ** k:g}")
    else:
        x_max = math.pi * q_max / S
        terms = [abs(values[k]) / math.factorial(k) * x_max ** k
                 for k in range(len(values))]
        growing = [b > a for a, b in zip(terms, terms[1:]) if a > 0]
        if len(growing) >= 3 and all(growing[-3:]) and terms[-1] > terms[0]:
            return SupportReport(passed={float(e): False for e in eps_list},
                                 rate=None, sums=(),
                                 diagnosis="series diverges (ratio test on terms)")
    sums = []
    for q in range(1, q_max + 1):
        z = -1j * math.pi * q / S
        acc = 0j
        for k, mu in enumerate(values):
            acc += complex(mu) / math.factorial(k) * z ** k
        total = acc / (2.0 * S)
        tail = 0.0
        if bound is not None:
            M, R = bound
            tail = M * _exp_remainder(R * math.pi * q / S, len(values)) / (2.0 * S)
        sums.append((q, abs(total), tail))
    scale = max(1e-300, max(v for _, v, _ in sums))
    usable = [(q, v) for q, v, t in sums if t <= 1e-8 * max(v, 1e-3 * scale)]
    if len(usable) < 5:
        raise ValueError(
            "certified truncation tails dominate the series on this q range; "
            "supply more moments or reduce q_max")
    qs = np.array([q for q, _ in usable], dtype=float)
    vals = np.log(np.array([max(v, 1e-300) for _, v in usable]))
    coefs = np.polyfit(qs, vals, 1)
    rate = max(float(coefs[0]), 0.0)
    residual = float(np.max(np.abs(np.polyval(coefs, qs) - vals)))
    passed = {float(e): rate <= float(e) + 1e-12 for e in eps_list}
    return SupportReport(passed=passed, rate=rate, diagnosis="ok",
                         sums=tuple(sums), residual=residual)
