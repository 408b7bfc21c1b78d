"""Brute-force evaluation of the singular integrals, independent of the
closed forms in kernel.py.

Principal value.  pv_integral computes

    PV int_{-1}^{1} sqrt(1-t^2) psi(t) / (t - x) dt

by literal symmetric exclusion: integrate over [-1, x-eps] and [x+eps, 1]
for each eps in a decreasing sequence, then extrapolate eps -> 0.  Each
truncated integral is done in theta = arccos t, which turns the endpoint
weight sqrt(1-t^2) into the smooth factor sin(theta)^2 and leaves a
simple pole at theta_x = arccos x; panels are graded geometrically away
from the excluded point (width ~ distance to the pole) with a fixed
Gauss-Legendre rule per panel, so each truncated integral is accurate to
near machine precision.  The exclusion defect of a symmetric cut expands
in odd powers of eps (2 eps g'(x) + O(eps^3) for smooth g), so the
extrapolation table eliminates eps^1, eps^3, eps^5, ... in turn.

Finite part, order 2.  fp_integral_order2 evaluates the defining bracket
verbatim for a function u with u(+-1) = 0:

    int_{-1}^{x-eps} u/(t-x)^2 + int_{x+eps}^{1} u/(t-x)^2
        - [u(x+eps) + u(x-eps)] / eps,

extrapolated the same way (the defect is -2 eps u''(x) + O(eps^3)).

Higher order.  fp_integral_ordern takes the smooth factor psi (same
convention as pv_integral, weight applied internally) and returns the raw
(n-1)-th x-derivative of the principal-value integral, computed with
order-4 central differences (Fornberg weights) at step FD_STEP, with one
step-halving as an internal error estimate.  Callers that want the order-n
finite part of sqrt(1-t^2) psi divide by (n-1)! themselves.

Chebyshev helpers supply a second ground truth that shares nothing with
the closed-form moments: with psi = U_k (second kind), the principal
value equals -pi T_{k+1}(x) (first kind), both generated here by the
three-term recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import acos, pi

import numpy as np

PV_GUARD = 0.9  # pv/fp2 evaluation points must satisfy |x| <= PV_GUARD
FD_GUARD = 0.8  # extra margin so difference stencils stay inside PV_GUARD
FD_STEP = 1e-2  # central-difference step; noise grows like h^-(n-1) below this

_DEFAULT_EPS = tuple(1e-2 * 0.5**k for k in range(6))


@dataclass(frozen=True)
class QuadConfig:
    """Knobs for the exclusion quadrature.

    epsilon_sequence: strictly decreasing exclusion radii (geometric by
    default); panel_points: Gauss-Legendre nodes per panel;
    extrapolation_order: number of eliminated error powers (1, 3, 5, ...).
    """

    epsilon_sequence: tuple[float, ...] = _DEFAULT_EPS
    panel_points: int = 20
    extrapolation_order: int = 3

    def __post_init__(self):
        eps = tuple(float(e) for e in self.epsilon_sequence)
        object.__setattr__(self, "epsilon_sequence", eps)
        if not eps or any(e <= 0.0 for e in eps):
            raise ValueError("epsilon_sequence must be nonempty and positive")
        if any(b >= a for a, b in zip(eps, eps[1:])):
            raise ValueError("epsilon_sequence must be strictly decreasing")
        if self.panel_points < 2:
            raise ValueError("panel_points must be >= 2")
        if self.extrapolation_order < 1:
            raise ValueError("extrapolation_order must be >= 1")


@lru_cache(maxsize=32)
def _gauss_rule(npts: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(npts)


def _as_grid_fn(fn):
    """Adapt a float function so it maps ndarray -> ndarray."""

    def call(ts: np.ndarray) -> np.ndarray:
        try:
            out = np.asarray(fn(ts), dtype=float)
        except (TypeError, ValueError):
            out = None
        if out is None or out.shape != ts.shape:
            out = np.asarray([float(fn(t)) for t in ts], dtype=float)
        return out

    return call


def _graded_offsets(span: float, start: float) -> list[float]:
    """Panel edges on [0, span] with widths doubling away from 0."""
    edges = [0.0]
    step = min(start, span)
    while edges[-1] + step < span:
        edges.append(edges[-1] + step)
        step *= 2.0
    edges.append(span)
    return edges


def _integrate_graded(F, lo: float, hi: float, near: float, graded_low: bool, npts: int) -> float:
    """Gauss-Legendre over [lo, hi] with panels graded toward the end that
    sits at distance `near` from the pole."""
    span = hi - lo
    if span <= 0.0:
        return 0.0
    offsets = _graded_offsets(span, max(near, 1e-300))
    xs, ws = _gauss_rule(npts)
    total = 0.0
    for a_off, b_off in zip(offsets, offsets[1:]):
        if graded_low:
            a, b = lo + a_off, lo + b_off
        else:
            a, b = hi - b_off, hi - a_off
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        vals = F(mid + half * xs)
        if not np.all(np.isfinite(vals)):
            raise ValueError("non-finite integrand sample")
        total += half * float(np.dot(ws, vals))
    return total


def _extrapolate(values: list[float], eps: tuple[float, ...], levels: int) -> float:
    """Eliminate eps^1, eps^3, eps^5, ... from the bracket values."""
    vals = list(values)
    es = list(eps)
    power = 1
    for _ in range(min(levels, len(vals) - 1)):
        nxt = []
        for i in range(len(vals) - 1):
            w = es[i + 1] ** power / (es[i] ** power - es[i + 1] ** power)
            nxt.append(vals[i + 1] + (vals[i + 1] - vals[i]) * w)
        vals = nxt
        es = es[1:]
        power += 2
    return vals[-1]


def _check_point(x: float, cfg: QuadConfig) -> float:
    x = float(x)
    if abs(x) > PV_GUARD:
        raise ValueError(f"evaluation point must satisfy |x| <= {PV_GUARD}")
    if cfg.epsilon_sequence[0] >= 1.0 - abs(x):
        raise ValueError("largest epsilon reaches the interval endpoint")
    return x


def pv_integral(psi, x: float, cfg: QuadConfig | None = None) -> float:
    """PV integral of sqrt(1-t^2) psi(t)/(t - x) over (-1, 1) at |x| <= 0.9."""
    cfg = cfg or QuadConfig()
    x = _check_point(x, cfg)
    fn = _as_grid_fn(psi)
    theta_x = acos(x)

    def F(theta: np.ndarray) -> np.ndarray:
        c = np.cos(theta)
        s = np.sin(theta)
        return s * s * fn(c) / (c - x)

    vals = []
    for e in cfg.epsilon_sequence:
        th_left = acos(x - e)  # left region [th_left, pi], pole below
        th_right = acos(x + e)  # right region [0, th_right], pole above
        left = _integrate_graded(F, th_left, pi, th_left - theta_x, True, cfg.panel_points)
        right = _integrate_graded(F, 0.0, th_right, theta_x - th_right, False, cfg.panel_points)
        vals.append(left + right)
    return _extrapolate(vals, cfg.epsilon_sequence, cfg.extrapolation_order)


def fp_integral_order2(u, x: float, cfg: QuadConfig | None = None) -> float:
    """Order-2 finite part of u(t)/(t-x)^2 over (-1, 1), by the defining
    epsilon-bracket; u must vanish at t = +-1."""
    cfg = cfg or QuadConfig()
    x = _check_point(x, cfg)
    fn = _as_grid_fn(u)
    theta_x = acos(x)

    def F(theta: np.ndarray) -> np.ndarray:
        c = np.cos(theta)
        d = c - x
        return np.sin(theta) * fn(c) / (d * d)

    vals = []
    for e in cfg.epsilon_sequence:
        th_left = acos(x - e)
        th_right = acos(x + e)
        left = _integrate_graded(F, th_left, pi, th_left - theta_x, True, cfg.panel_points)
        right = _integrate_graded(F, 0.0, th_right, theta_x - th_right, False, cfg.panel_points)
        boundary = fn(np.array([x + e, x - e]))
        if not np.all(np.isfinite(boundary)):
            raise ValueError("non-finite integrand sample")
        vals.append(left + right - float(boundary[0] + boundary[1]) / e)
    return _extrapolate(vals, cfg.epsilon_sequence, cfg.extrapolation_order)


def fp_integral_ordern(
    psi, x: float, n: int, cfg: QuadConfig | None = None, return_estimate: bool = False
):
    """Raw (n-1)-th x-derivative of the PV integral of sqrt(1-t^2) psi(t)/(t-x),
    for 2 <= n <= 5 and |x| <= 0.8; callers apply their own 1/(n-1)! etc.

    With return_estimate=True, also returns |value - value_at_halved_step|.
    """
    if not isinstance(n, int) or not 2 <= n <= 5:
        raise ValueError("n must be an integer in 2..5")
    cfg = cfg or QuadConfig()
    x = float(x)
    if abs(x) > FD_GUARD:
        raise ValueError(f"evaluation point must satisfy |x| <= {FD_GUARD}")
    order = n - 1
    half_width = 2 if order <= 2 else 3

    def derivative(h: float) -> float:
        if abs(x) + half_width * h > PV_GUARD:
            raise ValueError("difference stencil exits the PV guard band")
        pts = [x + k * h for k in range(-half_width, half_width + 1)]
        wts = _fd_weights(x, pts, order)
        return float(sum(w * pv_integral(psi, p, cfg) for w, p in zip(wts, pts)))

    value = derivative(FD_STEP)
    estimate = abs(value - derivative(FD_STEP / 2.0))
    return (value, estimate) if return_estimate else value


def _fd_weights(z: float, xs: list[float], m: int) -> np.ndarray:
    """Fornberg weights for the m-th derivative at z on nodes xs."""
    n = len(xs)
    c = np.zeros((n, m + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = xs[0] - z
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = xs[i] - z
        for j in range(i):
            c3 = xs[i] - xs[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m].copy()


def chebyshev_T(k: int):
    """First-kind Chebyshev polynomial of degree k as a float function."""
    return _chebyshev(k, second_kind=False)


def chebyshev_U(k: int):
    """Second-kind Chebyshev polynomial of degree k as a float function."""
    return _chebyshev(k, second_kind=True)


def _chebyshev(k: int, second_kind: bool):
    if k < 0:
        raise ValueError("k must be >= 0")

    def f(x):
        arr = np.asarray(x, dtype=float)
        cur = np.ones_like(arr)
        nxt = 2.0 * arr if second_kind else arr.copy()
        for _ in range(k):
            cur, nxt = nxt, 2.0 * arr * nxt - cur
        return float(cur) if arr.ndim == 0 else cur

    return f
