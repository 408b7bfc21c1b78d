"""Closed-form machinery for the weighted singular kernel on (-1, 1).

`pv_moment(j)` is the principal-value integral

    PV int_{-1}^{1} sqrt(1-t^2) t^j / (t - x) dt
      = -pi x^{j+1} + sum_{i=0}^{j-1} g_i x^{j-i-1},

an exact polynomial in x of degree j+1 with leading coefficient -pi.
The correction coefficients g_i = (1+(-1)^i)/4 * G(1/2) G((i+1)/2) / G((i+4)/2)
vanish for odd i; for even i the two sqrt(pi) factors from the
half-integer Gamma values pair into a single pi, so g_i is an exact
rational multiple of pi and everything stays inside Q(pi).  The Gamma
values are generated by the recurrence G(z+1) = z G(z) from G(1/2) and
G(1), never by a floating Gamma function: exactness here is what makes
the solver's zero-residual certificate meaningful.

`FinitePartOperator(n, alpha)` applies the integral term of the
second-kind equation to a polynomial exactly:

    apply(psi) = alpha / (pi (n-1)!) * d^{n-1}/dx^{n-1} [ sum_j c_j pv_moment(j) ]

for psi = sum_j c_j x^j.  With this sign convention the solved equation
reads psi = f + apply(psi), and residual(f, psi) = psi - f - apply(psi)
is identically zero exactly when psi solves it.  Degree law:
deg apply(psi) = deg psi - n + 2 when deg psi >= n - 2 (it may vanish or
drop further otherwise), so the operator preserves degree for n = 2 and
strictly lowers it for n >= 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .poly import Poly
from .scalars import PI, Scalar


@lru_cache(maxsize=None)
def _half_gamma(two_z: int) -> tuple[Fraction, bool]:
    """Gamma(two_z/2) as (rational, carries_sqrt_pi), for two_z >= 1."""
    if two_z == 1:
        return Fraction(1), True
    if two_z == 2:
        return Fraction(1), False
    c, root = _half_gamma(two_z - 2)
    return c * Fraction(two_z - 2, 2), root


@lru_cache(maxsize=None)
def gamma_ratio(i: int) -> Scalar:
    """Moment correction coefficient g_i: zero for odd i, else a rational
    multiple of pi."""
    if i < 0:
        raise ValueError("i must be >= 0")
    if i % 2:
        return Scalar(0)
    c1, r1 = _half_gamma(1)
    c2, r2 = _half_gamma(i + 1)
    c3, r3 = _half_gamma(i + 4)
    # even i: sqrt(pi) factors come exactly from G(1/2) and G((i+1)/2)
    assert r1 and r2 and not r3
    return PI * (c1 * c2 / (2 * c3))


@lru_cache(maxsize=None)
def pv_moment(j: int) -> Poly:
    """Exact PV integral of sqrt(1-t^2) t^j / (t - x) as a Poly in x."""
    if j < 0:
        raise ValueError("j must be >= 0")
    coeffs = [Scalar(0)] * (j + 2)
    coeffs[j + 1] = -PI
    for i in range(0, j, 2):  # odd i contribute nothing
        coeffs[j - i - 1] = gamma_ratio(i)
    return Poly(coeffs)


@dataclass(frozen=True)
class FinitePartOperator:
    """Order-n finite-part integral term with strength alpha > 0, acting
    exactly on polynomials."""

    n: int
    alpha: Scalar

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 2:
            raise ValueError("singularity order n must be an integer >= 2")
        alpha = Scalar._coerce(self.alpha)
        if alpha is None:
            raise ValueError("alpha must be a Scalar, int, or Fraction")
        object.__setattr__(self, "alpha", alpha)
        if alpha.to_float() <= 0.0:
            raise ValueError("alpha must be positive")

    def apply(self, psi: Poly) -> Poly:
        acc = Poly()
        for j, c in enumerate(psi.coeffs):
            if c:
                acc = acc + pv_moment(j) * c
        acc = acc.derivative(self.n - 1)
        return acc * (self.alpha / (PI * factorial(self.n - 1)))

    def residual(self, f: Poly, psi: Poly) -> Poly:
        """psi - f - apply(psi); the zero polynomial certifies a solution."""
        return psi - f - self.apply(psi)


@dataclass(frozen=True)
class WeightedSolution:
    """Full solution u(x) = sqrt(1-x^2) * psi(x).

    The weight vanishes at x = +-1, so endpoint values are exactly 0.0
    regardless of psi.  Callable on floats or numpy arrays in [-1, 1].
    """

    psi: Poly

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        w = np.sqrt(np.clip(1.0 - arr * arr, 0.0, None))
        vals = w * self.psi.eval_float(arr)
        return float(vals) if arr.ndim == 0 else vals

    def describe(self) -> str:
        return f"sqrt(1-x^2) * ({self.psi})"
