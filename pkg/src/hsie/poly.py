"""Dense univariate polynomials in x over the exact Q(pi) scalars.

These carry the polynomial forcing term, the perturbation-series terms,
and the closed-form singular moments, so all coefficient arithmetic is
exact; floats appear only in `eval_float`.  Coefficients are indexed by
power with trailing zeros trimmed, and the zero polynomial is the empty
tuple (degree -1).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .scalars import Scalar

_CoeffLike = Union[Scalar, int, Fraction]


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[_CoeffLike] = ()):
        cs = [c if isinstance(c, Scalar) else Scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, coeff: _CoeffLike, power: int) -> "Poly":
        if power < 0:
            raise ValueError("power must be >= 0")
        return cls([0] * power + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Scalar(0)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not self.coeffs or not other.coeffs:
                return Poly()
            out = [Scalar(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, ca in enumerate(self.coeffs):
                if ca:
                    for j, cb in enumerate(other.coeffs):
                        out[i + j] = out[i + j] + ca * cb
            return Poly(out)
        s = Scalar._coerce(other)
        if s is None:
            return NotImplemented
        return Poly([c * s for c in self.coeffs])

    __rmul__ = __mul__

    def derivative(self, order: int = 1) -> "Poly":
        """Exact order-th derivative (zero when order exceeds the degree)."""
        if order < 0:
            raise ValueError("order must be >= 0")
        if order == 0:
            return self
        n = len(self.coeffs)
        if n <= order:
            return Poly()
        out = []
        for k in range(order, n):
            m = 1
            for i in range(k, k - order, -1):  # k (k-1) ... (k-order+1)
                m *= i
            out.append(self.coeffs[k] * m)
        return Poly(out)

    # -- evaluation ----------------------------------------------------------

    def __call__(self, x: _CoeffLike) -> Scalar:
        """Exact Horner evaluation at a Q(pi) point."""
        xs = x if isinstance(x, Scalar) else Scalar(x)
        acc = Scalar(0)
        for c in reversed(self.coeffs):
            acc = acc * xs + c
        return acc

    def eval_float(self, x):
        """Float Horner evaluation; accepts a float or a numpy array."""
        acc = 0.0
        for c in reversed(_float_coeffs(self)):
            acc = acc * x + c
        return acc

    # -- structure -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def to_json(self) -> dict:
        return {"coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "Poly":
        if not isinstance(obj, dict) or not isinstance(obj.get("coeffs"), list):
            raise ValueError("polynomial must be an object with a 'coeffs' list")
        return cls([Scalar.from_json(c) for c in obj["coeffs"]])

    def __str__(self) -> str:
        return self.to_str("x")

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign, body = _term_str(c, k, var)
            if not parts:
                parts.append(body if sign > 0 else f"-{body}")
            else:
                parts.append(f"+{body}" if sign > 0 else f"-{body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


def _term_str(c: Scalar, k: int, var: str) -> tuple[int, str]:
    s = str(c)
    sign = 1
    if s.startswith("-") and "+" not in s and "-" not in s[1:]:
        sign, s = -1, s[1:]
    if k == 0:
        return sign, s
    xs = var if k == 1 else f"{var}^{k}"
    if s == "1":
        return sign, xs
    if "+" in s[1:] or "-" in s[1:] or "/" in s:
        s = f"({s})"
    return sign, f"{s}*{xs}"


@lru_cache(maxsize=512)
def _float_coeffs(p: Poly) -> tuple[float, ...]:
    return tuple(c.to_float() for c in p.coeffs)
