"""Exact arithmetic in Q(pi): quotients of polynomials in the constant pi.

Solver outputs such as 4*pi/(pi+2) are stored symbolically so that "the
residual is zero" can be decided structurally instead of by a float
comparison.  A Scalar is num/den where num and den are polynomials in pi
with Fraction coefficients; pi is never evaluated during arithmetic.
Since pi is transcendental, Q(pi) is a genuine field and the canonical
form below is unique:

  * the polynomial gcd of num and den over Q is divided out,
  * den is monic (leading coefficient exactly 1),
  * zero is stored as num=() with den=(1,).

Equality and hashing are therefore plain structural comparisons of the
coefficient tuples.  The numeric value of pi enters only in `to_float`,
which substitutes pi at the requested mpmath working precision and
rounds once at the end.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from math import lcm as _int_lcm
from typing import Iterable, Union

import mpmath

#: polynomial in pi: entry i multiplies pi**i; () is the zero polynomial
PiCoeffs = tuple[Fraction, ...]

_Rat = Union[int, Fraction]

_F0 = Fraction(0)
_F1 = Fraction(1)


def _trim(coeffs: Iterable[_Rat]) -> PiCoeffs:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _p_add(a: PiCoeffs, b: PiCoeffs) -> PiCoeffs:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _p_neg(a: PiCoeffs) -> PiCoeffs:
    return tuple(-c for c in a)


def _p_mul(a: PiCoeffs, b: PiCoeffs) -> PiCoeffs:
    if not a or not b:
        return ()
    out = [_F0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _trim(out)


def _p_divmod(a: PiCoeffs, b: PiCoeffs) -> tuple[PiCoeffs, PiCoeffs]:
    # b must be nonzero; exact long division over Q
    rem = list(a)
    q = [_F0] * max(0, len(a) - len(b) + 1)
    db = len(b) - 1
    lb = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + db] / lb
        if c:
            q[k] = c
            for j, cb in enumerate(b):
                rem[k + j] -= c * cb
    return _trim(q), _trim(rem)


def _p_gcd(a: PiCoeffs, b: PiCoeffs) -> PiCoeffs:
    # monic gcd convention; degrees here are tiny so Euclid is plenty
    while b:
        a, b = b, _p_divmod(a, b)[1]
    if not a:
        return ()
    lc = a[-1]
    return tuple(c / lc for c in a)


def _p_eval_mp(ctx, p: PiCoeffs, x):
    acc = ctx.mpf(0)
    for c in reversed(p):
        acc = acc * x + ctx.mpf(c.numerator) / c.denominator
    return acc


class Scalar:
    """A canonical element of Q(pi).

    Immutable; supports +, -, *, /, ** and mixes freely with int and
    Fraction.  Division by the zero Scalar raises ZeroDivisionError.
    """

    __slots__ = ("num", "den")

    def __init__(self, value: _Rat = 0):
        v = Fraction(value)
        self.num = (v,) if v else ()
        self.den = (_F1,)

    @classmethod
    def pi(cls) -> "Scalar":
        return cls._from_polys((_F0, _F1), (_F1,))

    @classmethod
    def from_coeffs(cls, num: Iterable[_Rat], den: Iterable[_Rat] = (1,)) -> "Scalar":
        """Build num/den from iterables of pi-power coefficients."""
        return cls._from_polys(_trim(num), _trim(den))

    @classmethod
    def _from_polys(cls, num: PiCoeffs, den: PiCoeffs) -> "Scalar":
        if not den:
            raise ZeroDivisionError("denominator polynomial is zero")
        if not num:
            num, den = (), (_F1,)
        else:
            g = _p_gcd(num, den)
            if len(g) > 1:
                num = _p_divmod(num, g)[0]
                den = _p_divmod(den, g)[0]
            lc = den[-1]
            if lc != 1:
                num = tuple(c / lc for c in num)
                den = tuple(c / lc for c in den)
        s = object.__new__(cls)
        s.num = num
        s.den = den
        return s

    # -- field arithmetic --------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Scalar | None":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Scalar(other)
        return None

    def __add__(self, other):
        o = Scalar._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._from_polys(
            _p_add(_p_mul(self.num, o.den), _p_mul(o.num, self.den)),
            _p_mul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar._from_polys(_p_neg(self.num), self.den)

    def __sub__(self, other):
        o = Scalar._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = Scalar._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = Scalar._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._from_polys(_p_mul(self.num, o.num), _p_mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Scalar._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by the zero element of Q(pi)")
        return Scalar._from_polys(_p_mul(self.num, o.den), _p_mul(self.den, o.num))

    def __rtruediv__(self, other):
        o = Scalar._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return Scalar(1) / self ** (-k)
        out = Scalar(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        o = Scalar._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        # rational values must hash like the equal Fraction/int
        if self.den == (_F1,) and len(self.num) <= 1:
            return hash(self.num[0] if self.num else _F0)
        return hash((self.num, self.den))

    # -- projections and encodings ------------------------------------------

    def to_float(self, precision_bits: int = 128) -> float:
        """Evaluate at pi with the given working precision, round once."""
        if precision_bits < 53:
            raise ValueError("precision_bits must be >= 53")
        if not self.num:
            return 0.0
        ctx = mpmath.mp.clone()  # private context: no global precision mutation
        ctx.prec = precision_bits
        x = ctx.pi
        return float(_p_eval_mp(ctx, self.num, x) / _p_eval_mp(ctx, self.den, x))

    def __float__(self) -> float:
        return self.to_float()

    def to_json(self) -> dict:
        return {
            "num": [[c.numerator, c.denominator] for c in self.num],
            "den": [[c.numerator, c.denominator] for c in self.den],
        }

    @classmethod
    def from_json(cls, obj) -> "Scalar":
        if not isinstance(obj, dict):
            raise ValueError("scalar must be an object with 'num' and 'den'")

        def read(key: str) -> list[Fraction]:
            pairs = obj.get(key)
            if not isinstance(pairs, list):
                raise ValueError(f"scalar {key!r} must be a list of [p, q] pairs")
            out = []
            for k, pair in enumerate(pairs):
                ok = (
                    isinstance(pair, (list, tuple))
                    and len(pair) == 2
                    and all(isinstance(v, int) and not isinstance(v, bool) for v in pair)
                    and pair[1] != 0
                )
                if not ok:
                    raise ValueError(f"scalar {key!r}[{k}] must be [int, nonzero int]")
                out.append(Fraction(pair[0], pair[1]))
            return out

        num, den = read("num"), read("den")
        if not _trim(den):
            raise ValueError("scalar 'den' must be a nonzero polynomial")
        return cls.from_coeffs(num, den)

    # -- printing -----------------------------------------------------------

    def _int_normal_form(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        # clear coefficient denominators so the printed form uses integers only
        scale = _int_lcm(*(c.denominator for c in self.num + self.den))
        a = [int(c * scale) for c in self.num]
        b = [int(c * scale) for c in self.den]
        g = _int_gcd(*(abs(v) for v in a + b))
        if g > 1:
            a = [v // g for v in a]
            b = [v // g for v in b]
        return tuple(a), tuple(b)

    def __str__(self) -> str:
        if not self.num:
            return "0"
        a, b = self._int_normal_form()
        num_s = _fmt_pi_poly(a)
        if b == (1,):
            return num_s
        den_s = _fmt_pi_poly(b)
        if _is_sum(num_s):
            num_s = f"({num_s})"
        if not _is_atom(den_s):
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    def __repr__(self) -> str:
        return f"Scalar({self})"


def _fmt_pi_poly(cs: tuple[int, ...]) -> str:
    parts: list[str] = []
    for k in range(len(cs) - 1, -1, -1):
        c = cs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            sym = "pi" if k == 1 else f"pi^{k}"
            body = sym if mag == 1 else f"{mag}*{sym}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+{body}" if c > 0 else f"-{body}")
    return "".join(parts)


def _is_sum(s: str) -> bool:
    return "+" in s[1:] or "-" in s[1:]


def _is_atom(s: str) -> bool:
    return s.isdigit() or s == "pi" or (s.startswith("pi^") and s[3:].isdigit())


ZERO = Scalar(0)
ONE = Scalar(1)
PI = Scalar.pi()
