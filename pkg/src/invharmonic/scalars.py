"""Exact Gaussian rationals, the coefficient field Q(i)."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["Scalar", "as_scalar", "parse_scalar", "ZERO", "ONE", "I"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class Scalar:
    """An element ``re + im*i`` of Q(i) with arbitrary-precision parts.

    Instances are immutable. Arithmetic accepts ints and Fractions on either
    side; floats are refused so that nothing inexact leaks in.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "Scalar":
        s = object.__new__(cls)
        object.__setattr__(s, "re", re)
        object.__setattr__(s, "im", im)
        return s

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = as_scalar(other)
        return Scalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = as_scalar(other)
        return Scalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Scalar):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return Scalar._raw(a * c, b)
            return Scalar._raw(a * c - b * d, a * d + b * c)
        try:
            r = _frac(other)
        except TypeError:
            return NotImplemented
        return Scalar._raw(self.re * r, self.im * r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = as_scalar(other)
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return Scalar._raw(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        return as_scalar(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n < 0:
            return ONE / (self ** (-n))
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.re, -self.im)

    def norm2(self) -> Fraction:
        """Squared modulus, an exact rational."""
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    # comparison -----------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, complex):
        raise TypeError("complex floats are not exact; build a Scalar from rationals")
    return Scalar._raw(_frac(x), Fraction(0))


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    """Canonical text: ``p/q`` for reals, ``p/q i`` for pure imaginaries,
    ``(a + b i)`` otherwise. Parentheses keep the ``+`` unambiguous inside
    form expressions."""
    if not s.im:
        return _fmt(s.re)
    if not s.re:
        return f"{_fmt(s.im)} i"
    return f"({_fmt(s.re)} + {_fmt(s.im)} i)"


_RAT = r"[+-]?\d+(?:/\d+)?"
_PURE_IM = re.compile(rf"^({_RAT})?\s*\*?\s*i$")
_COMPLEX = re.compile(rf"^\(?\s*({_RAT})\s*([+-])\s*({_RAT})?\s*\*?\s*i\s*\)?$")


def parse_scalar(text: str) -> Scalar:
    """Inverse of :func:`format_scalar`; also accepts ``a/b + c/d i`` without
    parentheses, ``i``, ``-i`` and ``a - b i``."""
    t = text.strip()
    if t.startswith("(") and t.endswith(")") and "i" not in t[1:-1]:
        t = t[1:-1].strip()
    if re.fullmatch(_RAT, t):
        return Scalar(Fraction(t))
    if t in ("i", "+i"):
        return I
    if t == "-i":
        return -I
    m = _PURE_IM.match(t)
    if m:
        return Scalar(0, Fraction(m.group(1)) if m.group(1) else 1)
    m = _COMPLEX.match(t)
    if m:
        re_part = Fraction(m.group(1))
        im_part = Fraction(m.group(3).lstrip("+")) if m.group(3) else Fraction(1)
        if m.group(2) == "-":
            im_part = -im_part
        return Scalar(re_part, im_part)
    raise ValueError(f"not a Gaussian rational: {text!r}")
