"""Exact Gaussian rationals and extended-number helpers.

Every coefficient in the library is a :class:`GaussianRational`, a pair of
:class:`fractions.Fraction` values.  ``math.inf`` stands for the infinite
element of the extended naturals and rationals.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

INF = math.inf

ExtendedRat = Union[int, Fraction, float]  # the float is only ever INF


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


class GaussianRational:
    """A number ``re + im*i`` with rational parts.

    Fractions are always stored in lowest terms, so structural equality is
    value equality.

    >>> GaussianRational(1, 2) * GaussianRational(1, -2)
    GaussianRational(5)
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_fraction(re))
        object.__setattr__(self, "im", as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating complex numbers are not exact")
        return cls(value)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return GaussianRational(self.re * o.re)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def conjugate(self) -> "GaussianRational":
        if not self.im:
            return self
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``re^2 + im^2``."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # comparison / hashing -----------------------------------------------
    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self):
        return (self.re, self.im)

    # text -----------------------------------------------------------------
    def __repr__(self):
        if not self.im:
            return f"GaussianRational({_frac_str(self.re)})"
        return f"GaussianRational({_frac_str(self.re)}, {_frac_str(self.im)})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        """Render in the expression grammar, e.g. ``3/2``, ``(1 - 2*i)``."""
        re, im = self.re, self.im
        if not im:
            return _frac_str(re)
        if not re:
            if im == 1:
                return "i"
            if im == -1:
                return "-i"
            return f"{_frac_str(im)}*i"
        sign = "-" if im < 0 else "+"
        mag = abs(im)
        imag = "i" if mag == 1 else f"{_frac_str(mag)}*i"
        return f"({_frac_str(re)} {sign} {imag})"

    def to_json(self) -> dict:
        return {"re": _frac_str(self.re), "im": _frac_str(self.im)}

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        if isinstance(obj, dict):
            return cls(as_fraction(str(obj.get("re", "0"))), as_fraction(str(obj.get("im", "0"))))
        return cls(as_fraction(str(obj)))


def _coerce_or_none(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return GaussianRational(value)
    if isinstance(value, Rational):
        return GaussianRational(value)
    return None


def _frac_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def ext_to_json(x):
    """JSON form of an extended rational: ints stay ints, others become strings."""
    if x is None:
        return None
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        raise TypeError("inexact float in an exact report")
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return x.numerator
        return f"{x.numerator}/{x.denominator}"
    return int(x)


def ext_from_json(x):
    if x is None:
        return None
    if x == "inf":
        return INF
    if isinstance(x, int):
        return x
    return normalize_ext(Fraction(x))


def normalize_ext(x):
    """Collapse integral fractions to ``int``; keep ``INF`` as is."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def ext_div(num, den):
    """Exact ``num / den`` where ``num`` may be ``INF`` and ``den`` is a positive int."""
    if num == INF:
        return INF
    return normalize_ext(Fraction(num, den))


def ext_str(x) -> str:
    if x == INF:
        return "inf"
    if isinstance(x, Fraction):
        return _frac_str(x)
    return str(x)
