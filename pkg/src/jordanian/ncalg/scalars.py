"""Exact scalars: rationals (``gmpy2.mpq``) and Gaussian rationals.

Real coefficients are stored as plain ``mpq`` values, which keeps the hot
multiplication loops fast. A :class:`GaussianRational` is only created when an
imaginary part is actually present, and arithmetic demotes back to ``mpq``
whenever the imaginary part cancels.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

__all__ = ["GaussianRational", "I", "as_scalar", "conj", "parse_rational", "parse_scalar", "format_scalar"]

_MPQ = type(mpq(0))


def _q(x):
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return mpq(x.numerator, x.denominator) if not isinstance(x, int) else mpq(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GaussianRational:
    """Element ``re + im*i`` of Q(i) with exact rational parts.

    >>> z = GaussianRational(1, 2)
    >>> z * z.conjugate()
    mpq(5,1)
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @staticmethod
    def make(re, im):
        """Build a scalar, demoting to ``mpq`` when ``im == 0``."""
        if im == 0:
            return re
        z = GaussianRational.__new__(GaussianRational)
        z.re = re
        z.im = im
        return z

    def conjugate(self):
        return GaussianRational.make(self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational.make(self.re + other.re, self.im + other.im)
        return GaussianRational.make(self.re + other, self.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational.make(self.re - other.re, self.im - other.im)
        return GaussianRational.make(self.re - other, self.im)

    def __rsub__(self, other):
        return GaussianRational.make(other - self.re, -self.im)

    def __neg__(self):
        return GaussianRational.make(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational.make(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return GaussianRational.make(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            den = other.re * other.re + other.im * other.im
            return self * other.conjugate() * (1 / den)
        return GaussianRational.make(self.re / other, self.im / other)

    def __rtruediv__(self, other):
        den = self.re * self.re + self.im * self.im
        return GaussianRational.make(other * self.re / den, -other * self.im / den)

    def __pow__(self, k: int):
        if k < 0:
            return 1 / (self ** (-k))
        out = mpq(1)
        base = self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        try:
            return self.im == 0 and self.re == other
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


I = GaussianRational(0, 1)


def as_scalar(x):
    """Coerce ints, Fractions, strings and complex-free values to an exact scalar."""
    if isinstance(x, GaussianRational):
        return GaussianRational.make(x.re, x.im)
    return _q(x)


def conj(c):
    return c.conjugate() if isinstance(c, GaussianRational) else c


def re_im(c):
    if isinstance(c, GaussianRational):
        return c.re, c.im
    return c, mpq(0)


def format_scalar(c) -> str:
    """``<re>/<den>`` with an optional ``+<im>/<den>i`` part."""
    re_, im_ = re_im(c)
    s = f"{re_.numerator}/{re_.denominator}"
    if im_ != 0:
        sign = "+" if im_ > 0 else "-"
        a = abs(im_)
        s += f"{sign}{a.numerator}/{a.denominator}i"
    return s


_RAT = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")
_GAUSS = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)?\s*(?:([+-])\s*(\d+(?:/\d+)?)?i)?\s*$")


def parse_rational(text: str):
    """Parse ``a``, ``a/b`` or a decimal literal exactly."""
    m = _RAT.match(text)
    if m:
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return mpq(int(m.group(1)), den)
    try:
        f = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc
    return mpq(f.numerator, f.denominator)


def parse_scalar(text: str):
    """Inverse of :func:`format_scalar`."""
    m = _GAUSS.match(text)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise ValueError(f"not a Gaussian rational: {text!r}")
    re_ = parse_rational(m.group(1)) if m.group(1) else mpq(0)
    im_ = mpq(0)
    if m.group(2):
        im_ = parse_rational(m.group(3)) if m.group(3) else mpq(1)
        if m.group(2) == "-":
            im_ = -im_
    return GaussianRational.make(re_, im_)
