"""Exact scalars: arbitrary-precision rationals and Gaussian rationals.

Every coefficient in this package lives in Q(i): complex numbers whose real
and imaginary parts are exact rationals.  ``fractions.Fraction`` supplies the
rational layer (normalized, arbitrary precision); :class:`GaussianRational`
wraps a (re, im) pair and provides field arithmetic, conjugation, exact
modulus-squared, literal parsing and canonical formatting.

Values are immutable; all operations are pure and safe to share between
workers.

Literal syntax (used by every file format in the package):

* rational: ``p/q`` or ``p`` (e.g. ``3/4``, ``-2``)
* Gaussian: ``p/q+r/s i``, ``p/q-r/s i``, ``p/q``, ``r/s i``, ``-r/s i``,
  ``i``, ``-i`` (whitespace optional)
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ParseError

Rational = Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _as_fraction(re)
        self.im = _as_fraction(im)

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        raise TypeError(f"cannot interpret {type(x).__name__} as a Gaussian rational")

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def is_unimodular(self) -> bool:
        return self.abs2() == 1

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.abs2()
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        if k < 0:
            return self.inverse() ** (-k)
        r = ONE
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Exact squared modulus re^2 + im^2 (a rational)."""
        return self.re * self.re + self.im * self.im

    # -- equality / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- formatting / parsing ----------------------------------------------

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im} i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)} i"

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"

    @staticmethod
    def parse(text: str) -> "GaussianRational":
        """Parse a Gaussian literal; inverse of ``str``."""
        s = "".join(text.split())
        if not s:
            raise ParseError("empty Gaussian literal")
        if not s.endswith("i"):
            try:
                return GaussianRational(Fraction(s))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad rational literal {text!r}") from exc
        body = s[:-1]
        # locate the sign splitting the real part from the imaginary part:
        # the last '+'/'-' that directly follows a digit.
        split = -1
        for k in range(1, len(body)):
            if body[k] in "+-" and body[k - 1].isdigit():
                split = k
        re_txt, im_txt = (body[:split], body[split:]) if split >= 0 else ("", body)
        try:
            re_val = Fraction(re_txt) if re_txt else Fraction(0)
            if im_txt in ("", "+"):
                im_val = Fraction(1)
            elif im_txt == "-":
                im_val = Fraction(-1)
            else:
                im_val = Fraction(im_txt)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad Gaussian literal {text!r}") from exc
        return GaussianRational(re_val, im_val)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gaussian(re=0, im=0) -> GaussianRational:
    """Convenience constructor accepting ints or Fractions."""
    return GaussianRational(re, im)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction("".join(text.split()))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {text!r}") from exc


def sqrt_fraction(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None when irrational."""
    x = _as_fraction(x)
    if x < 0:
        return None
    pn = math.isqrt(x.numerator)
    pd = math.isqrt(x.denominator)
    if pn * pn == x.numerator and pd * pd == x.denominator:
        return Fraction(pn, pd)
    return None


def sqrt_gaussian(z: GaussianRational) -> GaussianRational | None:
    """An exact square root of z in Q(i), or None when none exists.

    Of the two roots the one with re > 0 (or re == 0 and im >= 0) is
    returned.
    """
    z = GaussianRational.coerce(z)
    if z.is_zero():
        return ZERO
    n = sqrt_fraction(z.abs2())
    if n is None:
        return None
    x2 = (z.re + n) / 2
    y2 = (n - z.re) / 2
    x = sqrt_fraction(x2)
    if x is None:
        return None
    if x:
        cand = GaussianRational(x, z.im / (2 * x))
    else:
        y = sqrt_fraction(y2)
        if y is None:
            return None
        cand = GaussianRational(0, y)
    if cand * cand == z:
        return cand
    return None
