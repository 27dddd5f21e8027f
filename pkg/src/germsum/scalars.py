"""Coefficient domains for truncated series.

Three kinds of scalars circulate in this package:

* exact rationals (``fractions.Fraction``, plain ``int``),
* exact complex rationals (:class:`QQi`),
* arbitrary-precision complex floats (``mpmath.mpf`` / ``mpmath.mpc``).

Exact scalars support equality tests; floats carry their precision in the
mpmath representation.  Mixed arithmetic promotes exact to float, never the
other way around.  All series code funnels coefficient arithmetic through
the ``s*`` helpers below so that the promotion rules live in one place.
"""
from __future__ import annotations

import os
from fractions import Fraction

import mpmath
from mpmath import mp

DEFAULT_PREC_BITS = int(os.environ.get("GERMSUM_PREC_BITS", "128"))


def _wp():
    """Float scalar ops run at the ambient precision, floored at the default."""
    return mp.workprec(max(mp.prec, DEFAULT_PREC_BITS))

_EXACT_REAL = (int, Fraction)
_MP_TYPES = (mpmath.mpf, mpmath.mpc)


class QQi:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("QQi is immutable")

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def conjugate(self):
        return QQi(self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, QQi):
            return QQi(self.re + other.re, self.im + other.im)
        if isinstance(other, _EXACT_REAL):
            return QQi(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __sub__(self, other):
        o = other if isinstance(other, QQi) else QQi(other)
        return QQi(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QQi):
            return QQi(self.re * other.re - self.im * other.im,
                       self.re * other.im + self.im * other.re)
        if isinstance(other, _EXACT_REAL):
            return QQi(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _EXACT_REAL):
            return QQi(self.re / other, self.im / other)
        if isinstance(other, QQi):
            n2 = other.re * other.re + other.im * other.im
            if n2 == 0:
                raise ZeroDivisionError("division by zero QQi")
            return self * QQi(other.re / n2, -other.im / n2)
        return NotImplemented

    def __rtruediv__(self, other):
        n2 = self.re * self.re + self.im * self.im
        if n2 == 0:
            raise ZeroDivisionError("division by zero QQi")
        return QQi(other) * QQi(self.re / n2, -self.im / n2)

    def __eq__(self, other):
        if isinstance(other, QQi):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _EXACT_REAL):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return f"QQi({self.re})"
        return f"QQi({self.re}, {self.im})"


def is_exact(x):
    return isinstance(x, (int, Fraction, QQi))


def is_float_scalar(x):
    return isinstance(x, _MP_TYPES)


def to_mpf(x):
    """Real exact scalar -> mpf at the working precision."""
    with _wp():
        if isinstance(x, Fraction):
            return mpmath.mpf(x.numerator) / x.denominator
        return mpmath.mpf(x)


def to_mpc(x):
    """Any supported scalar -> mpc; existing float values pass through unrounded."""
    if isinstance(x, mpmath.mpc):
        return x
    if isinstance(x, mpmath.mpf):
        return mp.make_mpc((x._mpf_, mpmath.libmp.fzero))
    if isinstance(x, QQi):
        return mpmath.mpc(to_mpf(x.re), to_mpf(x.im))
    if isinstance(x, Fraction):
        return mpmath.mpc(to_mpf(x))
    if isinstance(x, (int, float, complex)):
        return mpmath.mpc(x)
    raise TypeError(f"cannot convert {x!r} to a complex float")


def sadd(a, b):
    if is_exact(a) and is_exact(b):
        if isinstance(a, QQi) or isinstance(b, QQi):
            return (a if isinstance(a, QQi) else QQi(a)) + b
        return a + b
    with _wp():
        return to_mpc(a) + to_mpc(b)


def smul(a, b):
    if is_exact(a) and is_exact(b):
        if isinstance(a, QQi) or isinstance(b, QQi):
            return (a if isinstance(a, QQi) else QQi(a)) * b
        return a * b
    with _wp():
        return to_mpc(a) * to_mpc(b)


def sdiv(a, b):
    if is_exact(a) and is_exact(b):
        if isinstance(a, QQi) or isinstance(b, QQi):
            return (a if isinstance(a, QQi) else QQi(a)) / b
        return Fraction(a) / Fraction(b)
    with _wp():
        return to_mpc(a) / to_mpc(b)


def sneg(a):
    if is_exact(a):
        return -a
    with _wp():
        return -to_mpc(a)


def is_zero(x):
    if isinstance(x, QQi):
        return x.is_zero()
    return x == 0


def scalar_eq(a, b):
    """Equality across scalar kinds; float scalars compare exactly."""
    if is_exact(a) and is_exact(b):
        qa = a if isinstance(a, QQi) else QQi(a)
        qb = b if isinstance(b, QQi) else QQi(b)
        return qa == qb
    with _wp():
        return to_mpc(a) == to_mpc(b)


def sabs(x):
    """|x| as an mpf (exact inputs are converted at the working precision)."""
    if is_zero(x):
        return mpmath.mpf(0)
    with _wp():
        return abs(to_mpc(x))


def sabs_float(x):
    try:
        return float(sabs(x))
    except OverflowError:
        return float("inf")


def scalar_to_json(c):
    if isinstance(c, (int, Fraction)):
        f = Fraction(c)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    if isinstance(c, QQi):
        return {"re": scalar_to_json(c.re), "im": scalar_to_json(c.im)}
    z = to_mpc(c)
    return {"re": float(z.real), "im": float(z.imag)}


def scalar_from_json(obj):
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, (int, float)):
        if isinstance(obj, int):
            return Fraction(obj)
        return mpmath.mpf(obj)
    if isinstance(obj, dict) and set(obj) <= {"re", "im"}:
        re, im = obj.get("re", 0), obj.get("im", 0)
        if isinstance(re, str) or isinstance(im, str):
            q = QQi(Fraction(str(re)), Fraction(str(im)))
            return q.re if q.im == 0 else q
        return mpmath.mpc(re, im)
    raise ValueError(f"unrecognized coefficient encoding: {obj!r}")


def parse_scalar(text):
    """Parse a user-facing scalar: '3/4', '-2', '0.5', '1/2+1/3j', '0.1-0.2j'."""
    s = text.strip().replace(" ", "")
    try:
        return Fraction(s)
    except ValueError:
        pass
    if s.endswith(("j", "J", "i", "I")):
        body = s[:-1]
        # split mantissa into re/im on the last +/- that is not an exponent sign
        for pos in range(len(body) - 1, 0, -1):
            if body[pos] in "+-" and body[pos - 1] not in "eE":
                re_part, im_part = body[:pos], body[pos:]
                break
        else:
            re_part, im_part = "0", body
        if im_part in ("", "+", "-"):
            im_part += "1"
        try:
            return QQi(Fraction(re_part), Fraction(im_part))
        except ValueError:
            return mpmath.mpc(mpmath.mpf(re_part), mpmath.mpf(im_part))
    try:
        return mpmath.mpf(s)
    except ValueError:
        raise ValueError(f"cannot parse scalar {text!r}") from None
