"""Exact scalar arithmetic: Gaussian rationals and polynomials in a formal u.

Everything downstream assumes these scalars are exact and immutable.  The
rational backend is gmpy2.mpq when available (it is several times faster on
the small fractions that dominate PBW reduction) and fractions.Fraction
otherwise; set SOCENTER_RATIONAL=fraction to force the fallback.
"""

import os
from fractions import Fraction

if os.environ.get("SOCENTER_RATIONAL", "").lower() == "fraction":
    RAT = Fraction
    BACKEND = "fraction"
else:
    try:
        from gmpy2 import mpq as RAT

        BACKEND = "gmpy2"
    except ImportError:
        RAT = Fraction
        BACKEND = "fraction"

_R0 = RAT(0)
_R1 = RAT(1)


def rational(num, den=None):
    """Exact rational from ints, a backend rational, a Fraction or 'p/q' text."""
    if den is not None:
        return RAT(num, den)
    if isinstance(num, str):
        return RAT(Fraction(num))
    return RAT(num)


class GaussianRational:
    """An element of Q(i), kept as a pair of reduced rationals.

    Denominators are positive and fractions fully reduced; both are
    guaranteed by the backend rational type, with zero canonically 0/1.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = RAT(re)
        self.im = RAT(im)

    @classmethod
    def _raw(cls, re, im):
        # fast path: trusts that re/im already are backend rationals
        self = object.__new__(cls)
        self.re = re
        self.im = im
        return self

    @property
    def re_num(self):
        return int(self.re.numerator)

    @property
    def re_den(self):
        return int(self.re.denominator)

    @property
    def im_num(self):
        return int(self.im.numerator)

    @property
    def im_den(self):
        return int(self.im.denominator)

    def __add__(self, other):
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __mul__(self, other):
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, _R0)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    def __truediv__(self, other):
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational._raw((a * c + b * d) / n, (b * c - a * d) / n)

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return "%s*i" % self.im
        sign = "+" if self.im > 0 else "-"
        return "(%s%s%s*i)" % (self.re, sign, abs(self.im))

    def to_json(self):
        """Four decimal integer strings: re_num, re_den, im_num, im_den."""
        return [str(self.re_num), str(self.re_den), str(self.im_num), str(self.im_den)]

    @classmethod
    def from_json(cls, data):
        rn, rd, im, id_ = (int(s) for s in data)
        return cls(RAT(rn, rd), RAT(im, id_))


GR_ZERO = GaussianRational()
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


def gr(re, im=0):
    """Gaussian rational from anything rational() accepts."""
    return GaussianRational._raw(rational(re), rational(im))


class UPoly:
    """Polynomial in the central parameter u over Q(i), dense, low power first.

    The coefficient tuple carries no trailing zeros; the zero polynomial is
    the empty tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = tuple(coeffs)
        n = len(cs)
        while n and not cs[n - 1]:
            n -= 1
        self.coeffs = cs[:n]

    @classmethod
    def _raw(cls, coeffs):
        self = object.__new__(cls)
        self.coeffs = coeffs
        return self

    @classmethod
    def const(cls, c):
        if not isinstance(c, GaussianRational):
            c = gr(c)
        return cls._raw((c,) if c else ())

    @classmethod
    def u_power(cls, k, c=GR_ONE):
        if not isinstance(c, GaussianRational):
            c = gr(c)
        if not c:
            return cls._raw(())
        return cls._raw((GR_ZERO,) * k + (c,))

    def degree(self):
        """Degree in u; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if not a:
            return other
        if not b:
            return self
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        n = len(out)
        while n and not out[n - 1]:
            n -= 1
        return UPoly._raw(tuple(out[:n]))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return UPoly._raw(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            if not other:
                return UP_ZERO
            return UPoly._raw(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UP_ZERO
        out = [GR_ZERO] * (len(a) + len(b) - 1)
        for j, ca in enumerate(a):
            if not ca:
                continue
            for k, cb in enumerate(b):
                if cb:
                    out[j + k] = out[j + k] + ca * cb
        n = len(out)
        while n and not out[n - 1]:
            n -= 1
        return UPoly._raw(tuple(out[:n]))

    def scale(self, c):
        if not isinstance(c, GaussianRational):
            c = gr(c)
        return self * c

    def evaluate(self, z):
        """Substitute the scalar z for u (Horner)."""
        if not isinstance(z, GaussianRational):
            z = gr(z)
        acc = GR_ZERO
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return GR_ZERO

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == GR_ONE

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(repr(c))
            else:
                up = "u" if k == 1 else "u^%d" % k
                parts.append(up if c == GR_ONE else "%s*%s" % (repr(c), up))
        return " + ".join(parts)

    def to_json(self):
        """List of (power, GaussianRational) pairs, zero coefficients omitted."""
        return [[k, c.to_json()] for k, c in enumerate(self.coeffs) if c]

    @classmethod
    def from_json(cls, data):
        if not data:
            return UP_ZERO
        top = max(k for k, _ in data)
        out = [GR_ZERO] * (top + 1)
        for k, c in data:
            out[k] = GaussianRational.from_json(c)
        return cls(out)


UP_ZERO = UPoly._raw(())
UP_ONE = UPoly._raw((GR_ONE,))
UP_U2 = UPoly._raw((GR_ZERO, GR_ZERO, GR_ONE))


def upoly(*coeffs):
    """UPoly from scalars acceptable to gr(), lowest power first."""
    return UPoly(gr(c) if not isinstance(c, GaussianRational) else c for c in coeffs)
