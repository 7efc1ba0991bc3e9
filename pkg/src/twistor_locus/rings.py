"""Exact coefficient arithmetic for the symbolic pipeline.

Three coefficient rings are supported, forming a coercion tower

    INT  <  GAUSS_RAT  <  SQRT3_FIELD

where INT holds plain integers, GAUSS_RAT holds Gaussian rationals
a + b*i, and SQRT3_FIELD holds elements of the degree-4 field
Q(i, sqrt(3)), stored as a + b*sqrt(3) + (c + d*sqrt(3))*i with
rational a, b, c, d.  Everything is built on fractions.Fraction, so
all arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {x!r}")


class Q3:
    """An element a + b*sqrt(3) of the real quadratic field Q(sqrt(3))."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _frac(a)
        self.b = _frac(b)

    @classmethod
    def of(cls, x):
        if isinstance(x, Q3):
            return x
        return cls(_frac(x))

    def __add__(self, other):
        other = Q3.of(other)
        return Q3(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return Q3(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-Q3.of(other))

    def __rsub__(self, other):
        return Q3.of(other) + (-self)

    def __mul__(self, other):
        other = Q3.of(other)
        # (a + b r)(c + d r) with r^2 = 3
        return Q3(self.a * other.a + 3 * self.b * other.b,
                  self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def inverse(self):
        # conjugate over the norm a^2 - 3 b^2, nonzero since sqrt(3) is irrational
        n = self.a * self.a - 3 * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(3))")
        return Q3(self.a / n, -self.b / n)

    def __truediv__(self, other):
        return self * Q3.of(other).inverse()

    def __rtruediv__(self, other):
        return Q3.of(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Q3(other)
        if not isinstance(other, Q3):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        # must agree with Fraction/int hashing when the sqrt(3) part vanishes
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self):
        return self.b == 0

    def __float__(self):
        return float(self.a) + float(self.b) * 1.7320508075688772935

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        return f"({self.a}+{self.b}*sqrt3)"


SQRT3 = Q3(0, 1)


class GaussianRational:
    """A Gaussian rational re + im*i with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def of(cls, x):
        if isinstance(x, GaussianRational):
            return x
        return cls(_frac(x))

    def __add__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.of(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.of(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_gaussian_integer(self):
        return self.re.denominator == 1 and self.im.denominator == 1

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        return f"({self.re}+{self.im}*i)"


GAUSS_I = GaussianRational(0, 1)


class QI3:
    """An element of Q(i, sqrt(3)): re + im*i with re, im in Q(sqrt(3))."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Q3) else Q3.of(re)
        self.im = im if isinstance(im, Q3) else Q3.of(im)

    @classmethod
    def of(cls, x):
        if isinstance(x, QI3):
            return x
        if isinstance(x, GaussianRational):
            return cls(Q3(x.re), Q3(x.im))
        if isinstance(x, Q3):
            return cls(x)
        return cls(Q3(_frac(x)))

    @classmethod
    def from_parts(cls, a, b, c, d):
        """Build a + b*sqrt(3) + (c + d*sqrt(3))*i from four rationals."""
        return cls(Q3(a, b), Q3(c, d))

    def parts(self):
        return (self.re.a, self.re.b, self.im.a, self.im.b)

    def __add__(self, other):
        other = QI3.of(other)
        return QI3(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return QI3(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-QI3.of(other))

    def __rsub__(self, other):
        return QI3.of(other) + (-self)

    def __mul__(self, other):
        other = QI3.of(other)
        return QI3(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conjugate(self):
        return QI3(self.re, -self.im)

    def inverse(self):
        n = self.re * self.re + self.im * self.im  # in Q(sqrt(3)), nonzero
        ninv = n.inverse()
        return QI3(self.re * ninv, -self.im * ninv)

    def __truediv__(self, other):
        return self * QI3.of(other).inverse()

    def __rtruediv__(self, other):
        return QI3.of(other) * self.inverse()

    def __eq__(self, other):
        try:
            other = QI3.of(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"QI3({self.re!r}, {self.im!r})"


class Ring:
    """Coefficient ring descriptor used by MultiPoly.

    Instances are singletons (INT, GAUSS_RAT, SQRT3_FIELD); identity
    comparison is fine.  `level` orders the coercion tower.
    """

    def __init__(self, name, level):
        self.name = name
        self.level = level

    def __repr__(self):
        return self.name

    # -- element protocol ------------------------------------------------

    def coerce(self, x):
        if self is INT:
            if isinstance(x, int):
                return x
            if isinstance(x, Fraction) and x.denominator == 1:
                return int(x)
            raise TypeError(f"{x!r} is not an integer")
        if self is GAUSS_RAT:
            if isinstance(x, GaussianRational):
                return x
            if isinstance(x, (int, Fraction)):
                return GaussianRational(x)
            raise TypeError(f"{x!r} is not a Gaussian rational")
        if isinstance(x, QI3):
            return x
        return QI3.of(x)

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def is_zero(self, x):
        return not bool(x)

    def to_complex(self, x):
        if isinstance(x, int):
            return complex(x)
        return complex(x)

    # -- serialization ---------------------------------------------------

    def coeff_to_json(self, x):
        if self is INT:
            return str(x)
        if self is GAUSS_RAT:
            return [str(x.re), str(x.im)]
        return [str(p) for p in x.parts()]

    def coeff_from_json(self, data):
        if self is INT:
            return int(data)
        if self is GAUSS_RAT:
            re, im = data
            return GaussianRational(Fraction(re), Fraction(im))
        a, b, c, d = data
        return QI3.from_parts(Fraction(a), Fraction(b), Fraction(c), Fraction(d))


INT = Ring("INT", 0)
GAUSS_RAT = Ring("GAUSS_RAT", 1)
SQRT3_FIELD = Ring("SQRT3_FIELD", 2)

RINGS = {r.name: r for r in (INT, GAUSS_RAT, SQRT3_FIELD)}


def join_ring(r1, r2):
    return r1 if r1.level >= r2.level else r2


def lift_coeff(x, target):
    """Re-embed a coefficient into a ring at least as large as its own."""
    if target is INT:
        return target.coerce(x)
    if target is GAUSS_RAT:
        if isinstance(x, QI3):
            if x.re.b or x.im.b:
                raise TypeError("sqrt(3) part nonzero; cannot lower to GAUSS_RAT")
            return GaussianRational(x.re.a, x.im.a)
        return target.coerce(x)
    return QI3.of(x)


def exact_to_qi3(x):
    """Embed any exact scalar (int, Fraction, Q3, GaussianRational, QI3)."""
    return QI3.of(x)
