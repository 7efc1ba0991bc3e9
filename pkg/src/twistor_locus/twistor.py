"""The twistor projection CP^3 -> S^4 and its real structure.

A projective point [z1,z2,z3,z4] is read as the quaternion pair
(z1 + z2 j, z3 + z4 j).  The projection sends the pair to the
quaternionic ratio q2^{-1} q1 in R^4 (identified with the quaternions
via x1 + x2 i + x3 j + x4 k), or to the point at infinity when q2 = 0.
This is the variant of the ratio that is constant on complex lines and
on the fibers.

Exact scalars are supported throughout: coordinates may be
GaussianRational (or plain rationals), in which case everything is
computed exactly; complex floats also work.
"""

from __future__ import annotations

from fractions import Fraction

from .rings import GaussianRational, QI3


class InfinityFiberNeeded(ValueError):
    """Raised when the fiber over the point at infinity is requested.

    That fiber is the dedicated constant INFINITY_FIBER rather than a
    computed FiberMap.
    """


def _as_gauss(z):
    """Coerce an exact scalar or (re, im) pair to GaussianRational; floats pass through as complex."""
    if isinstance(z, GaussianRational):
        return z
    if isinstance(z, (int, Fraction)):
        return GaussianRational(z)
    if isinstance(z, tuple):
        return GaussianRational(z[0], z[1])
    return complex(z)


def _conj(z):
    return z.conjugate()


class CP3Point:
    """Homogeneous quadruple of complex scalars, not all zero."""

    __slots__ = ("z",)

    def __init__(self, z1, z2, z3, z4):
        z = tuple(_as_gauss(v) for v in (z1, z2, z3, z4))
        if not any(bool(v) if isinstance(v, GaussianRational) else v != 0 for v in z):
            raise ValueError("all four coordinates vanish")
        self.z = z

    def coords(self):
        return self.z

    def is_exact(self):
        return all(isinstance(v, GaussianRational) for v in self.z)

    def scaled(self, factor):
        factor = _as_gauss(factor)
        return CP3Point(*(v * factor for v in self.z))

    def projectively_equal(self, other, tol=0.0):
        """Scale-invariant equality via vanishing of all 2x2 minors."""
        minors = []
        for i in range(4):
            for j in range(i + 1, 4):
                minors.append(self.z[i] * other.z[j] - self.z[j] * other.z[i])
        if all(isinstance(m, GaussianRational) for m in minors):
            return all(not m for m in minors)
        scale = max(abs(complex(m)) for m in minors) if minors else 0.0
        norm = max(abs(complex(a)) * abs(complex(b))
                   for a in self.z for b in other.z)
        return scale <= tol * max(norm, 1.0)

    def __repr__(self):
        return f"CP3Point{self.z!r}"


class S4Point:
    """A point of R^4 together with the single point at infinity."""

    __slots__ = ("coords", "infinite")

    def __init__(self, coords=None, infinite=False):
        self.infinite = bool(infinite)
        if self.infinite:
            self.coords = None
        else:
            if coords is None or len(coords) != 4:
                raise ValueError("finite point needs 4 coordinates")
            self.coords = tuple(coords)

    @classmethod
    def infinity(cls):
        return cls(infinite=True)

    def is_infinity(self):
        return self.infinite

    def as_floats(self):
        if self.infinite:
            raise ValueError("point at infinity has no coordinates")
        return tuple(float(v) for v in self.coords)

    def __eq__(self, other):
        if not isinstance(other, S4Point):
            return NotImplemented
        if self.infinite or other.infinite:
            return self.infinite and other.infinite
        return all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        if self.infinite:
            return hash("inf")
        return hash(self.coords)

    def __repr__(self):
        return "S4Point(inf)" if self.infinite else f"S4Point{self.coords!r}"


S4_INFINITY = S4Point.infinity()


def twistor_project(p: CP3Point) -> S4Point:
    """Project a CP^3 point to S^4 = R^4 + {inf}.

    With q1 = z1 + z2 j and q2 = z3 + z4 j, returns q2^{-1} q1 when
    q2 != 0 (so x1 + i x2 = (z1 conj(z3) + conj(z2) z4)/n and
    x3 + i x4 = (z2 conj(z3) - conj(z1) z4)/n with n = |z3|^2 + |z4|^2),
    else the point at infinity.  Total on CP^3 and constant on
    complex-scale classes.
    """
    z1, z2, z3, z4 = p.z
    exact = p.is_exact()
    z3_zero = (not z3) if exact else (z3 == 0)
    z4_zero = (not z4) if exact else (z4 == 0)
    if z3_zero and z4_zero:
        return S4_INFINITY
    u = z1 * _conj(z3) + _conj(z2) * z4
    v = z2 * _conj(z3) - _conj(z1) * z4
    n = (z3 * _conj(z3) + z4 * _conj(z4))
    if exact:
        n = n.re  # imaginary part is identically zero
        return S4Point((u.re / n, u.im / n, v.re / n, v.im / n))
    n = n.real
    return S4Point((u.real / n, u.imag / n, v.real / n, v.imag / n))


def tau(p: CP3Point) -> CP3Point:
    """The real structure: left multiplication by j on the quaternion pair.

    In coordinates [z1,z2,z3,z4] -> [-conj(z2), conj(z1), -conj(z4), conj(z3)].
    Antiholomorphic, fixed-point free, and tau^2 = -1 on C^4 (so the
    identity on projective points).
    """
    z1, z2, z3, z4 = p.z
    return CP3Point(-_conj(z2), _conj(z1), -_conj(z4), _conj(z3))


class FiberMap:
    """Affine-linear parameterization lambda -> lambda*p1 + p2 of one fiber.

    p1 and p2 are C^4 quadruples (exact GaussianRational when the base
    point is exact).  The image line is the twistor fiber over `base`.
    """

    __slots__ = ("base", "p1", "p2")

    def __init__(self, base, p1, p2):
        self.base = base
        self.p1 = tuple(_as_gauss(v) for v in p1)
        self.p2 = tuple(_as_gauss(v) for v in p2)

    def at(self, lam) -> CP3Point:
        lam = _as_gauss(lam)
        mixed = isinstance(lam, complex) or any(
            isinstance(v, complex) for v in self.p1 + self.p2)
        if mixed:
            lam = complex(lam)
            return CP3Point(*(lam * complex(a) + complex(b)
                              for a, b in zip(self.p1, self.p2)))
        return CP3Point(*(lam * a + b for a, b in zip(self.p1, self.p2)))

    def point_at_infinity(self) -> CP3Point:
        """The lambda -> infinity limit point [p1] of the fiber."""
        return CP3Point(*self.p1)

    def __repr__(self):
        return f"FiberMap(base={self.base!r})"


# The fiber over infinity is the line {[z1, z2, 0, 0]}.
INFINITY_FIBER = FiberMap(S4_INFINITY, (1, 0, 0, 0), (0, 1, 0, 0))


def fiber_map(x: S4Point) -> FiberMap:
    """Parameterize the twistor fiber over a finite base point.

    p1(x) = (x1 + i x2, x3 + i x4, 1, 0) and p2 = tau(p1)
          = (-x3 + i x4, x1 - i x2, 0, 1),
    so that twistor_project([lambda*p1 + p2]) == x for every lambda.
    """
    if x.is_infinity():
        raise InfinityFiberNeeded("use INFINITY_FIBER for the fiber over infinity")
    x1, x2, x3, x4 = x.coords
    if any(isinstance(v, float) for v in x.coords):
        a, b = complex(x1, x2), complex(x3, x4)
        p1 = (a, b, 1, 0)
        p2 = (-b.conjugate(), a.conjugate(), 0, 1)
    else:
        a, b = GaussianRational(x1, x2), GaussianRational(x3, x4)
        p1 = (a, b, 1, 0)
        p2 = (-b.conjugate(), a.conjugate(), 0, 1)
    return FiberMap(x, p1, p2)
