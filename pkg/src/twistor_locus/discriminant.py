"""From a cubic surface to the two real polynomials cutting its branch set.

Restricting the defining cubic f to the twistor fiber over x gives a
cubic f_x(lambda) = c3*lambda^3 + c2*lambda^2 + c1*lambda + c0 whose
coefficients are polynomials in x1..x4 over the Gaussian rationals.
The classical cubic discriminant of (c3,c2,c1,c0), split into real and
imaginary parts, yields two real polynomials P, Q whose common zero set
is the discriminant locus in R^4; the chart inversion handles the part
of the locus near infinity.
"""

from __future__ import annotations

from fractions import Fraction

from .rings import GAUSS_RAT, INT, GaussianRational
from .multipoly import MultiPoly
from .surfaces import Surface, Z_VARS

X_VARS = ("x1", "x2", "x3", "x4")
_XL_VARS = X_VARS + ("lam",)


class FiberCubic:
    """The four coefficient polynomials of f_x(lambda), each in x1..x4."""

    __slots__ = ("c3", "c2", "c1", "c0")

    def __init__(self, c3, c2, c1, c0):
        self.c3, self.c2, self.c1, self.c0 = c3, c2, c1, c0

    def coefficients(self):
        """(c3, c2, c1, c0), highest lambda power first."""
        return (self.c3, self.c2, self.c1, self.c0)

    def eval_exact(self, point):
        return tuple(c.eval_exact(point) for c in self.coefficients())

    def max_degree(self):
        return max(c.total_degree() for c in self.coefficients())


def standard_fiber_components():
    """The components of theta_x(lambda) as (u, v) pairs with z = u*lambda + v.

    z1 = lambda*(x1 + i x2) + (-x3 + i x4)
    z2 = lambda*(x3 + i x4) + ( x1 - i x2)
    z3 = lambda
    z4 = 1
    """
    i = GaussianRational(0, 1)

    def poly(pairs, const=0):
        terms = {}
        if const:
            terms[(0, 0, 0, 0)] = const
        for name, coeff in pairs:
            idx = X_VARS.index(name)
            exps = tuple(1 if k == idx else 0 for k in range(4))
            terms[exps] = coeff
        return MultiPoly(X_VARS, GAUSS_RAT, terms)

    zero = MultiPoly.zero(X_VARS, GAUSS_RAT)
    one = MultiPoly.constant(X_VARS, 1, GAUSS_RAT)
    u1 = poly([("x1", GaussianRational(1)), ("x2", i)])
    v1 = poly([("x3", GaussianRational(-1)), ("x4", i)])
    u2 = poly([("x3", GaussianRational(1)), ("x4", i)])
    v2 = poly([("x1", GaussianRational(1)), ("x2", GaussianRational(0, -1))])
    return [(u1, v1), (u2, v2), (one, zero), (zero, one)]


def substitute_affine(surface: Surface, maps) -> FiberCubic:
    """Expand f(theta_x(lambda)) exactly and collect by powers of lambda."""
    if surface.degree != 3:
        raise ValueError(f"surface degree {surface.degree} != 3; only cubics supported")
    lam = MultiPoly.variable("lam", _XL_VARS, GAUSS_RAT)
    assignments = {}
    for z, (u, v) in zip(Z_VARS, maps):
        u5 = u.map_vars(_XL_VARS, {n: n for n in X_VARS})
        v5 = v.map_vars(_XL_VARS, {n: n for n in X_VARS})
        assignments[z] = u5 * lam + v5
    expanded = surface.poly.compose(assignments)
    cs = []
    for k in (3, 2, 1, 0):
        terms = {e[:4]: c for e, c in expanded.terms.items() if e[4] == k}
        cs.append(MultiPoly(X_VARS, GAUSS_RAT, terms))
    if any(e[4] > 3 for e in expanded.terms):
        raise ValueError("lambda degree exceeds 3 after substitution")
    return FiberCubic(*cs)


def fiber_cubic_for(surface: Surface) -> FiberCubic:
    return substitute_affine(surface, standard_fiber_components())


def cubic_discriminant(a, b, c, d):
    """Discriminant of a*t^3 + b*t^2 + c*t + d.

    Works on ring elements and on MultiPolys alike.  Vanishes
    identically when a = b = 0 (degree <= 1), which is what makes its
    zero set the full branch locus rather than just the repeated-root set.
    """
    return (18 * (a * b) * (c * d) - 4 * (b * b * b) * d + (b * b) * (c * c)
            - 4 * a * (c * c * c) - 27 * (a * a) * (d * d))


def discriminant_poly(surface: Surface) -> MultiPoly:
    """The complex discriminant polynomial in x1..x4 over GAUSS_RAT."""
    fc = fiber_cubic_for(surface)
    return cubic_discriminant(*fc.coefficients())


def discriminant_locus_polys(surface: Surface):
    """Real and imaginary parts (P, Q) of the fiber discriminant, over INT.

    Requires Gaussian-integer coefficients so the split is integral.
    The common zero set {P = 0, Q = 0} is the discriminant locus.
    """
    if not surface.has_gaussian_integer_coeffs():
        raise TypeError("surface coefficients must be Gaussian integers")
    disc = discriminant_poly(surface)
    p_rat, q_rat = disc.real_imag()
    return p_rat.to_int_ring(), q_rat.to_int_ring()


def norm_sq_poly(vars=X_VARS, ring=INT):
    terms = {}
    for k in range(len(vars)):
        exps = tuple(2 if i == k else 0 for i in range(len(vars)))
        terms[exps] = 1
    return MultiPoly(vars, ring, terms)


def invert_chart(p: MultiPoly) -> MultiPoly:
    """|x|^(2 deg p) * p(iota(x)), exactly.

    iota negates x2, x3, x4 and divides by |x|^2; multiplying by
    |x|^(2 deg p) clears every denominator (the minimal uniform
    multiplier).  The zero set near 0 of the result corresponds to the
    zero set of p near infinity.
    """
    if p.is_zero():
        return p
    deg = p.total_degree()
    nsq = norm_sq_poly(p.vars, p.ring)
    powers = {0: MultiPoly.constant(p.vars, 1, p.ring)}

    def nsq_pow(k):
        if k not in powers:
            powers[k] = nsq_pow(k - 1) * nsq
        return powers[k]

    out = MultiPoly.zero(p.vars, p.ring)
    for exps, coeff in p.sorted_terms():
        total = sum(exps)
        negate = bool(sum(exps[1:]) % 2)
        mono = MultiPoly(p.vars, p.ring,
                         {tuple(exps): -coeff if negate else coeff})
        out = out + mono * nsq_pow(deg - total)
    return out


def eval_poly(p: MultiPoly, point):
    """Evaluate exactly when all entries are exact scalars, else as complex."""
    if len(point) != len(p.vars):
        raise ValueError(f"point length {len(point)} != {len(p.vars)} variables")
    if all(isinstance(v, (int, Fraction)) or type(v).__name__ in ("Q3", "QI3", "GaussianRational")
           for v in point):
        return p.eval_exact(point)
    return p.eval_complex(tuple(complex(v) for v in point))
