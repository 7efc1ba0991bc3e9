"""Twistor fibers contained in a surface, and related geometric tests.

A fiber over x lies inside the surface exactly when all four lambda
coefficients of the restricted cubic vanish at x.  The search solves
the eight real equations {Re c_k = Im c_k = 0} on a grid with
Gauss-Newton refinement, snaps clusters to small-height algebraic
candidates in Q(sqrt(3)), and certifies candidates by exact
substitution.  The fiber over infinity is decided exactly by
restricting the surface to the line {[z1, z2, 0, 0]}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .rings import Q3, QI3, GaussianRational
from .multipoly import MultiPoly
from .surfaces import Surface, check_smooth, SurfaceNotSmoothError
from .discriminant import fiber_cubic_for, invert_chart, X_VARS
from .twistor import S4Point, S4_INFINITY
from .numeval import NewtonSystem, gauss_newton, CompiledPoly

SQRT3_F = 1.7320508075688772935


@dataclass
class FiberSearchConfig:
    grid_points: int = 21
    box: float = 2.0
    gn_tol: float = 1e-12
    gn_max_iter: int = 50
    snap_tol: float = 1e-6
    cluster_radius: float = 1e-7
    max_height: int = 8
    seed_keep: int = 400
    check_smoothness: bool = True
    smoothness_attempts: int = 60
    smoothness_seed: int = 7


@dataclass
class FiberRecord:
    point: S4Point
    certified: bool
    exact_coords: tuple = ()
    numeric: tuple = ()

    def to_json(self):
        return {
            "point": "inf" if self.point.is_infinity()
                     else [float(v) for v in self.point.coords],
            "certified": self.certified,
            "exact_coords": list(self.exact_coords),
        }


@dataclass
class TwistorFiberSet:
    surface_name: str
    records: list

    def certified(self):
        return [r for r in self.records if r.certified]

    def certified_points(self):
        return [r.point for r in self.certified()]

    def to_json(self):
        return [r.to_json() for r in self.records]


def q3_string(v: Q3) -> str:
    if v.b == 0:
        return str(v.a)
    if v.a == 0:
        return f"{v.b}*sqrt(3)"
    return f"{v.a}+{v.b}*sqrt(3)" if v.b > 0 else f"{v.a}{v.b}*sqrt(3)"


def snap_to_q3(value, max_height=8, tol=1e-7):
    """Small-height candidates a + b*sqrt(3) near a float, best first."""
    out = []
    for qb in range(1, max_height + 1):
        lo = math.floor(-max_height * 1.0)
        hi = math.ceil(max_height * 1.0)
        # b = pb/qb with |pb| <= max_height
        for pb in range(-max_height, max_height + 1):
            b = Fraction(pb, qb)
            rem = value - float(b) * SQRT3_F
            a = Fraction(rem).limit_denominator(max_height)
            if abs(float(a) + float(b) * SQRT3_F - value) >= tol:
                continue
            if max(abs(a.numerator), a.denominator,
                   abs(b.numerator), b.denominator) > max_height:
                continue
            out.append(Q3(a, b))
    seen = set()
    uniq = []
    for q in sorted(out, key=lambda q: (abs(q.a.numerator) + q.a.denominator
                                        + abs(q.b.numerator) + q.b.denominator)):
        if q not in seen:
            seen.add(q)
            uniq.append(q)
    return uniq


def infinity_fiber_contained(surface: Surface) -> bool:
    """Exact test: does the line {[z1, z2, 0, 0]} lie inside the surface?"""
    return all(e[2] + e[3] > 0 for e in surface.poly.terms)


def _real_system(fc_coeffs):
    polys = []
    for c in fc_coeffs:
        re, im = c.real_imag()
        if not re.is_zero():
            polys.append(re)
        if not im.is_zero():
            polys.append(im)
    return polys


def _grid_candidates(polys, box, n, keep):
    axes = [np.linspace(-box, box, n)] * 4
    compiled = [CompiledPoly(p) for p in polys]
    total = None
    for cp in compiled:
        v = cp.eval_grid(axes)
        s = np.maximum(cp.abs_coeffs.sum() * (1 + box ** 4), 1.0)
        term = (v / s) ** 2
        total = term if total is None else total + term
    flat = np.argsort(total.ravel())[:keep]
    idx = np.unravel_index(flat, total.shape)
    pts = np.stack([axes[k][idx[k]] for k in range(4)], axis=1)
    return pts


def _cluster(points, radius):
    clusters = []
    for p in points:
        for c in clusters:
            if np.linalg.norm(c[0] - p) < radius:
                c.append(p)
                break
        else:
            clusters.append([p])
    return [np.mean(c, axis=0) for c in clusters]


def _certify(fc, coords_float, cfg):
    """Snap a numeric solution to exact Q(sqrt(3)) coordinates and verify."""
    candidate_lists = []
    for v in coords_float:
        cands = snap_to_q3(v, cfg.max_height, cfg.snap_tol)
        if not cands:
            return None
        candidate_lists.append(cands[:3])
    # try combinations, best-first by total height
    def rec(i, chosen):
        if i == 4:
            vals = fc.eval_exact(tuple(chosen))
            if all(not bool(v) for v in vals):
                return tuple(chosen)
            return None
        for cand in candidate_lists[i]:
            got = rec(i + 1, chosen + [cand])
            if got is not None:
                return got
        return None

    return rec(0, [])


def find_twistor_fibers(surface: Surface, cfg: FiberSearchConfig | None = None,
                        allow_singular=False) -> TwistorFiberSet:
    """Locate and certify every twistor fiber contained in the surface.

    Searches both the standard chart and the inverted chart; the fiber
    over infinity is decided by the exact line-containment test.  For a
    smooth cubic the certified count may never exceed 5.
    """
    cfg = cfg or FiberSearchConfig()
    if cfg.check_smoothness and not allow_singular:
        check_smooth(surface, cfg.smoothness_attempts, cfg.smoothness_seed)

    fc = fiber_cubic_for(surface)
    records = []

    if infinity_fiber_contained(surface):
        records.append(FiberRecord(S4_INFINITY, True, ("inf",), ()))

    # standard-chart system and its chart inversion
    polys_std = _real_system(fc.coefficients())
    polys_inv = _real_system([invert_chart(c) for c in fc.coefficients()])

    numeric_solutions = []
    for chart, polys in (("standard", polys_std), ("inverted", polys_inv)):
        if not polys:
            continue
        system = NewtonSystem(polys)
        seeds = _grid_candidates(polys, cfg.box, cfg.grid_points, cfg.seed_keep)
        for seed in seeds:
            x, res, ok = gauss_newton(system, seed, cfg.gn_tol, cfg.gn_max_iter)
            if not ok:
                continue
            if chart == "inverted":
                n = float(np.dot(x, x))
                if n < 0.09:  # too close to the infinity point; handled exactly
                    continue
                x = np.array([x[0], -x[1], -x[2], -x[3]]) / n
            if np.abs(x).max() > 4.0 / 0.3:
                continue
            numeric_solutions.append(x)

    for centroid in _cluster(numeric_solutions, max(cfg.cluster_radius, 1e-7) * 100):
        exact = _certify(fc, centroid, cfg)
        if exact is not None:
            pt = S4Point(tuple(exact))
            if any((not r.point.is_infinity()) and r.point == pt for r in records):
                continue
            records.append(FiberRecord(
                pt, True,
                tuple(q3_string(c) for c in exact),
                tuple(float(v) for v in centroid)))
        else:
            dup = any(r.numeric and np.linalg.norm(
                np.array(r.numeric) - centroid) < 1e-5 for r in records)
            if not dup:
                records.append(FiberRecord(
                    S4Point(tuple(float(v) for v in centroid)), False, (),
                    tuple(float(v) for v in centroid)))

    certified_count = len([r for r in records if r.certified])
    if not allow_singular and surface.degree == 3 and certified_count > 5:
        raise RuntimeError(
            f"{certified_count} certified fibers on a smooth cubic exceeds the bound of 5")
    order = {True: 0, False: 1}
    records.sort(key=lambda r: (order[r.point.is_infinity()] * -1,
                                r.numeric if r.numeric else (99,)))
    return TwistorFiberSet(surface.name, records)


# -- sphere / plane membership ---------------------------------------------------

def fiber_images_coplanar_or_cospherical(points, tol=1e-9) -> bool:
    """Do the points lie on one round 2-sphere or 2-plane in S^4?

    Uses the conformal lift x -> (1, x, |x|^2), infinity -> (0,0,0,0,0,1);
    membership in a common 2-sphere/plane is rank <= 4 of the lifted rows.
    """
    if len(points) < 4:
        return True
    rows = []
    for p in points:
        if isinstance(p, S4Point):
            if p.is_infinity():
                rows.append([0, 0, 0, 0, 0, 1])
                continue
            c = [float(v) for v in p.coords]
        else:
            c = [float(v) for v in p]
        rows.append([1.0] + c + [sum(v * v for v in c)])
    m = np.array(rows, dtype=float)
    m /= np.linalg.norm(m, axis=1, keepdims=True)
    s = np.linalg.svd(m, compute_uv=False)
    if len(s) <= 4:
        return True
    return bool(s[4] <= tol * s[0])


# -- concircularity via the cross-ratio ----------------------------------------

EXT_INF = complex(float("inf"), 0.0)


def _is_inf(z):
    return isinstance(z, complex) and (math.isinf(z.real) or math.isinf(z.imag))


def cross_ratio(p, q, r, s):
    """(p-r)(q-s) / ((p-s)(q-r)) with the usual limits at infinity."""
    vals = [complex(v) if not _is_inf(complex(v)) else EXT_INF for v in (p, q, r, s)]
    p, q, r, s = vals
    n_inf = sum(_is_inf(v) for v in vals)
    if n_inf > 1:
        raise ValueError("at most one point may be infinite")
    if _is_inf(p):
        return (q - s) / (q - r)
    if _is_inf(q):
        return (p - r) / (p - s)
    if _is_inf(r):
        return (q - s) / (p - s)
    if _is_inf(s):
        return (p - r) / (q - r)
    return ((p - r) * (q - s)) / ((p - s) * (q - r))


def concircular(p, q, r, s, tol=1e-12) -> bool:
    """True iff the four distinct points lie on one circle (or line).

    Decided by reality of the cross-ratio; raises on coincident inputs.
    """
    vals = [complex(v) for v in (p, q, r, s)]
    for i in range(4):
        for j in range(i + 1, 4):
            if vals[i] == vals[j]:
                raise ValueError("points must be pairwise distinct")
    cr = cross_ratio(p, q, r, s)
    return abs(cr.imag) < tol * max(1.0, abs(cr))


# -- projective equivalence with the diagonal cubic -----------------------------

class SingularMatrixError(ValueError):
    pass


def _det4(m):
    """Exact determinant of a 4x4 matrix of QI3 entries."""
    import itertools
    total = QI3.of(0)
    for perm in itertools.permutations(range(4)):
        sign = 1
        seen = list(perm)
        # parity via inversion count
        inv = sum(1 for i in range(4) for j in range(i + 1, 4) if seen[i] > seen[j])
        sign = -1 if inv % 2 else 1
        prod = QI3.of(sign)
        for row, col in enumerate(perm):
            prod = prod * m[row][col]
        total = total + prod
    return total


def verify_fermat_equivalence(matrix) -> bool:
    """Exact check that the diagonal cubic pulls back to the flagship surface.

    `matrix` is a 4x4 array of QI3 scalars sending new coordinates
    (x1..x4) to (z1..z4).  Returns True iff substituting into
    z1^3+z2^3+z3^3+z4^3 yields a nonzero scalar multiple of
    z1*z4^2 + z4*z1^2 + z2*z3^2 + z3*z2^2, as an identity over Q(i, sqrt(3)).
    Raises SingularMatrixError when the matrix is not invertible.
    """
    from .rings import SQRT3_FIELD
    from .surfaces import transformed_fermat_surface, fermat_surface

    m = [[QI3.of(v) for v in row] for row in matrix]
    if not bool(_det4(m)):
        raise SingularMatrixError("matrix is singular")

    images = []
    for row in m:
        terms = {}
        for j, coeff in enumerate(row):
            if bool(coeff):
                exps = tuple(1 if k == j else 0 for k in range(4))
                terms[exps] = coeff
        images.append(MultiPoly(X_VARS, SQRT3_FIELD, terms))
    fermat = fermat_surface().poly.convert_ring(SQRT3_FIELD)
    pulled = fermat.compose(dict(zip(("z1", "z2", "z3", "z4"), images)))

    target = transformed_fermat_surface().poly.convert_ring(SQRT3_FIELD)
    target = target.map_vars(X_VARS, dict(zip(("z1", "z2", "z3", "z4"), X_VARS)))
    if pulled.is_zero():
        return False
    # proportionality: match on the first nonzero target term
    first = target.sorted_terms()[0]
    got = pulled.terms.get(first[0])
    if got is None:
        return False
    scalar = got / first[1]
    if not bool(scalar):
        return False
    return pulled == target.convert_ring(SQRT3_FIELD).scale(scalar)


def coordinate_change_constants():
    """a = 1/2 + (sqrt(3)/6) i, b = conj(a), c = i/sqrt(3)."""
    a = QI3.from_parts(Fraction(1, 2), 0, 0, Fraction(1, 6))
    b = a.conjugate()
    c = QI3.from_parts(0, 0, 0, Fraction(1, 3))
    return a, b, c


def printed_coordinate_change():
    """The coordinate change exactly as printed, with its duplicated row."""
    a, b, c = coordinate_change_constants()
    zero = QI3.of(0)
    return [
        [zero, a, b, zero],        # z1' = a x2 + b x3
        [zero, c, -b, zero],       # z2' = c x2 - b x3
        [a, zero, zero, b],        # z3' = a x1 + b x4
        [zero, c, -b, zero],       # z4' printed identical to z2'
    ]


def find_fermat_equivalence():
    """Search the natural one-row repairs of the printed coordinate change.

    The printed block repeats the z2' row for z4'; the candidates keep
    the printed shape (coefficients from {a, b, c} with signs) but let
    z4' act on the (x1, x4) pair like z3' does.  Returns the first
    matrix that passes the exact verification.
    """
    a, b, c = coordinate_change_constants()
    zero = QI3.of(0)
    base = [
        [zero, a, b, zero],
        [zero, c, -b, zero],
        [a, zero, zero, b],
    ]
    candidates = []
    for c1 in (c, -c, a, -a):
        for c2 in (-b, b, -a, a):
            candidates.append([c1, zero, zero, c2])
            candidates.append([zero, c1, c2, zero])
    for last in candidates:
        m = base + [last]
        try:
            if verify_fermat_equivalence(m):
                return m
        except SingularMatrixError:
            continue
    return None
