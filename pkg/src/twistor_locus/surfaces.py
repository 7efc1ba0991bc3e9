"""Projective surfaces in CP^3: the defining polynomial, presets, parsing.

The two named presets are the Fermat cubic and the surface

    z1 z4^2 + z4 z1^2 + z2 z3^2 + z3 z2^2 = 0,

its projective (not conformal) transform with five twistor fibers,
plus a generic perturbation used as a no-fiber control.
"""

from __future__ import annotations

import re
from fractions import Fraction

import numpy as np

from .rings import GAUSS_RAT, GaussianRational
from .multipoly import MultiPoly

Z_VARS = ("z1", "z2", "z3", "z4")


class NotHomogeneousError(ValueError):
    pass


class SurfaceNotSmoothError(ValueError):
    pass


class Surface:
    """A surface f = 0 with f homogeneous over the Gaussian rationals."""

    __slots__ = ("poly", "degree", "name")

    def __init__(self, poly: MultiPoly, name=""):
        if poly.vars != Z_VARS:
            poly = poly.map_vars(Z_VARS, {v: v for v in poly.vars})
        if poly.ring is not GAUSS_RAT:
            poly = poly.convert_ring(GAUSS_RAT)
        if poly.is_zero():
            raise NotHomogeneousError("zero polynomial does not define a surface")
        degrees = {sum(e) for e in poly.terms}
        if len(degrees) != 1:
            raise NotHomogeneousError(f"mixed term degrees {sorted(degrees)}")
        self.poly = poly
        self.degree = degrees.pop()
        self.name = name

    def has_gaussian_integer_coeffs(self):
        return all(c.is_gaussian_integer() for c in self.poly.terms.values())

    def gradient(self):
        return [self.poly.derivative(v) for v in Z_VARS]

    def __repr__(self):
        return f"Surface({self.name or self.poly!r})"


def _poly_from_term_list(term_list):
    terms = {}
    for exps, coeff in term_list:
        terms[tuple(exps)] = coeff
    return MultiPoly(Z_VARS, GAUSS_RAT, terms)


def transformed_fermat_surface() -> Surface:
    return Surface(_poly_from_term_list([
        ((1, 0, 0, 2), 1),
        ((2, 0, 0, 1), 1),
        ((0, 1, 2, 0), 1),
        ((0, 2, 1, 0), 1),
    ]), name="transformed-fermat")


def fermat_surface() -> Surface:
    return Surface(_poly_from_term_list([
        ((3, 0, 0, 0), 1),
        ((0, 3, 0, 0), 1),
        ((0, 0, 3, 0), 1),
        ((0, 0, 0, 3), 1),
    ]), name="fermat")


def perturbed_surface() -> Surface:
    """Flagship surface plus z1^3: generic enough to carry no twistor fibers."""
    return Surface(_poly_from_term_list([
        ((1, 0, 0, 2), 1),
        ((2, 0, 0, 1), 1),
        ((0, 1, 2, 0), 1),
        ((0, 2, 1, 0), 1),
        ((3, 0, 0, 0), 1),
    ]), name="perturbed")


PRESETS = {
    "transformed-fermat": transformed_fermat_surface,
    "fermat": fermat_surface,
    "perturbed": perturbed_surface,
}

_TERM_RE = re.compile(r"^([0-9/]*)(i?)((?:\s*\*?\s*z[1-4](?:\^[0-9]+)?)*)$")
_FACTOR_RE = re.compile(r"z([1-4])(?:\^([0-9]+))?")


def parse_surface(text: str) -> Surface:
    """Parse expressions like 'z1*z4^2 + z4*z1^2 + z2*z3^2 + z3*z2^2'.

    Coefficients may be integers, fractions, or Gaussian ('2i', 'i').
    """
    text = text.strip()
    if not text:
        raise ValueError("empty surface expression")
    chunks = re.split(r"(?=[+-])", text.replace(" ", ""))
    terms = []
    for chunk in chunks:
        if not chunk:
            continue
        sign = 1
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:]
        m = _TERM_RE.match(chunk)
        if not m:
            raise ValueError(f"cannot parse term {chunk!r}")
        num, imag, factors = m.groups()
        if not num and not imag and not factors:
            raise ValueError(f"cannot parse term {chunk!r}")
        mag = Fraction(num) if num else Fraction(1)
        coeff = GaussianRational(0, sign * mag) if imag else GaussianRational(sign * mag)
        exps = [0, 0, 0, 0]
        for f in _FACTOR_RE.finditer(factors):
            exps[int(f.group(1)) - 1] += int(f.group(2) or 1)
        terms.append((tuple(exps), coeff))
    acc = {}
    for exps, coeff in terms:
        acc[exps] = acc.get(exps, GaussianRational(0)) + coeff
    return Surface(MultiPoly(Z_VARS, GAUSS_RAT, acc))


def singular_point_candidates(surface: Surface, attempts=60, seed=7, tol=1e-10):
    """Search for projective zeros of the gradient by random-start least squares.

    Non-exhaustive: a clean run is evidence of smoothness, not a proof.
    Returns a list of candidate singular points in C^4 (one chart
    coordinate pinned to 1).
    """
    grads = surface.gradient()
    hess = [[g.derivative(v) for v in Z_VARS] for g in grads]
    rng = np.random.default_rng(seed)
    found = []
    for trial in range(attempts):
        chart = trial % 4
        z = rng.normal(size=4) + 1j * rng.normal(size=4)
        z[chart] = 1.0
        free = [k for k in range(4) if k != chart]
        for _ in range(60):
            r = np.array([g.eval_complex(tuple(z)) for g in grads])
            J = np.array([[hess[a][b].eval_complex(tuple(z)) for b in free]
                          for a in range(4)])
            Jr = np.block([[J.real, -J.imag], [J.imag, J.real]])
            rr = np.concatenate([r.real, r.imag])
            step, *_ = np.linalg.lstsq(Jr, rr, rcond=None)
            dz = step[:3] + 1j * step[3:]
            for idx, k in enumerate(free):
                z[k] -= dz[idx]
            if np.abs(dz).max() < 1e-14:
                break
        scale = max(1.0, float(np.abs(z).max()) ** max(surface.degree - 1, 1))
        res = max(abs(g.eval_complex(tuple(z))) for g in grads)
        if res < tol * scale and np.abs(z).max() < 1e6:
            found.append(tuple(z))
    return found


def check_smooth(surface: Surface, attempts=60, seed=7):
    cands = singular_point_candidates(surface, attempts=attempts, seed=seed)
    if cands:
        raise SurfaceNotSmoothError(
            f"gradient has a projective zero near {np.round(cands[0], 6)}")
