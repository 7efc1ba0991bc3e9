"""The conformal symmetry group of the flagship surface, acting on S^4.

Generators:
  theta : rotation by 2*pi/3 in the (x1,x2) plane, exact over Q(sqrt(3))
          since cos(2pi/3) = -1/2 and sin(2pi/3) = sqrt(3)/2,
  sigma : (x1,x2,x3,x4) -> (x1,x2,-x3,-x4),
  iota  : (x1,x2,x3,x4) -> (x1,-x2,-x3,-x4)/|x|^2, swapping 0 and infinity.

Group elements act on S4Points only, never on defining polynomials.
Equality of elements is decided by the action on a fixed sample of
eight generic points with exact coordinates, which is sound because all
generator matrices are exact over Q(sqrt(3)).
"""

from __future__ import annotations

from fractions import Fraction

from .rings import Q3
from .twistor import S4Point, S4_INFINITY

_HALF = Fraction(1, 2)
_COS = Q3(-_HALF)          # cos(2*pi/3)
_SIN = Q3(0, _HALF)        # sin(2*pi/3) = sqrt(3)/2
_COS_F = -0.5
_SIN_F = 0.8660254037844386


def _lift(coords):
    return tuple(v if isinstance(v, Q3) else Q3.of(v) for v in coords)


def _apply_generator(name, x: S4Point) -> S4Point:
    if name == "theta":
        if x.is_infinity():
            return x
        if any(isinstance(v, float) for v in x.coords):
            x1, x2, x3, x4 = x.coords
            return S4Point((_COS_F * x1 + _SIN_F * x2,
                            -_SIN_F * x1 + _COS_F * x2, x3, x4))
        x1, x2, x3, x4 = _lift(x.coords)
        return S4Point((_COS * x1 + _SIN * x2, -(_SIN * x1) + _COS * x2, x3, x4))
    if name == "sigma":
        if x.is_infinity():
            return x
        x1, x2, x3, x4 = x.coords
        return S4Point((x1, x2, -x3, -x4))
    if name == "iota":
        if x.is_infinity():
            return S4Point((0, 0, 0, 0))
        if any(isinstance(v, float) for v in x.coords):
            x1, x2, x3, x4 = x.coords
        else:
            x1, x2, x3, x4 = _lift(x.coords)
        n = x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4
        if not n:
            return S4_INFINITY
        return S4Point((x1 / n, -x2 / n, -x3 / n, -x4 / n))
    raise ValueError(f"unknown generator {name!r}")


# Eight generic sample points with coordinates in {+-1, +-2, +-3, +-1/2}.
SAMPLE_POINTS = tuple(S4Point(c) for c in (
    (1, 2, 3, _HALF),
    (-1, _HALF, 2, 3),
    (2, -3, 1, -_HALF),
    (_HALF, 1, -2, 3),
    (3, -1, -_HALF, 2),
    (-2, -_HALF, 3, 1),
    (_HALF, -2, -3, -1),
    (3, _HALF, 1, -2),
))


class ConformalMap:
    """A word over {theta, sigma, iota} with its evaluator on S^4.

    The word is applied left-to-right: word ("sigma", "iota") means
    first sigma, then iota.
    """

    __slots__ = ("word", "_key")

    def __init__(self, word=()):
        self.word = tuple(word)
        for g in self.word:
            if g not in ("theta", "sigma", "iota"):
                raise ValueError(f"unknown generator {g!r}")
        self._key = None

    def __call__(self, x: S4Point) -> S4Point:
        for g in self.word:
            x = _apply_generator(g, x)
        return x

    def apply_floats(self, coords):
        """Act on a finite float 4-tuple; returns a 4-tuple or None for infinity."""
        x = S4Point(tuple(float(v) for v in coords))
        y = self(x)
        return None if y.is_infinity() else y.coords

    def then(self, other: "ConformalMap") -> "ConformalMap":
        return ConformalMap(self.word + other.word)

    def action_key(self):
        """Exact images of the sample points; equal keys mean equal maps."""
        if self._key is None:
            self._key = tuple(self(p) for p in SAMPLE_POINTS)
        return self._key

    def same_action(self, other: "ConformalMap") -> bool:
        return self.action_key() == other.action_key()

    def __eq__(self, other):
        if not isinstance(other, ConformalMap):
            return NotImplemented
        return self.action_key() == other.action_key()

    def __hash__(self):
        return hash(self.action_key())

    def __repr__(self):
        return "ConformalMap(" + ("id" if not self.word else "*".join(self.word)) + ")"


IDENTITY = ConformalMap()
THETA = ConformalMap(("theta",))
SIGMA = ConformalMap(("sigma",))
IOTA = ConformalMap(("iota",))


def apply_conformal(g: ConformalMap, x: S4Point) -> S4Point:
    return g(x)


def enumerate_group(max_word_length=8):
    """All distinct maps generated by {theta, sigma, iota}.

    BFS over words; distinctness via the exact sample action.  Raises
    if closure is not reached by `max_word_length` (which would signal
    an implementation bug, not a property of the group).
    """
    seen = {IDENTITY.action_key(): IDENTITY}
    frontier = [IDENTITY]
    length = 0
    while frontier:
        length += 1
        if length > max_word_length:
            raise RuntimeError(
                f"group closure not reached by word length {max_word_length}")
        new_frontier = []
        for g in frontier:
            for gen in (THETA, SIGMA, IOTA):
                h = g.then(gen)
                key = h.action_key()
                if key not in seen:
                    seen[key] = h
                    new_frontier.append(h)
        frontier = new_frontier
    return set(seen.values())
