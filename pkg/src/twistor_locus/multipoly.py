"""Sparse multivariate polynomials with exact coefficients.

A MultiPoly is an immutable-by-convention map from exponent vectors to
nonzero coefficients in one of the rings of `rings.py`.  All arithmetic
is exact; floating point never enters this module.  Term order for
display and serialization is graded lexicographic, so serialized output
is reproducible.
"""

from __future__ import annotations

from fractions import Fraction

from .rings import (INT, GAUSS_RAT, SQRT3_FIELD, RINGS, GaussianRational,
                    QI3, join_ring, lift_coeff)


class RingMismatchError(TypeError):
    pass


def _check_compatible(p, q):
    if p.vars != q.vars:
        raise RingMismatchError(f"variable lists differ: {p.vars} vs {q.vars}")
    if p.ring is not q.ring:
        raise RingMismatchError(f"coefficient rings differ: {p.ring} vs {q.ring}")


class MultiPoly:
    __slots__ = ("vars", "ring", "terms")

    def __init__(self, vars, ring, terms):
        self.vars = tuple(vars)
        self.ring = ring
        clean = {}
        n = len(self.vars)
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError(f"exponent vector {exps} does not match {n} variables")
            coeff = ring.coerce(coeff)
            if not ring.is_zero(coeff):
                clean[exps] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars, ring=INT):
        return cls(vars, ring, {})

    @classmethod
    def constant(cls, vars, value, ring=INT):
        return cls(vars, ring, {(0,) * len(vars): value})

    @classmethod
    def variable(cls, name, vars, ring=INT):
        idx = list(vars).index(name)
        exps = tuple(1 if i == idx else 0 for i in range(len(vars)))
        return cls(vars, ring, {exps: ring.one()})

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        if not self.terms:
            return -1
        idx = self.vars.index(name)
        return max(e[idx] for e in self.terms)

    def sorted_terms(self):
        """Terms in graded-lex order (degree, then exponent vector)."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.vars == other.vars and self.ring is other.ring
                and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(f"{v}^{e}" if e > 1 else v
                            for v, e in zip(self.vars, exps) if e)
            bits.append(f"{coeff}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.vars, other, self.ring)
        _check_compatible(self, other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = terms.get(exps)
            new = coeff if acc is None else acc + coeff
            if self.ring.is_zero(new):
                terms.pop(exps, None)
            else:
                terms[exps] = new
        return MultiPoly(self.vars, self.ring, terms)

    def __neg__(self):
        return MultiPoly(self.vars, self.ring,
                         {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.vars, other, self.ring)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.vars, other, self.ring)
        _check_compatible(self, other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                acc = terms.get(exps)
                new = prod if acc is None else acc + prod
                if self.ring.is_zero(new):
                    terms.pop(exps, None)
                else:
                    terms[exps] = new
        return MultiPoly(self.vars, self.ring, terms)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = MultiPoly.constant(self.vars, 1, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, scalar):
        scalar = self.ring.coerce(scalar)
        return MultiPoly(self.vars, self.ring,
                         {e: c * scalar for e, c in self.terms.items()})

    # -- ring conversion -------------------------------------------------------

    def convert_ring(self, ring):
        return MultiPoly(self.vars, ring,
                         {e: lift_coeff(c, ring) for e, c in self.terms.items()})

    def conjugate_coeffs(self):
        if self.ring is INT:
            return self
        return MultiPoly(self.vars, self.ring,
                         {e: c.conjugate() for e, c in self.terms.items()})

    def real_imag(self):
        """Split a GAUSS_RAT polynomial into real and imaginary parts.

        Variables are treated as real symbols: i lives only in the
        coefficients.  Returns two GAUSS_RAT polynomials with zero
        imaginary coefficient parts.
        """
        if self.ring is not GAUSS_RAT:
            raise RingMismatchError("real/imag split needs GAUSS_RAT coefficients")
        re_terms, im_terms = {}, {}
        for e, c in self.terms.items():
            if c.re:
                re_terms[e] = GaussianRational(c.re)
            if c.im:
                im_terms[e] = GaussianRational(c.im)
        return (MultiPoly(self.vars, GAUSS_RAT, re_terms),
                MultiPoly(self.vars, GAUSS_RAT, im_terms))

    def to_int_ring(self):
        """Lower to INT coefficients; raises if any coefficient is not an integer."""
        out = {}
        for e, c in self.terms.items():
            if self.ring is INT:
                out[e] = c
                continue
            if self.ring is GAUSS_RAT:
                if c.im or c.re.denominator != 1:
                    raise TypeError(f"coefficient {c!r} is not an integer")
                out[e] = int(c.re)
                continue
            a, b, cc, d = c.parts()
            if b or cc or d or a.denominator != 1:
                raise TypeError(f"coefficient {c!r} is not an integer")
            out[e] = int(a)
        return MultiPoly(self.vars, INT, out)

    # -- evaluation and substitution -----------------------------------------

    def eval_exact(self, point):
        """Exact evaluation at a tuple of exact scalars.

        Accepts int/Fraction/Q3/GaussianRational/QI3 entries.  Returns a
        Fraction on the all-rational fast path, a QI3 otherwise.
        """
        if len(point) != len(self.vars):
            raise ValueError(f"point has {len(point)} entries for {len(self.vars)} variables")
        rational_point = all(isinstance(v, (int, Fraction)) for v in point)
        if rational_point and self.ring is INT:
            total = Fraction(0)
            for exps, coeff in self.terms.items():
                val = Fraction(coeff)
                for v, e in zip(point, exps):
                    if e:
                        val *= Fraction(v) ** e
                total += val
            return total
        total = QI3.of(0)
        lifted = [QI3.of(v) for v in point]
        for exps, coeff in self.terms.items():
            val = QI3.of(coeff)
            for v, e in zip(lifted, exps):
                for _ in range(e):
                    val = val * v
            total = total + val
        return total

    def eval_complex(self, point):
        """Floating evaluation at a tuple of float/complex entries."""
        total = 0j
        for exps, coeff in self.terms.items():
            val = self.ring.to_complex(coeff)
            for v, e in zip(point, exps):
                if e:
                    val *= v ** e
            total += val
        return total

    def subs_scalar(self, name, value):
        """Substitute an exact scalar for one variable (variable list unchanged)."""
        idx = self.vars.index(name)
        value = self.ring.coerce(value)
        terms = {}
        for exps, coeff in self.terms.items():
            e = exps[idx]
            c = coeff
            for _ in range(e):
                c = c * value
            if self.ring.is_zero(c):
                continue
            key = exps[:idx] + (0,) + exps[idx + 1:]
            acc = terms.get(key)
            new = c if acc is None else acc + c
            if self.ring.is_zero(new):
                terms.pop(key, None)
            else:
                terms[key] = new
        return MultiPoly(self.vars, self.ring, terms)

    def drop_var(self, name):
        """Remove a variable that no longer appears in any term."""
        idx = self.vars.index(name)
        if any(e[idx] for e in self.terms):
            raise ValueError(f"{name} still appears")
        new_vars = self.vars[:idx] + self.vars[idx + 1:]
        return MultiPoly(new_vars, self.ring,
                         {e[:idx] + e[idx + 1:]: c for e, c in self.terms.items()})

    def divide_by_var(self, name, power=1):
        """Exact division by name**power; raises if not divisible."""
        idx = self.vars.index(name)
        terms = {}
        for exps, coeff in self.terms.items():
            if exps[idx] < power:
                raise ValueError(f"not divisible by {name}^{power}")
            key = exps[:idx] + (exps[idx] - power,) + exps[idx + 1:]
            terms[key] = coeff
        return MultiPoly(self.vars, self.ring, terms)

    def derivative(self, name):
        idx = self.vars.index(name)
        terms = {}
        for exps, coeff in self.terms.items():
            e = exps[idx]
            if not e:
                continue
            key = exps[:idx] + (e - 1,) + exps[idx + 1:]
            terms[key] = coeff * e if self.ring is INT else coeff * self.ring.coerce(e)
        return MultiPoly(self.vars, self.ring, terms)

    def compose(self, assignments):
        """Substitute a MultiPoly for every variable.

        `assignments` maps each variable name to a MultiPoly; all the
        images must share one variable list and ring.
        """
        images = [assignments[v] for v in self.vars]
        tgt = images[0]
        for img in images[1:]:
            _check_compatible(tgt, img)
        out = MultiPoly.zero(tgt.vars, tgt.ring)
        pow_cache = [{0: MultiPoly.constant(tgt.vars, 1, tgt.ring)} for _ in images]
        for exps, coeff in self.sorted_terms():
            term = MultiPoly.constant(tgt.vars, lift_coeff(coeff, tgt.ring), tgt.ring)
            for i, e in enumerate(exps):
                cache = pow_cache[i]
                if e not in cache:
                    p = max(cache)
                    acc = cache[p]
                    while p < e:
                        acc = acc * images[i]
                        p += 1
                        cache[p] = acc
                term = term * cache[e]
            out = out + term
        return out

    def map_vars(self, new_vars, mapping):
        """Rename/rearrange variables; `mapping` sends old name -> new name."""
        new_vars = tuple(new_vars)
        idx = {v: new_vars.index(mapping[v]) for v in self.vars}
        terms = {}
        for exps, coeff in self.terms.items():
            key = [0] * len(new_vars)
            for v, e in zip(self.vars, exps):
                key[idx[v]] += e
            terms[tuple(key)] = coeff
        return MultiPoly(new_vars, self.ring, terms)

    # -- serialization ------------------------------------------------------

    def to_json(self):
        return {
            "vars": list(self.vars),
            "ring": self.ring.name,
            "terms": [{"exps": list(e), "coeff": self.ring.coeff_to_json(c)}
                      for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data):
        ring = RINGS[data["ring"]]
        terms = {tuple(t["exps"]): ring.coeff_from_json(t["coeff"])
                 for t in data["terms"]}
        return cls(tuple(data["vars"]), ring, terms)


def poly_arith(p, q, op):
    """Dispatch add/sub/mul on two compatible polynomials."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")
