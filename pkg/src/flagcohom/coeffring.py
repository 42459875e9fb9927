"""Exact weighted-graded polynomial coefficient rings.

A :class:`CoeffRing` is a polynomial ring over the rationals whose generators
carry positive integer weights (``a1`` has weight 1, ``a2`` weight 2, ...).
Polynomials are stored sparsely as exponent-tuple -> coefficient maps with
exact arithmetic: coefficients are Python ints whenever integral and
``fractions.Fraction`` otherwise.  All values are immutable after
construction, so they are safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IntegralityError, RingMismatchError, SpecializationError

Scalar = "int | Fraction"


def _norm(value):
    """Collapse integral Fractions to plain ints; keep everything exact."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


@dataclass(frozen=True)
class CoeffRing:
    """A weighted polynomial ring QQ[g1, ..., gk] (or ZZ[...] if not rational).

    ``generators`` is a tuple of (name, weight) pairs with unique names and
    weights >= 1.  When ``rational_mode`` is False every stored polynomial
    must have integer coefficients; violations raise IntegralityError.
    """

    generators: tuple
    rational_mode: bool = True

    def __post_init__(self):
        names = [g[0] for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        if any(g[1] < 1 for g in self.generators):
            raise ValueError("generator weights must be >= 1")

    @property
    def names(self):
        return tuple(g[0] for g in self.generators)

    @property
    def weights(self):
        return tuple(g[1] for g in self.generators)

    @property
    def ngens(self):
        return len(self.generators)

    def zero(self):
        return CoeffPoly(self, {})

    def one(self):
        return self.const(1)

    def const(self, value):
        value = _norm(Fraction(value) if not isinstance(value, (int, Fraction)) else value)
        if value == 0:
            return CoeffPoly(self, {})
        return CoeffPoly(self, {(0,) * self.ngens: value})

    def gen(self, name):
        idx = self.names.index(name)
        exps = [0] * self.ngens
        exps[idx] = 1
        return CoeffPoly(self, {tuple(exps): 1})

    def monomial(self, exps, coeff=1):
        coeff = _norm(coeff)
        if coeff == 0:
            return self.zero()
        return CoeffPoly(self, {tuple(exps): coeff})

    def term_weight(self, exps):
        w = 0
        for e, gw in zip(exps, self.weights):
            w += e * gw
        return w

    def term_sort_key(self, exps):
        # Canonical order: ascending weighted degree, then descending
        # lexicographic comparison starting from the last generator.  This
        # prints e.g. "a4 + a1*a3 + 13*a2^2 + 15*a1^2*a2 + a1^4".
        return (self.term_weight(exps), tuple(-e for e in reversed(exps)))


class CoeffPoly:
    """Sparse exact polynomial in a :class:`CoeffRing`.

    Never mutated after construction; zero coefficients are never stored.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms, _clean=True):
        self.ring = ring
        if _clean:
            cleaned = {}
            for exps, c in terms.items():
                c = _norm(c)
                if c != 0:
                    cleaned[exps] = c
            terms = cleaned
        if not ring.rational_mode:
            for c in terms.values():
                if isinstance(c, Fraction):
                    raise IntegralityError(
                        f"non-integer coefficient {c} in integral ring"
                    )
        self.terms = terms

    # -- queries ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_integer(self):
        return all(isinstance(c, int) for c in self.terms.values())

    def constant_term(self):
        return self.terms.get((0,) * self.ring.ngens, 0)

    def is_constant(self):
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def weight(self):
        """Weighted degree when homogeneous; raises otherwise."""
        weights = {self.ring.term_weight(e) for e in self.terms}
        if len(weights) > 1:
            raise ValueError(f"not homogeneous: weights {sorted(weights)}")
        return weights.pop() if weights else 0

    def is_homogeneous(self, weight=None):
        weights = {self.ring.term_weight(e) for e in self.terms}
        if not weights:
            return True
        if len(weights) > 1:
            return False
        return weight is None or weights == {weight}

    def max_weight(self):
        return max((self.ring.term_weight(e) for e in self.terms), default=0)

    def homogeneous_part(self, weight):
        return CoeffPoly(
            self.ring,
            {e: c for e, c in self.terms.items() if self.ring.term_weight(e) == weight},
            _clean=False,
        )

    def uses_generator(self, name):
        idx = self.ring.names.index(name)
        return any(e[idx] for e in self.terms)

    # -- arithmetic ------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError("polynomials from different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = _norm(s)
        return CoeffPoly(self.ring, terms, _clean=False)

    __radd__ = __add__

    def __neg__(self):
        return CoeffPoly(self.ring, {e: -c for e, c in self.terms.items()}, _clean=False)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out = {}
        sterms = self.terms
        oterms = other.terms
        if len(sterms) > len(oterms):
            sterms, oterms = oterms, sterms
        for e1, c1 in sterms.items():
            for e2, c2 in oterms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return CoeffPoly(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c):
        c = _norm(c)
        if c == 0:
            return self.ring.zero()
        if c == 1:
            return self
        return CoeffPoly(self.ring, {e: _norm(v * c) for e, v in self.terms.items()}, _clean=False)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    # -- morphisms -------------------------------------------------------

    def specialize(self, assignment, target=None):
        """Apply the ring morphism sending each generator to its assigned value.

        ``assignment`` maps generator names to rationals or to CoeffPoly
        values in the target ring.  Every generator actually appearing in
        ``self`` must be covered.
        """
        if target is None:
            for v in assignment.values():
                if isinstance(v, CoeffPoly):
                    target = v.ring
                    break
            else:
                target = self.ring
        images = {}
        for name, v in assignment.items():
            if isinstance(v, CoeffPoly):
                if v.ring != target:
                    raise RingMismatchError("assignment value in the wrong ring")
                images[name] = v
            else:
                images[name] = target.const(v)
        names = self.ring.names
        result = target.zero()
        for exps, c in self.terms.items():
            term = target.const(c)
            for name, e in zip(names, exps):
                if e == 0:
                    continue
                if name not in images:
                    raise SpecializationError(f"no assignment for generator {name}")
                term = term * images[name] ** e
            result = result + term
        return result

    # -- printing --------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: self.ring.term_sort_key(kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"CoeffPoly({self})"


def assert_integer(poly, context=""):
    """Raise IntegralityError unless every coefficient of ``poly`` is an int."""
    if not poly.is_integer():
        where = f" in {context}" if context else ""
        raise IntegralityError(f"non-integer coefficient{where}: {poly}")
    return poly
