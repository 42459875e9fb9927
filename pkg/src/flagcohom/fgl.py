"""Formal group laws as truncated bivariate series.

The universal law is built over QQ[m1, m2, ...] from its logarithm
log(x) = x + sum m_i x^(i+1): the exponential is the compositional reverse
of the logarithm and F(x, y) = exp(log x + log y).  Reversion keeps all
coefficients in ZZ[m], so the whole universal apparatus stays exact and
denominator free.  Standard specializations (additive, multiplicative,
connective) and laws given by explicit coefficients or logarithms are
validated against commutativity, unit and associativity on construction.
"""

from __future__ import annotations

from fractions import Fraction

from .coeffring import CoeffRing
from .errors import AssociativityError, RingMismatchError
from .tseries import TruncatedSeries


def embed(series, n_out, var_map):
    """Re-index a series into more variables: old var i -> new var var_map[i]."""
    coeffs = {}
    for e, p in series.coeffs.items():
        out = [0] * n_out
        for i, k in enumerate(e):
            out[var_map[i]] = k
        coeffs[tuple(out)] = p
    return TruncatedSeries(
        series.ring, n_out, series.trunc, series.valid_degree, coeffs, _clean=False
    )


def revert(series):
    """Compositional inverse g of a 1-variable series with unit linear term."""
    ring = series.ring
    D = series.trunc
    lin = series.coefficient((1,))
    if not lin.is_constant() or lin.is_zero():
        raise ValueError("series must have an invertible linear coefficient")
    c1 = Fraction(lin.constant_term())
    x = TruncatedSeries.variable(ring, 1, D, 0)
    g = x.scale(Fraction(1) / c1)
    for k in range(2, D + 1):
        err = series.substitute([g]) - x
        c = err.coefficient((k,))
        if not c.is_zero():
            g = g - TruncatedSeries.from_terms(ring, 1, D, {(k,): c.scale(Fraction(1) / c1)})
    return g


class FormalGroupLaw:
    """A one-dimensional commutative formal group law over a CoeffRing.

    Fields: ``F`` the 2-variable sum series, ``inverse`` the 1-variable
    formal inverse with F(x, inverse(x)) = 0, ``log`` the logarithm when the
    backend has one, and ``tag`` naming the backend.
    """

    def __init__(self, ring, trunc, F, inverse, tag, log=None, a_table=None, validate=True):
        self.ring = ring
        self.trunc = trunc
        self.F = F
        self.inverse = inverse
        self.tag = tag
        self.log = log
        self.a_table = a_table
        self._mult = {}
        self._nary = {}
        self._kappa = None
        if validate:
            self._validate()

    # -- constructors -------------------------------------------------------

    @staticmethod
    def universal(trunc):
        """The universal law over QQ[m1..m_{trunc-1}], built from its logarithm."""
        if trunc < 1:
            raise ValueError("truncation must be >= 1")
        gens = tuple((f"m{i}", i) for i in range(1, trunc))
        ring = CoeffRing(gens, rational_mode=True)
        log = _log_from_coeffs(ring, trunc, [ring.gen(f"m{i}") for i in range(1, trunc)])
        return FormalGroupLaw._from_log_series(ring, trunc, log, tag="universal")

    @staticmethod
    def from_log(ring, trunc, coefficients):
        """Law with logarithm x + sum c_i x^(i+1); c_i scalars or CoeffPolys."""
        coeffs = []
        for c in coefficients[: trunc - 1]:
            coeffs.append(c if hasattr(c, "ring") else ring.const(c))
        while len(coeffs) < trunc - 1:
            coeffs.append(ring.zero())
        log = _log_from_coeffs(ring, trunc, coeffs)
        return FormalGroupLaw._from_log_series(ring, trunc, log, tag="custom")

    @staticmethod
    def _from_log_series(ring, trunc, log, tag):
        exp = revert(log)
        logx = embed(log, 2, [0])
        logy = embed(log, 2, [1])
        F = exp.substitute([logx + logy])
        inverse = exp.substitute([-log])
        a_table = {e: p for e, p in F.coeffs.items()}
        return FormalGroupLaw(ring, trunc, F, inverse, tag, log=log, a_table=a_table)

    @staticmethod
    def additive(trunc, ring=None):
        ring = ring or CoeffRing((), rational_mode=True)
        x = TruncatedSeries.variable(ring, 2, trunc, 0)
        y = TruncatedSeries.variable(ring, 2, trunc, 1)
        inv = -TruncatedSeries.variable(ring, 1, trunc, 0)
        logx = TruncatedSeries.variable(ring, 1, trunc, 0)
        return FormalGroupLaw(ring, trunc, x + y, inv, "additive", log=logx)

    @staticmethod
    def multiplicative(trunc, name="beta"):
        """F(x, y) = x + y - beta*x*y over ZZ[beta] (beta of weight 1)."""
        ring = CoeffRing(((name, 1),), rational_mode=True)
        return FormalGroupLaw.from_coefficients(
            ring, trunc, {(1, 1): -ring.gen(name)}, tag="multiplicative"
        )

    @staticmethod
    def connective(trunc, name="v"):
        """Connective normalization: the xy-coefficient itself is the generator.

        F(x, y) = x + y + v*x*y, i.e. the classifying map sends the degree-1
        universal generator a1 = a11 to v.
        """
        ring = CoeffRing(((name, 1),), rational_mode=True)
        return FormalGroupLaw.from_coefficients(
            ring, trunc, {(1, 1): ring.gen(name)}, tag="connective"
        )

    @staticmethod
    def from_coefficients(ring, trunc, coefficients, tag="custom"):
        """Build F = x + y + sum a_ij x^i y^j and validate it.

        ``coefficients`` maps (i, j) with i, j >= 1 to CoeffPoly or scalar;
        missing mirror entries are filled symmetrically, conflicting ones
        rejected.
        """
        table = {}
        for (i, j), c in coefficients.items():
            if i < 1 or j < 1:
                raise ValueError("coefficient indices must be >= 1")
            p = c if hasattr(c, "ring") else ring.const(c)
            for key in ((i, j), (j, i)):
                if key in table and table[key] != p:
                    raise ValueError(f"asymmetric coefficients at {key}")
                table[key] = p
        terms = {(1, 0): ring.one(), (0, 1): ring.one()}
        for (i, j), p in table.items():
            if i + j <= trunc:
                terms[(i, j)] = p
        F = TruncatedSeries.from_terms(ring, 2, trunc, terms)
        inverse = _solve_inverse(F)
        return FormalGroupLaw(ring, trunc, F, inverse, tag)

    # -- validation -----------------------------------------------------------

    def _validate(self):
        F = self.F
        ring = self.ring
        D = self.trunc
        # unit: F(x, 0) = x
        for (i, j), p in F.coeffs.items():
            if j == 0 and not (i == 1 and p == ring.one()):
                raise ValueError("law fails F(x, 0) = x")
            if i == 0 and not (j == 1 and p == ring.one()):
                raise ValueError("law fails F(0, y) = y")
        # commutativity
        swapped = TruncatedSeries(
            ring, 2, D, F.valid_degree, {(j, i): p for (i, j), p in F.coeffs.items()},
            _clean=False,
        )
        if not (F == swapped):
            raise ValueError("law is not commutative")
        # associativity F(F(x,y),z) = F(x,F(y,z))
        x3 = TruncatedSeries.variable(ring, 3, D, 0)
        z3 = TruncatedSeries.variable(ring, 3, D, 2)
        fxy = F.substitute([embed_var(ring, 3, D, 0), embed_var(ring, 3, D, 1)])
        fyz = F.substitute([embed_var(ring, 3, D, 1), embed_var(ring, 3, D, 2)])
        left = F.substitute([fxy, z3])
        right = F.substitute([x3, fyz])
        diff = left - right
        if not diff.is_zero():
            bad = min(diff.coeffs, key=lambda e: (sum(e), e))
            raise AssociativityError(bad)
        # inverse
        xi = self.inverse
        if not F.substitute(
            [TruncatedSeries.variable(ring, 1, D, 0), xi]
        ).is_zero():
            raise ValueError("formal inverse does not satisfy F(x, i(x)) = 0")

    # -- operations -------------------------------------------------------------

    def formal_sum(self, s, t):
        return self.F.substitute([s, t])

    def formal_inverse(self, s):
        return self.inverse.substitute([s])

    def multiple_series(self, k):
        """The 1-variable series k .F x, cached per integer k."""
        cached = self._mult.get(k)
        if cached is not None:
            return cached
        ring, D = self.ring, self.trunc
        if k == 0:
            s = TruncatedSeries.zero(ring, 1, D)
        elif k == 1:
            s = TruncatedSeries.variable(ring, 1, D, 0)
        elif k < 0:
            s = self.inverse.substitute([self.multiple_series(-k)])
        else:
            x = TruncatedSeries.variable(ring, 1, D, 0)
            s = self.F.substitute([self.multiple_series(k - 1), x])
        self._mult[k] = s
        return s

    def multiple(self, k, s):
        if (
            s.n_vars == 1
            and s.trunc == self.trunc
            and s == TruncatedSeries.variable(self.ring, 1, self.trunc, 0)
        ):
            return self.multiple_series(k)
        if k == 0:
            return TruncatedSeries.zero(s.ring, s.n_vars, s.trunc, s.valid_degree)
        return self.multiple_series(k).substitute([s])

    def nary_sum(self, n):
        """The n-variable series x_1 +F x_2 +F ... +F x_n, cached."""
        cached = self._nary.get(n)
        if cached is not None:
            return cached
        ring, D = self.ring, self.trunc
        if n == 0:
            s = TruncatedSeries.zero(ring, 0 or 1, D)
        elif n == 1:
            s = TruncatedSeries.variable(ring, 1, D, 0)
        elif n == 2:
            s = self.F
        else:
            rest = embed(self.nary_sum(n - 1), n, list(range(1, n)))
            s = self.F.substitute([embed_var(ring, n, D, 0), rest])
        self._nary[n] = s
        return s

    def kappa(self):
        """g with x +F y = x + y - x*y*g(x, y); cached."""
        if self._kappa is None:
            ring, D = self.ring, self.trunc
            x = TruncatedSeries.variable(ring, 2, D, 0)
            y = TruncatedSeries.variable(ring, 2, D, 1)
            num = x + y - self.F
            self._kappa = num.exact_divide(x).exact_divide(y)
        return self._kappa

    def twist(self, lam):
        """Conjugate the law by a coordinate change lam = (unit)x + higher.

        ``lam`` must live over a ring extending self.ring (same generator
        names present); returns the law lam(F(lam^-1 x, lam^-1 y)) over
        lam's ring, with the transported logarithm when one exists.
        """
        target = lam.ring
        lin = lam.coefficient((1,))
        if not lin.is_constant() or lin.is_zero():
            raise ValueError("twist requires a unit linear coefficient")
        incl = ring_inclusion(self.ring, target)
        F = self.F.map_coefficients(incl, target)
        inverse = self.inverse.map_coefficients(incl, target)
        lam_inv = revert(lam)
        lx = embed(lam_inv, 2, [0])
        ly = embed(lam_inv, 2, [1])
        F2 = lam.substitute([F.substitute([lx, ly])])
        inv2 = lam.substitute([inverse.substitute([lam_inv])])
        log2 = None
        if self.log is not None:
            log2 = self.log.map_coefficients(incl, target).substitute([lam_inv])
        return FormalGroupLaw(target, self.trunc, F2, inv2, "twisted", log=log2)

    def specialize(self, assignment, target_ring):
        """Push the law through a coefficient specialization."""
        func = lambda p: p.specialize(assignment, target_ring)
        log = self.log.map_coefficients(func, target_ring) if self.log is not None else None
        return FormalGroupLaw(
            target_ring,
            self.trunc,
            self.F.map_coefficients(func, target_ring),
            self.inverse.map_coefficients(func, target_ring),
            "specialized",
            log=log,
        )

    def __repr__(self):
        return f"FormalGroupLaw({self.tag}, trunc={self.trunc})"


def embed_var(ring, n, trunc, index):
    return TruncatedSeries.variable(ring, n, trunc, index)


def ring_inclusion(src, dst):
    """Coefficient morphism matching generators of ``src`` by name in ``dst``."""
    positions = []
    for name, weight in src.generators:
        idx = dst.names.index(name)
        if dst.weights[idx] != weight:
            raise RingMismatchError(f"generator {name} changes weight")
        positions.append(idx)

    def func(p):
        terms = {}
        for e, c in p.terms.items():
            out = [0] * dst.ngens
            for i, k in enumerate(e):
                out[positions[i]] = k
            terms[tuple(out)] = c
        from .coeffring import CoeffPoly

        return CoeffPoly(dst, terms, _clean=False)

    return func


def _log_from_coeffs(ring, trunc, coeffs):
    terms = {(1,): ring.one()}
    for i, c in enumerate(coeffs, start=1):
        if i + 1 <= trunc and not c.is_zero():
            terms[(i + 1,)] = c
    return TruncatedSeries.from_terms(ring, 1, trunc, terms)


def _solve_inverse(F):
    """Solve F(x, i(x)) = 0 degree by degree."""
    ring, D = F.ring, F.trunc
    x = TruncatedSeries.variable(ring, 1, D, 0)
    inv = -x
    for k in range(2, D + 1):
        r = F.substitute([x, inv])
        c = r.coefficient((k,))
        if not c.is_zero():
            inv = inv - TruncatedSeries.from_terms(ring, 1, D, {(k,): c})
    return inv
