"""The algebraic model of H*(G/B): bases, products, push-forward, operations.

A :class:`FlagBasis` fixes a root datum, a formal group law, the canonical
reduced words I_w, the torsion witness u0 and the memoized chain elements
Cs_{I_w^rev}(u0), where Cs is the push-pull operator taken at the negative
simple roots.  Classes are coordinate vectors over the geometric basis
b_{I_w} (push-forwards of desingularized Schubert classes).  Products and
arbitrary-word classes are computed through the characteristic map: the
coordinates of c(u) in the dual a-basis are eps Cs_{I_w}(u), and the
transition matrix P[v][w] = eps Cs_{I_v}(Cs_{I_w^rev}(u0)) with
t * b_w = sum_v P[v][w] a_v converts back to the b-basis.  P is block
triangular with the torsion index t on the pairing diagonal v = w0 w, so it
is inverted exactly by back substitution, dividing only by t.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeffring import CoeffPoly, CoeffRing, assert_integer
from .errors import InsufficientPrecisionError, RingMismatchError
from .fgl import revert
from .fgring import FormalGroupRing
from .tseries import TruncatedSeries


def default_truncation(datum):
    """Two operator chains of length N plus one constant-term read."""
    return 2 * datum.N + 1


class FlagBasis:
    """Basis data for one (root datum, formal group law) pair."""

    def __init__(self, datum, law):
        self.datum = datum
        self.law = law
        self.fgr = FormalGroupRing(datum, law)
        self.N = datum.N
        if law.trunc < self.N + 1:
            raise ValueError(f"truncation must be at least N+1 = {self.N + 1}")
        self.elements = datum.weyl_elements()
        self.w0 = datum.longest_element()
        self.torsion = self.fgr.torsion_and_u0()
        self.t = self.torsion.t
        self.ring = law.ring
        self._cu0 = {(): self.torsion.u0}
        self._P = None
        self._Pinv = None
        self._unit = None
        self._eps_c_one = None
        self._products = {}

    # -- cached operator chains ------------------------------------------

    # The basis pipeline runs through the push-pull operator at the
    # NEGATIVE simple roots ("Cs" below): the projective-bundle classes of
    # the desingularization towers restrict to x_{-alpha}, so the chains
    # that realize geometric basis elements are C_{-alpha} compositions.
    # With this orientation eps Cs_I(u0) = t for reduced words of length N,
    # the transition matrix has +t on its pairing diagonal, the unit
    # decomposes with coefficient +1 at the longest word, and the rank-2
    # tables come out with their known signs.  The positive-root operator C
    # (for which eps C_I(u0) = (-1)^N t) is kept for the tower push-forward.

    def cs(self, i, u):
        return self.fgr.cc_neg(i, u)

    def c_chain_u0(self, word):
        """Cs_word(u0) with shared suffix caching (word applied right to left)."""
        cached = self._cu0.get(word)
        if cached is None:
            prev = self.c_chain_u0(word[1:])
            cached = self.cs(word[0], prev)
            self._cu0[word] = cached
        return cached

    def c_of_u0(self, w):
        """Cs_{I_w^rev}(u0) for a Weyl element w."""
        return self.c_chain_u0(tuple(reversed(w.canonical_word)))

    def eps_vector(self, u, variant="Cs"):
        """(eps Op_{I_w}(u))_w as {canonical word: CoeffPoly}.

        Variants: "Cs" the negative-root push-pull operator (the basis
        pipeline), "C" the positive-root one, "D" the difference operator.
        """
        op = {
            "Cs": self.cs,
            "C": self.fgr.cc,
            "D": self.fgr.delta,
        }[variant]
        cache = {(): u}

        def chain(word):
            got = cache.get(word)
            if got is None:
                got = op(word[0], chain(word[1:]))
                cache[word] = got
            return got

        out = {}
        for w in self.elements:
            out[w.canonical_word] = self.fgr.augmentation(chain(w.canonical_word))
        return out

    # -- transition matrix --------------------------------------------------

    def transition_matrix(self):
        """(P, P_inverse) with P[v][w] = eps C_{I_v}(C_{I_w^rev}(u0))."""
        if self._P is not None:
            return self._P, self._Pinv
        words = [w.canonical_word for w in self.elements]
        P = {}
        for w in self.elements:
            column = self.eps_vector(self.c_of_u0(w).restrict(self.N))
            for v in self.elements:
                P[(v.canonical_word, w.canonical_word)] = column[v.canonical_word]
        # Row permutation pairing v_r = w0 * w_r makes P upper triangular
        # (in the column order of self.elements) with constant diagonal.
        diag = Fraction(self.t)
        perm = [
            self.datum.multiply(self.w0, w).canonical_word for w in self.elements
        ]
        for r, vr in enumerate(perm):
            d = P[(vr, words[r])]
            if not (d.is_constant() and d.constant_term() == diag):
                raise AssertionError("transition matrix diagonal is not t")
            for c in range(r):
                if not P[(vr, words[c])].is_zero():
                    raise AssertionError("transition matrix is not triangular")
        size = len(words)
        inv = {}
        for u in range(size):
            # solve P x = e_{words[u]} by back substitution over rows perm[r]
            x = [None] * size
            for r in range(size - 1, -1, -1):
                acc = self.ring.const(1 if perm[r] == words[u] else 0)
                for c in range(r + 1, size):
                    pc = P[(perm[r], words[c])]
                    if not pc.is_zero() and not x[c].is_zero():
                        acc = acc - pc * x[c]
                x[r] = acc.scale(Fraction(1) / diag)
            for w_idx in range(size):
                inv[(words[w_idx], words[u])] = x[w_idx]
        self._P, self._Pinv = P, inv
        return P, inv

    def convert_a_to_b(self, avec, integral=True):
        """b-coordinates t * P^{-1} q of the class with a-coordinates q."""
        _, inv = self.transition_matrix()
        words = [w.canonical_word for w in self.elements]
        coords = {}
        for w in words:
            acc = self.ring.zero()
            for v in words:
                f = inv[(w, v)]
                q = avec[v]
                if not f.is_zero() and not q.is_zero():
                    acc = acc + f * q
            acc = acc.scale(self.t)
            if not acc.is_zero():
                coords[w] = acc
        if integral and self.ring.rational_mode:
            for w, c in coords.items():
                assert_integer(c, f"b-coordinate at {w}")
        return coords

    # -- distinguished classes -----------------------------------------------

    def basis_class(self, w):
        return FlagClass(self, {w.canonical_word: self.ring.one()})

    def point_class(self):
        return FlagClass(self, {(): self.ring.one()})

    def zero_class(self):
        return FlagClass(self, {})

    def eps_c_one(self):
        if self._eps_c_one is None:
            self._eps_c_one = self.eps_vector(self.fgr.one())
        return self._eps_c_one

    def unit_class(self):
        """The ring unit, decomposed over the b-basis; unit coefficient at w0 is 1."""
        if self._unit is None:
            coords = self.convert_a_to_b(self.eps_c_one())
            top = coords.get(self.w0.canonical_word)
            if top != self.ring.one():
                raise AssertionError("unit class has non-unit top coefficient")
            self._unit = FlagClass(self, coords)
        return self._unit

    def dual_class(self, v):
        """The a-basis element dual to b_v under the push-forward pairing."""
        _, inv = self.transition_matrix()
        coords = {}
        for w in self.elements:
            f = inv[(w.canonical_word, v.canonical_word)].scale(self.t)
            if not f.is_zero():
                coords[w.canonical_word] = f
        return FlagClass(self, coords)

    # -- characteristic map and word classes -------------------------------------

    def char_map(self, u, variant="C"):
        """Coordinates of c(u) over the z-basis: (eps Op_{I_w}(u))_w."""
        if u.valid_degree < self.N:
            raise InsufficientPrecisionError(
                f"characteristic map needs valid degree {self.N}",
                deficit=self.N - u.valid_degree,
            )
        return self.eps_vector(u, variant)

    def bclass(self, word):
        """Class of the desingularized Schubert cycle attached to any word."""
        word = tuple(word)
        need = self.N + len(word) + 1
        if self.law.trunc < need:
            raise InsufficientPrecisionError(
                f"word of length {len(word)} needs truncation >= {need}",
                deficit=need - self.law.trunc,
            )
        u = self.torsion.u0
        for i in word:
            u = self.cs(i, u)
        q = self.eps_vector(u.restrict(self.N))
        coords = self.convert_a_to_b(q)
        coords = {w: c.scale(Fraction(1, self.t)) for w, c in coords.items()}
        out = {}
        for w, c in coords.items():
            if not c.is_zero():
                if self.ring.rational_mode:
                    assert_integer(c, f"bclass({word}) at {w}")
                out[w] = c
        return FlagClass(self, out)

    # -- products -------------------------------------------------------------

    def basis_product(self, w1, w2):
        """b_{I_w1} * b_{I_w2} as a FlagClass, memoized."""
        k1, k2 = w1.canonical_word, w2.canonical_word
        if (len(k1), k1) > (len(k2), k2):
            k1, k2 = k2, k1
            w1, w2 = w2, w1
        key = (k1, k2)
        cached = self._products.get(key)
        if cached is not None:
            return cached
        total = w1.length + w2.length
        if total < self.N:
            result = self.zero_class()
        elif total == self.N:
            w0w2 = self.datum.multiply(self.w0, w2)
            result = self.point_class() if w1.matrix == w0w2.matrix else self.zero_class()
        else:
            u = self.c_of_u0(w1).restrict(self.N) * self.c_of_u0(w2).restrict(self.N)
            q = self.eps_vector(u)
            coords = self.convert_a_to_b(q, integral=False)
            out = {}
            for w, c in coords.items():
                # t^2 (b_w1 b_w2) = c(C..(u0) C..(u0)) and convert_a_to_b
                # already multiplied by t, so divide by t^2 here.
                c = c.scale(Fraction(1, self.t * self.t))
                if not c.is_zero():
                    if self.ring.rational_mode:
                        assert_integer(c, f"product {k1} * {k2} at {w}")
                    out[w] = c
            result = FlagClass(self, out)
        self._products[key] = result
        return result

    # -- push-forward to the point --------------------------------------------

    def pushforward_point(self, cls):
        """pr: linear extension of pr(b_{I_w}) = eps Cs_{I_w}(1)."""
        vec = self.eps_c_one()
        acc = self.ring.zero()
        for w, c in cls.coords.items():
            f = vec[w]
            if not f.is_zero():
                acc = acc + c * f
        return acc

    # -- push-pull operators ----------------------------------------------------

    def a_operator(self, i, cls):
        """Algebraic p_i^* p_{i*}: sends b_J to the class of the word J + (i)."""
        out = self.zero_class()
        for w, c in cls.coords.items():
            out = out + self.bclass(w + (i,)).scale(c)
        return out

    def b_operator(self, i, cls):
        """The delta-variant operator through the u-representative route."""
        u = self._u_representative(cls)
        du = self.fgr.delta(i, u)
        if du.valid_degree < self.N:
            raise InsufficientPrecisionError(
                "b_operator needs one more valid degree",
                deficit=self.N - du.valid_degree,
            )
        q = self.eps_vector(du.restrict(self.N))
        coords = self.convert_a_to_b(q, integral=False)
        coords = {w: c.scale(Fraction(1, self.t)) for w, c in coords.items()}
        return FlagClass(self, {w: c for w, c in coords.items() if not c.is_zero()})

    def _u_representative(self, cls):
        """u with c(u) = t * cls, namely sum coords_w Cs_{I_w^rev}(u0)."""
        acc = None
        for w in self.elements:
            c = cls.coords.get(w.canonical_word)
            if c is None or c.is_zero():
                continue
            term = self.c_of_u0(w) * c
            acc = term if acc is None else acc + term
        if acc is None:
            return self.fgr.zero()
        return acc

    # -- Landweber-Novikov ---------------------------------------------------------

    def ln_operation(self, weight_bound, cls):
        """Coefficient classes of the total twisted-coordinate operation.

        Returns {t-exponent tuple: FlagClass}; the empty index recovers the
        class itself.  Only available over the universal law.
        """
        if self.law.tag != "universal" or self.law.log is None:
            raise RingMismatchError("operations need the universal law")
        if weight_bound < 0:
            raise ValueError("weight bound must be >= 0")
        mring = self.ring
        tgens = tuple((f"t{k}", k) for k in range(1, weight_bound + 1))
        ext = CoeffRing(mring.generators + tgens, rational_mode=True)
        D = self.law.trunc
        lam_terms = {(1,): ext.one()}
        for k in range(1, weight_bound + 1):
            if k + 1 <= D:
                lam_terms[(k + 1,)] = ext.gen(f"t{k}")
        lam = TruncatedSeries.from_terms(ext, 1, D, lam_terms)
        lam_inv = revert(lam)
        # Coefficient morphism: m_i -> [x^{i+1}] log(lam_inv(x)).
        incl = {name: ext.gen(name) for name in mring.names}
        log_ext = self.law.log.map_coefficients(lambda p: p.specialize(incl, ext), ext)
        log_tw = log_ext.substitute([lam_inv])
        m_images = {}
        for idx, name in enumerate(mring.names, start=1):
            m_images[name] = (
                log_tw.coefficient((idx + 1,)) if idx + 1 <= D else ext.zero()
            )
        u = self._u_representative(cls)
        if u.valid_degree < self.N:
            raise InsufficientPrecisionError(
                "operation source needs valid degree N",
                deficit=self.N - u.valid_degree,
            )
        u_ext = u.series.map_coefficients(lambda p: p.specialize(m_images, ext), ext)
        images = [
            lam.substitute([TruncatedSeries.variable(ext, self.datum.rank, D, i)])
            for i in range(self.datum.rank)
        ]
        img = u_ext.substitute(images)
        # Split off the t-monomials; remaining coefficients live over mring.
        nm = mring.ngens
        pieces = {}
        for e, p in img.coeffs.items():
            for exps, c in p.terms.items():
                mexp, texp = exps[:nm], exps[nm:]
                tw = sum(k * v for k, v in zip(range(1, weight_bound + 1), texp))
                if tw > weight_bound:
                    continue
                layer = pieces.setdefault(texp, {})
                layer.setdefault(e, {})[mexp] = c
        out = {}
        for texp in sorted(pieces):
            terms = {e: CoeffPoly(mring, d) for e, d in pieces[texp].items()}
            series = TruncatedSeries(
                mring, self.datum.rank, D, u.valid_degree,
                {e: p for e, p in terms.items() if not p.is_zero()},
            )
            q = self.eps_vector(self.fgr.element(series).restrict(self.N))
            coords = self.convert_a_to_b(q)
            coords = {
                w: c.scale(Fraction(1, self.t)) for w, c in coords.items()
            }
            cleaned = {}
            for w, c in coords.items():
                if not c.is_zero():
                    assert_integer(c, f"operation coefficient at {w}")
                    cleaned[w] = c
            out[texp] = FlagClass(self, cleaned)
        return out


@dataclass
class FlagClass:
    """Coordinate vector over the b-basis {b_{I_w}} of a FlagBasis."""

    basis: FlagBasis
    coords: dict

    def _check(self, other):
        if self.basis is not other.basis:
            raise RingMismatchError("classes from different bases")

    def __add__(self, other):
        self._check(other)
        coords = dict(self.coords)
        for w, c in other.coords.items():
            s = coords.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                coords.pop(w, None)
            else:
                coords[w] = s
        return FlagClass(self.basis, coords)

    def __neg__(self):
        return FlagClass(self.basis, {w: -c for w, c in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not hasattr(c, "ring"):
            c = self.basis.ring.const(c)
        out = {}
        for w, v in self.coords.items():
            p = v * c
            if not p.is_zero():
                out[w] = p
        return FlagClass(self.basis, out)

    def __mul__(self, other):
        """Ring product through the characteristic-map algorithm."""
        self._check(other)
        by_word = {w.canonical_word: w for w in self.basis.elements}
        acc = self.basis.zero_class()
        for w1, c1 in self.coords.items():
            for w2, c2 in other.coords.items():
                prod = self.basis.basis_product(by_word[w1], by_word[w2])
                acc = acc + prod.scale(c1 * c2)
        return acc

    def __eq__(self, other):
        if not isinstance(other, FlagClass):
            return NotImplemented
        return self.basis is other.basis and self.coords == other.coords

    __hash__ = None

    def is_zero(self):
        return not self.coords

    def pr(self):
        return self.basis.pushforward_point(self)

    def codim_weights_ok(self, codim):
        """Each coordinate homogeneous of weight codim(w) - codim (or absent)."""
        N = self.basis.N
        by_word = {w.canonical_word: w for w in self.basis.elements}
        for word, c in self.coords.items():
            want = (N - by_word[word].length) - codim
            if want < 0 or not c.is_homogeneous(want):
                return False
        return True

    def display_coords(self):
        """Coordinates over {1} u {b_w : w != w0}, the conventional table basis."""
        top_word = self.basis.w0.canonical_word
        top = self.coords.get(top_word)
        if top is None or top.is_zero():
            return dict(self.coords), self.basis.ring.zero()
        unit = self.basis.unit_class()
        out = {}
        for w, c in self.coords.items():
            if w == top_word:
                continue
            out[w] = c
        for w, u in unit.coords.items():
            if w == top_word:
                continue
            s = out.get(w, self.basis.ring.zero()) - top * u
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return out, top

    def __repr__(self):
        parts = [f"{c} * b[{''.join(map(str, w)) or 'pt'}]" for w, c in sorted(self.coords.items())]
        return "FlagClass(" + (" + ".join(parts) or "0") + ")"
