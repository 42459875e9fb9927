"""The formal group ring of a weight lattice, with its difference operators.

Elements live in R[[y_1..y_n]] where y_i is the class of the i-th
fundamental weight; x_lambda for an arbitrary weight is assembled with the
formal group law, the Weyl group acts by substitution, and the two
first-order operators are

    delta_i(u) = (u - s_i(u)) / x_{alpha_i}
    cc_i(u)    = u * kappa_i - delta_i(u),   kappa_i = g(x_alpha, x_{-alpha})

where g is the law's kappa series.  Apart from x_lambda values and kappa
elements (cached, immutable after fill) every operation is pure, so shared
instances are safe under concurrent reads; cache insertions are idempotent.

The torsion index and its witness u0 are computed in the additive model:
the operators induce the classical divided differences on the associated
graded ring, so the Bezout combination of degree-N monomials realizing
gcd(eps delta_{I0}(monomial)) lifts verbatim to any law.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeffring import CoeffRing
from .errors import InsufficientPrecisionError, RingMismatchError
from .fgl import FormalGroupLaw
from .tseries import TruncatedSeries, _degree_monomials


@dataclass(frozen=True)
class FGRingElement:
    """An element of the formal group ring, tied to its parent ring."""

    parent: "FormalGroupRing"
    series: TruncatedSeries

    @property
    def valid_degree(self):
        return self.series.valid_degree

    def augmentation(self):
        return self.series.constant_term()

    def restrict(self, d):
        return FGRingElement(self.parent, self.series.restrict(d))

    def _lift(self, other):
        if isinstance(other, FGRingElement):
            if other.parent is not self.parent:
                raise RingMismatchError("elements of different formal group rings")
            return other.series
        return TruncatedSeries.const(
            self.series.ring, self.series.n_vars, self.series.trunc, other
        )

    def __add__(self, other):
        return FGRingElement(self.parent, self.series + self._lift(other))

    __radd__ = __add__

    def __neg__(self):
        return FGRingElement(self.parent, -self.series)

    def __sub__(self, other):
        return FGRingElement(self.parent, self.series - self._lift(other))

    def __rsub__(self, other):
        return FGRingElement(self.parent, self._lift(other) - self.series)

    def __mul__(self, other):
        if isinstance(other, FGRingElement):
            return FGRingElement(self.parent, self.series * other.series)
        return FGRingElement(self.parent, self.series * other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FGRingElement):
            return NotImplemented
        return self.parent is other.parent and self.series == other.series

    __hash__ = None

    def __repr__(self):
        return f"FGRingElement({self.series})"


@dataclass(frozen=True)
class TorsionData:
    """Torsion index t with a degree-N witness u0 (eps delta_{I0}(u0) = t)."""

    t: int
    u0: FGRingElement
    monomials: tuple  # ((exponent tuple, integer coefficient), ...)


class FormalGroupRing:
    """R[[M]]_F in fundamental-weight coordinates for a fixed root datum."""

    def __init__(self, datum, law):
        self.datum = datum
        self.law = law
        self.ring = law.ring
        self.trunc = law.trunc
        self.n = datum.rank
        self._x_lambda = {}
        self._kappa = {}
        self._s_powers = {}

    # -- element constructors ---------------------------------------------

    def element(self, series):
        return FGRingElement(self, series)

    def zero(self):
        return self.element(TruncatedSeries.zero(self.ring, self.n, self.trunc))

    def one(self):
        return self.element(TruncatedSeries.const(self.ring, self.n, self.trunc, 1))

    def const(self, c):
        return self.element(TruncatedSeries.const(self.ring, self.n, self.trunc, c))

    def variable(self, i):
        return self.element(TruncatedSeries.variable(self.ring, self.n, self.trunc, i))

    def from_monomials(self, monomials):
        """Element from {y-exponent tuple: coefficient}, exact to truncation."""
        return self.element(
            TruncatedSeries.from_terms(self.ring, self.n, self.trunc, monomials)
        )

    # -- x_lambda and the Weyl action ----------------------------------------

    def x_lambda_series(self, lam):
        lam = tuple(int(c) for c in lam)
        cached = self._x_lambda.get(lam)
        if cached is not None:
            return cached
        law = self.law
        images = []
        for i, c in enumerate(lam):
            var = TruncatedSeries.variable(self.ring, self.n, self.trunc, i)
            if c == 0:
                images.append(TruncatedSeries.zero(self.ring, self.n, self.trunc))
            elif c == 1:
                images.append(var)
            else:
                images.append(law.multiple_series(c).substitute([var]))
        if self.n == 1:
            series = images[0]
        else:
            series = law.nary_sum(self.n).substitute(images)
        self._x_lambda[lam] = series
        return series

    def x_lambda(self, lam):
        return self.element(self.x_lambda_series(lam))

    def _s_power(self, i, k):
        """k-th power of x_{s_i(omega_i)}, cached at full truncation."""
        key = (i, k)
        cached = self._s_powers.get(key)
        if cached is None:
            if k == 1:
                cached = self.x_lambda_series(
                    self.datum.reflect(i - 1, self.datum.fundamental_weight(i - 1))
                )
            else:
                cached = self._s_power(i, k - 1) * self._s_power(i, 1)
            self._s_powers[key] = cached
        return cached

    def s_act(self, i, u):
        """Action of the simple reflection s_i (1-based index).

        The substitution touches a single variable, so the element is
        regrouped by the exponent of y_i and recombined against cached
        powers of x_{s_i(omega_i)}.
        """
        s = u.series
        v = s.valid_degree
        groups = {}
        for e, p in s.coeffs.items():
            k = e[i - 1]
            e0 = e[: i - 1] + (0,) + e[i:]
            groups.setdefault(k, {})[e0] = p
        acc = TruncatedSeries.zero(self.ring, self.n, self.trunc, v)
        for k in sorted(groups):
            part = TruncatedSeries(self.ring, self.n, self.trunc, v, groups[k], _clean=False)
            if k:
                if k > v:
                    continue
                part = part * self._s_power(i, k)
            acc = acc + part
        return self.element(acc)

    def weyl_act(self, w, u):
        """Action of a Weyl element (or an explicit word) on u."""
        word = w if isinstance(w, tuple) else w.canonical_word
        for i in reversed(word):
            u = self.s_act(i, u)
        return u

    def reflection_act(self, root, coroot, u):
        """Action of the reflection at an arbitrary root (weight coords)."""
        images = []
        for j in range(self.n):
            om = self.datum.fundamental_weight(j)
            lam = tuple(om[k] - coroot[j] * root[k] for k in range(self.n))
            images.append(self.x_lambda_series(lam))
        return self.element(u.series.substitute(images))

    # -- operators ------------------------------------------------------------

    def _require_valid(self, u, need, what):
        if u.valid_degree < need:
            raise InsufficientPrecisionError(
                f"{what} needs valid degree {need}, element has {u.valid_degree}",
                deficit=need - u.valid_degree,
            )

    def delta(self, i, u):
        """delta_i(u) = (u - s_i(u)) / x_{alpha_i}; drops one valid degree."""
        self._require_valid(u, 1, "delta")
        num = u.series - self.s_act(i, u).series
        den = self.x_lambda_series(self.datum.simple_roots[i - 1])
        return self.element(num.exact_divide(den))

    def delta_neg(self, i, u):
        """delta at the negative simple root: (u - s_i(u)) / x_{-alpha_i}."""
        self._require_valid(u, 1, "delta")
        num = u.series - self.s_act(i, u).series
        root = self.datum.simple_roots[i - 1]
        den = self.x_lambda_series(tuple(-c for c in root))
        return self.element(num.exact_divide(den))

    def delta_root(self, root, coroot, u):
        """delta at an arbitrary root given with its coroot pairing row."""
        self._require_valid(u, 1, "delta")
        num = u.series - self.reflection_act(root, coroot, u).series
        return self.element(num.exact_divide(self.x_lambda_series(root)))

    def kappa_element(self, i):
        """kappa_alpha = g(x_alpha, x_{-alpha}) for the i-th simple root."""
        cached = self._kappa.get(i)
        if cached is None:
            root = self.datum.simple_roots[i - 1]
            cached = self._kappa_for_root(root)
            self._kappa[i] = cached
        return self.element(cached)

    def _kappa_for_root(self, root):
        xp = self.x_lambda_series(root)
        xm = self.x_lambda_series(tuple(-c for c in root))
        return self.law.kappa().substitute([xp, xm])

    def cc(self, i, u):
        """cc_i(u) = u * kappa_i - delta_i(u)."""
        self._require_valid(u, 1, "cc")
        return u * self.kappa_element(i) - self.delta(i, u)

    def cc_neg(self, i, u):
        """The push-pull operator at the negative simple root.

        kappa is symmetric in its two slots, so only the difference-operator
        part changes: cc_{-alpha}(u) = u * kappa_i - delta_{-alpha}(u).
        """
        self._require_valid(u, 1, "cc")
        return u * self.kappa_element(i) - self.delta_neg(i, u)

    def cc_root(self, root, coroot, u):
        self._require_valid(u, 1, "cc")
        kap = self.element(self._kappa_for_root(root))
        return u * kap - self.delta_root(root, coroot, u)

    def delta_word(self, word, u):
        """Composite delta along a word, leftmost operator applied last."""
        self._require_valid(u, len(word), "delta_word")
        for i in reversed(word):
            u = self.delta(i, u)
        return u

    def c_word(self, word, u):
        self._require_valid(u, len(word), "c_word")
        for i in reversed(word):
            u = self.cc(i, u)
        return u

    def theta(self, word, subset, u):
        """Theta_K for K a set of positions (1-based) in ``word``.

        Position j contributes delta at -alpha_{i_j} when j is in K and the
        plain reflection s_{i_j} otherwise; factors compose like delta_word.
        """
        subset = set(subset)
        self._require_valid(u, len(subset), "theta")
        for j in range(len(word), 0, -1):
            i = word[j - 1]
            if j in subset:
                u = self.delta_neg(i, u)
            else:
                u = self.s_act(i, u)
        return u

    def augmentation(self, u):
        return u.series.constant_term()

    # -- torsion index ---------------------------------------------------------

    def torsion_and_u0(self):
        """Torsion index and an integral degree-N witness, lifted to this ring."""
        t, monomials = torsion_bezout(self.datum)
        u0 = self.from_monomials(dict(monomials))
        return TorsionData(t, u0, monomials)

    # -- module decomposition ----------------------------------------------------

    def decompose_over_invariants(self, x, torsion):
        """Coefficients r_w with delta_{I_v}(x) = sum_w r_w delta_{I_v}delta_{I_w}(u0).

        Requires a rationalized coefficient ring (the torsion index is
        inverted during elimination).  Returns {canonical word: FGRingElement}.
        """
        if not self.ring.rational_mode:
            raise RingMismatchError("decomposition needs a rationalized ring")
        elements = self.datum.weyl_elements()
        w0 = self.datum.longest_element()
        u0 = torsion.u0
        # Cache delta_{I_w}(u0) by shared suffix of the canonical words.
        du0 = {(): u0}

        def chain(word, base, cache):
            if word in cache:
                return cache[word]
            prev = chain(word[1:], base, cache)
            val = self.delta(word[0], prev)
            cache[word] = val
            return val

        rows = sorted(elements, key=lambda w: (w.length, w.canonical_word))
        cols = [self.datum.multiply(self.datum.inverse(v), w0) for v in rows]
        dx = {}
        for v in rows:
            dx[v.canonical_word] = self.delta_word(v.canonical_word, x)
        mat = []
        for v in rows:
            row = []
            for w in cols:
                inner = chain(w.canonical_word, u0, du0) if w.length else u0
                row.append(self.delta_word(v.canonical_word, inner).series)
            mat.append(row)
        rhs = [dx[v.canonical_word].series for v in rows]
        size = len(rows)
        # Gaussian elimination with unit pivots: diagonal entries have
        # constant term t, off-diagonal entries below are in the augmentation
        # ideal, so pivoting on the diagonal always succeeds.
        mat = [row[:] for row in mat]
        for k in range(size):
            pivot_inv = mat[k][k].invert_unit()
            for r in range(size):
                if r == k:
                    continue
                f = mat[r][k]
                if f.is_zero():
                    continue
                factor = f * pivot_inv
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[k])]
                rhs[r] = rhs[r] - factor * rhs[k]
        out = {}
        for k, w in enumerate(cols):
            sol = rhs[k] * mat[k][k].invert_unit()
            out[w.canonical_word] = self.element(sol)
        return out


def _ext_gcd(a, b):
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def torsion_bezout(datum):
    """Torsion index of the root datum with a Bezout witness.

    Works in the additive model: evaluates eps delta_{I0} on the degree-N
    monomial basis of the symmetric algebra and folds the extended gcd over
    the values in the canonical monomial order.  Returns (t, monomials)
    where monomials is a tuple of (exponent tuple, int) pairs summing to an
    integral homogeneous u0 of degree N.
    """
    N = datum.N
    ring = CoeffRing((), rational_mode=True)
    law = FormalGroupLaw.additive(N + 1, ring)
    fgr = FormalGroupRing(datum, law)
    word = datum.longest_element().canonical_word
    basis = sorted(_degree_monomials(datum.rank, N))
    values = []
    for mono in basis:
        elt = fgr.from_monomials({mono: 1})
        val = fgr.augmentation(fgr.delta_word(word, elt))
        c = val.constant_term()
        assert c == int(c), "additive divided difference must be integral"
        values.append(int(c))
    g = 0
    combo = []
    for v in values:
        g2, xs, ys = _ext_gcd(g, v)
        combo = [c * xs for c in combo]
        combo.append(ys)
        g = g2
    assert g > 0, "torsion evaluation cannot be identically zero"
    monomials = tuple(
        (mono, c) for mono, c in zip(basis, combo) if c
    )
    return g, monomials
