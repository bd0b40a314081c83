"""Sparse bivariate polynomials over a Galois field.

Covers leading power products under both supported orderings, evaluation,
the linear recurrence bracket f[U]_n on doubly periodic arrays, prefix
generation tests, and an S-polynomial reduction check in the style of
Buchberger's criterion.
"""

from __future__ import annotations

import re

from .gf import FieldError
from .lattice import GRADED, lt_total, padd, precedes, psub, sort_key


class NeededCellUnknown(Exception):
    """A recurrence touched a table cell whose value is unknown."""

    def __init__(self, position):
        super().__init__(f"needed cell {position} is unknown")
        self.position = position


class EvaluationPoint:
    """A pair of primitive roots of unity of orders (r1, r2)."""

    __slots__ = ("alpha1", "alpha2", "r1", "r2")

    def __init__(self, alpha1, alpha2, r1, r2):
        for alpha, r, name in ((alpha1, r1, "alpha1"), (alpha2, r2, "alpha2")):
            if not alpha or alpha.multiplicative_order() != r:
                raise FieldError(f"{name} must have multiplicative order exactly {r}")
        self.alpha1, self.alpha2 = alpha1, alpha2
        self.r1, self.r2 = r1, r2

    @classmethod
    def from_exponents(cls, field, exps, shape):
        return cls(field.from_log(exps[0]), field.from_log(exps[1]), shape[0], shape[1])

    @property
    def exponents(self):
        return (self.alpha1.log, self.alpha2.log)

    def at(self, n):
        """(alpha1^n1, alpha2^n2)."""
        return (self.alpha1 ** n[0], self.alpha2 ** n[1])

    def power(self, n, m):
        """alpha1^(n1*m1) * alpha2^(n2*m2) as a single field element."""
        return (self.alpha1 ** (n[0] * m[0])) * (self.alpha2 ** (n[1] * m[1]))


class BivariatePolynomial:
    """Map from exponent pairs to nonzero coefficients; empty map is zero."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=None):
        self.field = field
        self.coeffs = {m: c for m, c in (coeffs or {}).items() if c}

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def one(cls, field):
        return cls(field, {(0, 0): field.one()})

    @classmethod
    def monomial(cls, field, exp, coeff=None):
        return cls(field, {tuple(exp): field.one() if coeff is None else coeff})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def key(self):
        """Hashable canonical form, for set membership and deduplication."""
        return frozenset((m, c.log) for m, c in self.coeffs.items())

    def support(self):
        return set(self.coeffs)

    def terms(self):
        """Terms sorted by descending graded key, for stable display."""
        return sorted(self.coeffs.items(), key=lambda mc: sort_key(mc[0], GRADED), reverse=True)

    def lp(self, order):
        if not self.coeffs:
            raise FieldError("the zero polynomial has no leading power product")
        return max(self.coeffs, key=lambda m: sort_key(m, order))

    def lc(self, order):
        return self.coeffs[self.lp(order)]

    def monic(self, order):
        lc = self.lc(order)
        if lc == self.field.one():
            return self
        return self.scale(lc.inverse())

    def scale(self, c):
        if not c:
            return BivariatePolynomial(self.field)
        return BivariatePolynomial(self.field, {m: v * c for m, v in self.coeffs.items()})

    def shift(self, a):
        """Multiply by the monomial X^a."""
        if a == (0, 0):
            return self
        if a[0] < 0 or a[1] < 0:
            raise ValueError(f"monomial shift {a} has a negative exponent")
        return BivariatePolynomial(self.field, {padd(m, a): v for m, v in self.coeffs.items()})

    def __add__(self, other):
        if other.field is not self.field:
            raise FieldError("polynomials belong to different fields")
        out = dict(self.coeffs)
        for m, v in other.coeffs.items():
            s = out.get(m)
            out[m] = v if s is None else s + v
        return BivariatePolynomial(self.field, out)

    def __neg__(self):
        return BivariatePolynomial(self.field, {m: -v for m, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BivariatePolynomial):
            out = {}
            for m1, c1 in self.coeffs.items():
                for m2, c2 in other.coeffs.items():
                    m = padd(m1, m2)
                    v = c1 * c2
                    s = out.get(m)
                    out[m] = v if s is None else s + v
            return BivariatePolynomial(self.field, out)
        return self.scale(other)

    def evaluate(self, point):
        """Value at a pair of field elements."""
        x, y = point
        acc = self.field.zero()
        for (i, j), c in self.coeffs.items():
            acc = acc + c * (x ** i) * (y ** j)
        return acc

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<poly {self}>"


def recurrence_value(f, U, n, order):
    """The bracket f[U]_n = sum of f_m * u_(m+n-s) with s = LP(f); zero by
    convention when n is not above s.  Cells are read modulo the array shape.

    Raises NeededCellUnknown when the window touches an unknown cell.
    """
    s = f.lp(order)
    if not precedes(s, n):
        return f.field.zero()
    acc = f.field.zero()
    for m, c in f.coeffs.items():
        pos = (m[0] + n[0] - s[0], m[1] + n[1] - s[1])
        v = U.get(pos)
        if v is None:
            raise NeededCellUnknown((pos[0] % U.shape[0], pos[1] % U.shape[1]))
        acc = acc + c * v
    return acc


def generates_prefix(f, U, l, order):
    """Whether f[U]_k = 0 for every k with LP(f) <= k (componentwise),
    k before l in the total ordering, and k inside the base grid."""
    s = f.lp(order)
    r1, r2 = U.shape
    for k1 in range(s[0], r1):
        for k2 in range(s[1], r2):
            k = (k1, k2)
            if lt_total(k, l, order) and recurrence_value(f, U, k, order):
                return False
    return True


# -- division and the Buchberger criterion ------------------------------------


def _reduce(f, divisors, order):
    """Remainder of multivariate division; divisors are scanned in descending
    leading-power order with first-match selection."""
    divs = sorted((g for g in divisors if g),
                  key=lambda g: sort_key(g.lp(order), order), reverse=True)
    lps = [(g.lp(order), g) for g in divs]
    rem = BivariatePolynomial(f.field)
    h = f
    while h:
        m = h.lp(order)
        c = h.coeffs[m]
        for lp, g in lps:
            if precedes(lp, m):
                h = h - g.shift(psub(m, lp)).scale(c / g.lc(order))
                break
        else:
            rem = rem + BivariatePolynomial.monomial(f.field, m, c)
            h = h - BivariatePolynomial.monomial(f.field, m, c)
    return rem


def s_polynomial(f, g, order):
    mf, mg = f.lp(order), g.lp(order)
    lcm = (max(mf[0], mg[0]), max(mf[1], mg[1]))
    return (f.shift(psub(lcm, mf)).scale(f.lc(order).inverse())
            - g.shift(psub(lcm, mg)).scale(g.lc(order).inverse()))


def buchberger_reduces(polys, order):
    """True when every S-polynomial of a pair reduces to zero modulo the set."""
    ps = [p for p in polys if p]
    if not ps:
        raise FieldError("the Buchberger criterion needs a nonempty set")
    for i in range(len(ps)):
        for j in range(i + 1, len(ps)):
            if _reduce(s_polynomial(ps[i], ps[j], order), ps, order):
                return False
    return True


def reduce_to_zero(f, basis, order):
    return not _reduce(f, basis, order)


# -- text form -----------------------------------------------------------------


def format_poly(f):
    if not f:
        return "0"
    parts = []
    for (i, j), c in f.terms():
        factors = []
        if str(c) != "1" or (i == 0 and j == 0):
            factors.append(str(c))
        if i:
            factors.append("X1" if i == 1 else f"X1^{i}")
        if j:
            factors.append("X2" if j == 1 else f"X2^{j}")
        parts.append("*".join(factors))
    return " + ".join(parts)


def parse_poly(text, field):
    """Parse `+`-separated terms of the form c*X1^i*X2^j."""
    t = text.strip()
    if t == "0":
        return BivariatePolynomial.zero(field)
    poly = BivariatePolynomial.zero(field)
    for raw in t.split("+"):
        term = raw.strip()
        if not term:
            raise FieldError(f"empty term in polynomial {text!r}")
        coeff = field.one()
        exps = [0, 0]
        for factor in term.split("*"):
            factor = factor.strip()
            m = re.fullmatch(r"X([12])(?:\^(\d+))?", factor)
            if m:
                idx = int(m.group(1)) - 1
                exps[idx] += int(m.group(2)) if m.group(2) else 1
            else:
                coeff = coeff * field.parse(factor)
        poly = poly + BivariatePolynomial.monomial(field, tuple(exps), coeff)
    return poly
