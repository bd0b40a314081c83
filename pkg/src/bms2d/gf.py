"""Exact arithmetic in small Galois fields GF(p^n).

Elements are kept in discrete-log form with respect to a fixed primitive
generator ``a``; a side table of polynomial-form codes makes addition O(1).
Fields are built once, validated (irreducible modulus, primitive generator)
and cached, so elements of the same field always share one table set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class FieldError(ValueError):
    pass


# Primitive polynomials by (characteristic, degree), coefficients low to high.
# Every entry is re-verified at construction time, so a bad row cannot pass
# silently.
_PRIMITIVE_POLYS = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 0, 0, 1, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1),
    (2, 13): (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 14): (1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1),
    (2, 15): (1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 16): (1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1),
    (2, 17): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 18): (1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 19): (1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 20): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (2, 1),
    (5, 2): (2, 4, 1),
    (7, 1): (4, 1),
}

_MAX_ORDER = 1 << 20


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _poly_mod(num, den, p):
    """Remainder of num by monic den, both coefficient lists low to high."""
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            for j, dc in enumerate(den):
                num[i - dd + j] = (num[i - dd + j] - c * dc) % p
    return [c % p for c in num[:dd]]


def _is_irreducible(coeffs, p):
    """Trial division by every monic polynomial of degree <= deg/2."""
    from itertools import product

    deg = len(coeffs) - 1
    if deg < 1 or coeffs[-1] % p != 1:
        return False
    for ddeg in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=ddeg):
            den = list(tail) + [1]
            if not any(_poly_mod(coeffs, den, p)):
                return False
    return True


def _parse_modulus(spec, p):
    """Accept a hex/int bitmask (p=2) or a coefficient sequence (any p)."""
    if isinstance(spec, str):
        s = spec.strip()
        if s.lower().startswith("0x") or (p == 2 and re.fullmatch(r"[0-9a-fA-F]+", s)):
            if p != 2:
                raise FieldError("hex modulus masks are only defined for characteristic 2")
            v = int(s, 16)
            return tuple((v >> i) & 1 for i in range(v.bit_length()))
        parts = [t for t in re.split(r"[,\s]+", s) if t]
        return tuple(int(t) % p for t in parts)
    if isinstance(spec, int):
        if p != 2:
            raise FieldError("integer modulus masks are only defined for characteristic 2")
        return tuple((spec >> i) & 1 for i in range(spec.bit_length()))
    return tuple(int(c) % p for c in spec)


@dataclass(frozen=True)
class FieldSpec:
    """Parameters pinning one concrete field GF(q^m), q = p^base_exp."""

    p: int
    base_exp: int
    ext_degree: int
    modulus: tuple
    symbol: str = "a"

    @property
    def q(self):
        return self.p ** self.base_exp

    @property
    def degree(self):
        return self.base_exp * self.ext_degree

    @property
    def order(self):
        return self.p ** self.degree


def default_modulus(p, degree):
    try:
        return _PRIMITIVE_POLYS[(p, degree)]
    except KeyError:
        raise FieldError(f"no built-in primitive polynomial for GF({p}^{degree}); "
                         "pass an explicit modulus") from None


class FieldElement:
    """An element of a Field, stored as a discrete log (-1 encodes zero)."""

    __slots__ = ("field", "log")

    def __init__(self, field, log):
        self.field = field
        self.log = log

    @property
    def code(self):
        """Polynomial-form code (integer with base-p digit coefficients)."""
        return 0 if self.log < 0 else self.field._exp[self.log]

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected a FieldElement, got {type(other).__name__}")
        if other.field is not self.field:
            raise FieldError("elements belong to different fields")

    def __bool__(self):
        return self.log >= 0

    def __add__(self, other):
        self._check(other)
        return self.field.from_code(self.field._add_codes(self.code, other.code))

    def __sub__(self, other):
        self._check(other)
        return self + (-other)

    def __neg__(self):
        if self.field.p == 2 or self.log < 0:
            return self
        return self.field.from_log((self.log + self.field.n_units // 2) % self.field.n_units)

    def __mul__(self, other):
        self._check(other)
        if self.log < 0 or other.log < 0:
            return self.field.zero()
        return self.field.from_log((self.log + other.log) % self.field.n_units)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, k):
        if self.log < 0:
            if k == 0:
                return self.field.one()
            if k < 0:
                raise FieldError("cannot raise zero to a negative power")
            return self
        return self.field.from_log((self.log * k) % self.field.n_units)

    def inverse(self):
        if self.log < 0:
            raise FieldError("zero has no multiplicative inverse")
        return self.field.from_log((-self.log) % self.field.n_units)

    def multiplicative_order(self):
        if self.log < 0:
            raise FieldError("zero has no multiplicative order")
        from math import gcd

        return self.field.n_units // gcd(self.field.n_units, self.log)

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field is other.field and self.log == other.log

    def __hash__(self):
        return hash((id(self.field), self.log))

    def __str__(self):
        sym = self.field.spec.symbol
        if self.log < 0:
            return "0"
        if self.log == 0:
            return "1"
        if self.log == 1:
            return sym
        return f"{sym}^{self.log}"

    def __repr__(self):
        return f"<{self} in {self.field!r}>"


class Field:
    """GF(p^n) with exp/log tables; immutable after construction."""

    def __init__(self, spec):
        p, d = spec.p, spec.degree
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        if spec.base_exp < 1 or spec.ext_degree < 1:
            raise FieldError("field degrees must be positive")
        order = p ** d
        if order > _MAX_ORDER:
            raise FieldError(f"field of order {order} exceeds the table cap {_MAX_ORDER}")
        mod = tuple(c % p for c in spec.modulus)
        while mod and mod[-1] == 0:
            mod = mod[:-1]
        if len(mod) - 1 != d:
            raise FieldError(f"modulus degree {len(mod) - 1} does not match field degree {d}")
        if mod[-1] != 1:
            raise FieldError("modulus must be monic")
        if not _is_irreducible(mod, p):
            raise FieldError("modulus is reducible")
        self.spec = FieldSpec(p, spec.base_exp, spec.ext_degree, mod, spec.symbol)
        self.p = p
        self.order = order
        self.n_units = order - 1
        self._exp, self._log = self._build_tables(mod, p, d)
        self._elems = [FieldElement(self, -1)] + [FieldElement(self, k) for k in range(self.n_units)]

    def _build_tables(self, mod, p, d):
        if p == 2:
            mask = sum(c << i for i, c in enumerate(mod))

            def mulx(c):
                c <<= 1
                if c >> d:
                    c ^= mask
                return c
        else:
            def mulx(c):
                digs = [0] * (d + 1)
                for i in range(d):
                    digs[i + 1] = c % p
                    c //= p
                top = digs[d]
                if top:
                    for i in range(d + 1):
                        digs[i] = (digs[i] - top * mod[i]) % p
                out = 0
                for i in range(d - 1, -1, -1):
                    out = out * p + digs[i]
                return out

        exp = []
        log = [-1] * self.order
        c = 1
        for k in range(self.n_units):
            if log[c] != -1:
                raise FieldError("the generator is not primitive for this modulus")
            exp.append(c)
            log[c] = k
            c = mulx(c)
        if c != 1:
            raise FieldError("modulus failed the closure check")
        return exp, log

    def _add_codes(self, c1, c2):
        if self.p == 2:
            return c1 ^ c2
        p, out, mult = self.p, 0, 1
        while c1 or c2:
            out += ((c1 % p + c2 % p) % p) * mult
            c1 //= p
            c2 //= p
            mult *= p
        return out

    # -- element constructors -------------------------------------------------

    def zero(self):
        return self._elems[0]

    def one(self):
        return self._elems[1]

    def gen(self):
        if self.n_units < 2:
            return self.one()
        return self._elems[2]

    def from_log(self, k):
        return self._elems[1 + (k % self.n_units)]

    def from_code(self, code):
        if code == 0:
            return self._elems[0]
        k = self._log[code]
        if k < 0:
            raise FieldError(f"code {code} is not an element of {self!r}")
        return self._elems[1 + k]

    def elements(self):
        """All elements, zero first then ascending powers of the generator."""
        return list(self._elems)

    def parse(self, text):
        sym = re.escape(self.spec.symbol)
        t = text.strip()
        if t == "0":
            return self.zero()
        if t == "1":
            return self.one()
        m = re.fullmatch(rf"{sym}(?:\^(\d+))?", t)
        if not m:
            raise FieldError(f"cannot parse field element {text!r}")
        k = int(m.group(1)) if m.group(1) is not None else 1
        if k >= self.n_units and self.n_units > 0:
            k %= self.n_units
        return self.from_log(k)

    def in_base_field(self, x):
        """Whether x lies in the base subfield GF(q), q = p^base_exp."""
        if not x:
            return True
        q = self.spec.q
        if q == self.order:
            return True
        step = self.n_units // (q - 1)
        return x.log % step == 0

    def __repr__(self):
        return f"GF({self.order})"


_FIELD_CACHE = {}


def build_field(spec):
    """Construct (or fetch from cache) the field described by spec."""
    key = (spec.p, spec.base_exp, spec.ext_degree, tuple(spec.modulus), spec.symbol)
    field = _FIELD_CACHE.get(key)
    if field is None:
        field = Field(spec)
        _FIELD_CACHE[key] = field
    return field


def field_for(p, degree, modulus=None, *, base_exp=1, symbol="a"):
    """Convenience builder: GF(p^degree) as an extension of GF(p^base_exp)."""
    if degree % base_exp:
        raise FieldError("base_exp must divide the total degree")
    mod = default_modulus(p, degree) if modulus is None else _parse_modulus(modulus, p)
    return build_field(FieldSpec(p, base_exp, degree // base_exp, tuple(mod), symbol))


def root_of_unity(field, r):
    """The canonical primitive r-th root of unity: the smallest-exponent power
    of the generator with multiplicative order exactly r."""
    if r < 1:
        raise FieldError("the order of a root of unity must be positive")
    if field.n_units % r:
        raise FieldError(f"{r} does not divide {field.n_units}, "
                         f"so {field!r} has no primitive {r}-th root")
    return field.from_log(field.n_units // r)
