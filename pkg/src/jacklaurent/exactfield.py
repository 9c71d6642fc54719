"""Exact arithmetic in the rational function field Q(k, p0).

Polynomials are sparse maps ``(deg_k, deg_p0) -> coefficient``.  Rational
functions are kept in a canonical normal form: integer numerator and
denominator with no common polynomial factor, jointly primitive integer
content, and a denominator whose leading coefficient (graded lex, p0 > k)
is positive.  Two values are equal iff their normal forms coincide.

The gcd is heuristic (evaluation at a large integer, checked by exact
division) with a primitive PRS in p0 over Z[k] as fallback.  Internally the bivariate
routines use a recursive dense form: a list indexed by the p0-degree whose
entries are dense integer coefficient lists in k (``[]`` is zero).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Union

from ._heugcd import heu_gcd

BigRat = Fraction

__all__ = [
    "BigRat",
    "PolyKP",
    "RatKP",
    "SpecialPoint",
    "ParseError",
    "FieldMode",
    "EXACT",
    "K",
    "P0",
    "ONE",
    "ZERO",
    "poly_gcd",
    "valuation",
    "leading_coeff_at",
    "eval_p0",
    "parse",
    "as_ratk",
    "probe_mode",
]


# ---------------------------------------------------------------------------
# dense univariate integer polynomials in k

def _u_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _u_add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _u_trim(out)


def _u_sub(a: list[int], b: list[int]) -> list[int]:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _u_trim(out)


def _u_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    if len(a) == 1:
        c = a[0]
        return [c * x for x in b]
    if len(b) == 1:
        c = b[0]
        return [c * x for x in a]
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _u_scale(a: list[int], c: int) -> list[int]:
    if c == 0:
        return []
    return [c * x for x in a]


def _u_icontent(a: list[int]) -> int:
    return reduce(gcd, a, 0)


def _u_divexact_int(a: list[int], c: int) -> list[int]:
    return [x // c for x in a]


def _u_trydiv(a: list[int], b: list[int]) -> list[int] | None:
    """Exact quotient a/b in Z[k], or None if b does not divide a in Z[k]."""
    if not b:
        raise ZeroDivisionError("zero denominator")
    if not a:
        return []
    db = len(b) - 1
    if len(a) - 1 < db:
        return None
    lb = b[-1]
    if db == 0:
        if any(x % lb for x in a):
            return None
        return [x // lb for x in a]
    r = list(a)
    q = [0] * (len(a) - db)
    for d in range(len(a) - 1 - db, -1, -1):
        c = r[d + db]
        if c == 0:
            continue
        if c % lb:
            return None
        t = c // lb
        q[d] = t
        for i, y in enumerate(b):
            r[d + i] -= t * y
    if any(r[:db]):
        return None
    return _u_trim(q)


def _u_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder; only used up to scalar multiples."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while r and len(r) - 1 >= db:
        c = r[-1]
        s = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, y in enumerate(b):
            r[s + i] -= c * y
        _u_trim(r)
        g = _u_icontent(r)
        if g > 1:
            r = [x // g for x in r]
    return r


def _u_primitive(a: list[int]) -> list[int]:
    if not a:
        return []
    g = _u_icontent(a)
    if a[-1] < 0:
        g = -g
    return [x // g for x in a] if g != 1 else list(a)


def _u_gcd(a: list[int], b: list[int]) -> list[int]:
    """gcd in Z[k], including the integer content, positive leading coefficient."""
    if not a:
        return _u_normalize_sign(b)
    if not b:
        return _u_normalize_sign(a)
    c = gcd(_u_icontent(a), _u_icontent(b))
    if len(a) == 1 or len(b) == 1:
        return [c]
    a = _u_primitive(a)
    b = _u_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [c]
        r = _u_prem(a, b)
        a, b = b, _u_primitive(r)
    return _u_scale(_u_primitive(a), c)


def _u_normalize_sign(a: list[int]) -> list[int]:
    if a and a[-1] < 0:
        return [-x for x in a]
    return list(a)


# ---------------------------------------------------------------------------
# recursive dense bivariate polynomials: list over p0-degree of Z[k] lists

Rec = list  # list[list[int]]


def _r_trim(a: Rec) -> Rec:
    while a and not a[-1]:
        a.pop()
    return a


def _r_content(a: Rec) -> list[int]:
    """gcd in Z[k] of the p0-coefficients (integer content included)."""
    g: list[int] = []
    for c in a:
        if c:
            g = _u_gcd(g, c)
            if len(g) == 1 and g[0] == 1:
                break
    return g


def _r_div_u(a: Rec, c: list[int]) -> Rec:
    out = []
    for x in a:
        q = _u_trydiv(x, c)
        if q is None:
            raise ArithmeticError("inexact content division")
        out.append(q)
    return out


def _r_primitive(a: Rec) -> Rec:
    c = _r_content(a)
    if c == [1]:
        return a
    return _r_div_u(a, c)


def _r_prem(a: Rec, b: Rec) -> Rec:
    db = len(b) - 1
    lb = b[-1]
    r = [list(x) for x in a]
    while r and len(r) - 1 >= db:
        c = r[-1]
        s = len(r) - 1 - db
        r = [_u_mul(lb, x) for x in r]
        for i, y in enumerate(b):
            r[s + i] = _u_sub(r[s + i], _u_mul(c, y))
        _r_trim(r)
    return r


def _r_gcd(a: Rec, b: Rec) -> Rec:
    if not a:
        return b
    if not b:
        return a
    fast = heu_gcd(a, b, 2)
    if fast is not None:
        return fast[0]
    return _r_gcd_prs(a, b)


def _r_gcd_prs(a: Rec, b: Rec) -> Rec:
    ca = _r_content(a)
    cb = _r_content(b)
    c = _u_gcd(ca, cb)
    if len(a) == 1 or len(b) == 1:
        return [c]
    a = _r_div_u(a, ca)
    b = _r_div_u(b, cb)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [c]
        r = _r_prem(a, b)
        if not r:
            a = b
            break
        a, b = b, _r_primitive(r)
    g = _r_primitive(a)
    return [_u_mul(c, x) for x in g]


def _r_trydiv(a: Rec, b: Rec) -> Rec | None:
    """Exact quotient a/b in Z[k][p0] when b divides a, else None."""
    if not b:
        raise ZeroDivisionError("zero denominator")
    if not a:
        return []
    db = len(b) - 1
    if len(a) - 1 < db:
        return None
    lb = b[-1]
    r = [list(x) for x in a]
    q: Rec = [[] for _ in range(len(a) - db)]
    for d in range(len(a) - 1 - db, -1, -1):
        c = r[d + db]
        if not c:
            continue
        t = _u_trydiv(c, lb)
        if t is None:
            return None
        q[d] = t
        for i, y in enumerate(b):
            r[d + i] = _u_sub(r[d + i], _u_mul(t, y))
    if any(r[:db]):
        return None
    return _r_trim(q)


def _dict_to_rec(terms: dict) -> Rec:
    if not terms:
        return []
    dp = max(e[1] for e in terms)
    out: Rec = [[] for _ in range(dp + 1)]
    for (ek, ep), c in terms.items():
        row = out[ep]
        if len(row) <= ek:
            row.extend([0] * (ek + 1 - len(row)))
        row[ek] = c
    return out


def _rec_to_dict(a: Rec) -> dict:
    return {(ek, ep): c for ep, row in enumerate(a) for ek, c in enumerate(row) if c}


# ---------------------------------------------------------------------------
# PolyKP

def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _order_key(e: tuple[int, int]) -> tuple[int, int]:
    # graded lex with p0 > k
    return (e[0] + e[1], e[1])


class PolyKP:
    """Polynomial in k and p0 with rational coefficients (immutable)."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: dict | None = None):
        t = {}
        if terms:
            for e, c in terms.items():
                c = _clean(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
                if c:
                    t[(int(e[0]), int(e[1]))] = c
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t: dict) -> "PolyKP":
        self = object.__new__(cls)
        self._t = t
        self._hash = None
        return self

    @classmethod
    def const(cls, c) -> "PolyKP":
        c = _clean(c)
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def var(cls, name: str) -> "PolyKP":
        if name == "k":
            return cls._raw({(1, 0): 1})
        if name == "p0":
            return cls._raw({(0, 1): 1})
        raise ValueError(f"unknown indeterminate {name!r}")

    def terms(self) -> dict:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._t.values())

    def degree_p0(self) -> int:
        return max((e[1] for e in self._t), default=-1)

    def degree_k(self) -> int:
        return max((e[0] for e in self._t), default=-1)

    def leading(self) -> tuple[tuple[int, int], object]:
        e = max(self._t, key=_order_key)
        return e, self._t[e]

    def constant_value(self):
        """The coefficient if the polynomial is a constant, else None."""
        if not self._t:
            return 0
        if len(self._t) == 1 and (0, 0) in self._t:
            return self._t[(0, 0)]
        return None

    def __eq__(self, other):
        if isinstance(other, PolyKP):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == ({(0, 0): _clean(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __neg__(self):
        return PolyKP._raw({e: -c for e, c in self._t.items()})

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        for e, c in other._t.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return PolyKP._raw(t)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self._t, other._t
        if not a or not b:
            return PolyKP._raw({})
        if len(b) > len(a):
            a, b = b, a
        t: dict = {}
        for (ek1, ep1), c1 in b.items():
            for (ek2, ep2), c2 in a.items():
                e = (ek1 + ek2, ep1 + ep2)
                t[e] = t.get(e, 0) + c1 * c2
        return PolyKP._raw({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = PolyKP.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def integer_scaled(self) -> tuple["PolyKP", Fraction]:
        """Return (q, s) with q integral and self == s * q."""
        dens = [c.denominator for c in self._t.values() if isinstance(c, Fraction)]
        if not dens:
            return self, Fraction(1)
        L = reduce(lcm, dens, 1)
        return PolyKP._raw({e: int(c * L) for e, c in self._t.items()}), Fraction(1, L)

    def primitive(self) -> "PolyKP":
        """Primitive integer associate with positive leading coefficient."""
        if not self._t:
            return self
        q, _ = self.integer_scaled()
        g = reduce(gcd, q._t.values(), 0)
        if q.leading()[1] < 0:
            g = -g
        if g == 1:
            return q
        return PolyKP._raw({e: c // g for e, c in q._t.items()})

    def exact_div(self, other: "PolyKP") -> "PolyKP | None":
        """Quotient in Z[k, p0] for integral operands, or None if inexact."""
        q = _r_trydiv(_dict_to_rec(self._t), _dict_to_rec(other._t))
        if q is None:
            return None
        return PolyKP._raw(_rec_to_dict(q))

    def __repr__(self):
        return f"PolyKP({_format_poly(self)!r})"

    def __str__(self):
        return _format_poly(self)


def _as_poly(x) -> PolyKP:
    if isinstance(x, PolyKP):
        return x
    if isinstance(x, (int, Fraction)):
        return PolyKP.const(x)
    return NotImplemented


def poly_gcd(a: PolyKP, b: PolyKP) -> PolyKP:
    """Greatest common divisor over Q, primitive with positive leading coefficient."""
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    ai, _ = a.integer_scaled()
    bi, _ = b.integer_scaled()
    g = _r_gcd(_dict_to_rec(ai._t), _dict_to_rec(bi._t))
    return PolyKP._raw(_rec_to_dict(g)).primitive()


def _int_gcd_poly(a: PolyKP, b: PolyKP) -> PolyKP:
    """gcd over Z of two integral polynomials (integer content kept)."""
    ca = a.constant_value()
    cb = b.constant_value()
    if ca is not None or cb is not None:
        # one side constant: integer gcd of all coefficients
        g = reduce(gcd, a._t.values(), 0)
        g = reduce(gcd, b._t.values(), g)
        return PolyKP._raw({(0, 0): g})
    g = _r_gcd(_dict_to_rec(a._t), _dict_to_rec(b._t))
    gp = PolyKP._raw(_rec_to_dict(g))
    if gp.leading()[1] < 0:
        gp = -gp
    return gp


def _divexact(a: PolyKP, g: PolyKP) -> PolyKP:
    c = g.constant_value()
    if c is not None:
        if c == 1:
            return a
        return PolyKP._raw({e: v // c for e, v in a._t.items()})
    q = a.exact_div(g)
    if q is None:
        raise ArithmeticError("inexact division by gcd")
    return q


# ---------------------------------------------------------------------------
# RatKP

Scalar = Union[int, Fraction]


class RatKP:
    """Element of Q(k, p0) in canonical normal form (immutable)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        num = _as_poly(num) if not isinstance(num, PolyKP) else num
        den = _as_poly(den) if not isinstance(den, PolyKP) else den
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatKP expects polynomials or rationals")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        n, sn = num.integer_scaled()
        d, sd = den.integer_scaled()
        s = sn / sd
        n = PolyKP._raw({e: c * s.numerator for e, c in n._t.items()})
        d = PolyKP._raw({e: c * s.denominator for e, c in d._t.items()})
        self._set(*_normalize(n, d))

    def _set(self, n: PolyKP, d: PolyKP):
        self.num = n
        self.den = d
        self._hash = None

    @classmethod
    def _make(cls, n: PolyKP, d: PolyKP) -> "RatKP":
        self = object.__new__(cls)
        self._set(n, d)
        return self

    @classmethod
    def _from_unreduced(cls, n: PolyKP, d: PolyKP) -> "RatKP":
        return cls._make(*_normalize(n, d))

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den._t == {(0, 0): 1}

    def is_p0_free(self) -> bool:
        return self.num.degree_p0() <= 0 and self.den.degree_p0() <= 0

    def is_constant(self) -> bool:
        return self.num.constant_value() is not None and self.den.constant_value() is not None

    def constant_value(self) -> Fraction | None:
        if not self.is_constant():
            return None
        return Fraction(self.num.constant_value(), self.den.constant_value())

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RatKP):
            other = _as_rat(other)
            if other is NotImplemented:
                return NotImplemented
        return self.num._t == other.num._t and self.den._t == other.den._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- arithmetic ------------------------------------------------------
    def __neg__(self):
        return RatKP._make(-self.num, self.den)

    def __add__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return other
        if not other.num._t:
            return self
        if not self.num._t:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if b._t == d._t:
            return RatKP._from_unreduced(a + c, b)
        g = _int_gcd_poly(b, d)
        if g._t == {(0, 0): 1}:
            n = a * d + b * c
            if not n._t:
                return ZERO
            return RatKP._make(*_fix_sign(n, b * d))
        b1 = _divexact(b, g)
        d1 = _divexact(d, g)
        n = a * d1 + c * b1
        if not n._t:
            return ZERO
        g2 = _int_gcd_poly(n, g)
        if g2._t != {(0, 0): 1}:
            n = _divexact(n, g2)
            g = _divexact(g, g2)
        return RatKP._make(*_fix_sign(n, g * b1 * d1))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return other
        if not self.num._t or not other.num._t:
            return ZERO
        a, b, c, d = self.num, self.den, other.num, other.den
        g1 = _int_gcd_poly(a, d)
        g2 = _int_gcd_poly(c, b)
        if g1._t != {(0, 0): 1}:
            a = _divexact(a, g1)
            d = _divexact(d, g1)
        if g2._t != {(0, 0): 1}:
            c = _divexact(c, g2)
            b = _divexact(b, g2)
        return RatKP._make(*_fix_sign(a * c, b * d))

    __rmul__ = __mul__

    def inverse(self) -> "RatKP":
        if not self.num._t:
            raise ZeroDivisionError("zero denominator")
        return RatKP._make(*_fix_sign(self.den, self.num))

    def __truediv__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatKP._make(*_fix_sign(self.num ** n, self.den ** n))

    def __repr__(self):
        return f"RatKP({str(self)!r})"

    def __str__(self):
        if self.is_polynomial():
            return _format_poly(self.num)
        return f"({_format_poly(self.num)})/({_format_poly(self.den)})"


def _fix_sign(n: PolyKP, d: PolyKP) -> tuple[PolyKP, PolyKP]:
    if d.leading()[1] < 0:
        return -n, -d
    return n, d


def _normalize(n: PolyKP, d: PolyKP) -> tuple[PolyKP, PolyKP]:
    if not n._t:
        return PolyKP._raw({}), PolyKP._raw({(0, 0): 1})
    g = _int_gcd_poly(n, d)
    if g._t != {(0, 0): 1}:
        n = _divexact(n, g)
        d = _divexact(d, g)
    return _fix_sign(n, d)


def _as_rat(x) -> RatKP:
    if isinstance(x, RatKP):
        return x
    if isinstance(x, int):
        return RatKP._make(PolyKP._raw({(0, 0): x} if x else {}), PolyKP._raw({(0, 0): 1}))
    if isinstance(x, Fraction):
        return RatKP._make(PolyKP.const(x.numerator), PolyKP.const(x.denominator))
    if isinstance(x, PolyKP):
        return RatKP(x)
    return NotImplemented


ZERO = RatKP(0)
ONE = RatKP(1)
K = RatKP(PolyKP.var("k"))
P0 = RatKP(PolyKP.var("p0"))


def as_rat(x) -> RatKP:
    """Coerce an int, Fraction, PolyKP or RatKP to RatKP."""
    r = _as_rat(x)
    if r is NotImplemented:
        raise TypeError(f"cannot convert {x!r} to RatKP")
    return r


def as_ratk(f: RatKP) -> RatKP:
    """Check that ``f`` lies in Q(k), i.e. does not involve p0."""
    if not f.is_p0_free():
        raise ValueError(f"{f} depends on p0")
    return f


# ---------------------------------------------------------------------------
# the special point p0 = n + m/k

@dataclass(frozen=True)
class SpecialPoint:
    """p0 = n + m/k; local parameter h = m + k*n - k*p0."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("special point needs n >= 1 and m >= 1")

    def phi(self, k: RatKP = K) -> RatKP:
        return k * P0 - k * self.n - self.m

    def h(self, k: RatKP = K) -> RatKP:
        return self.m + k * self.n - k * P0

    def p0_value(self, k: RatKP = K) -> RatKP:
        return self.n + self.m / k


def _phi_poly(pt: SpecialPoint, k: RatKP) -> PolyKP:
    return pt.phi(k).num.primitive()


def _multiplicity(p: PolyKP, phi: PolyKP) -> tuple[int, PolyKP]:
    v = 0
    while True:
        q = p.exact_div(phi)
        if q is None:
            return v, p
        v += 1
        p = q


def valuation(f: RatKP, pt: SpecialPoint, k: RatKP = K) -> int:
    """Order of zero (>0) or pole (<0) of ``f`` at p0 = n + m/k."""
    if f.is_zero():
        raise ValueError("valuation of zero undefined")
    phi = _phi_poly(pt, k)
    vn, _ = _multiplicity(f.num, phi)
    vd, _ = _multiplicity(f.den, phi)
    return vn - vd


def leading_coeff_at(f: RatKP, pt: SpecialPoint, k: RatKP = K) -> RatKP:
    """lim_{h->0} h^(-v) f with v the valuation; an element of Q(k)."""
    if f.is_zero():
        raise ValueError("valuation of zero undefined")
    phi = _phi_poly(pt, k)
    vn, n = _multiplicity(f.num, phi)
    vd, d = _multiplicity(f.den, phi)
    v = vn - vd
    g = RatKP._make(*_fix_sign(n, d))
    # phi is a constant multiple of h
    ratio = RatKP(phi) / pt.h(k)
    return eval_p0(g, pt.p0_value(k)) * ratio ** v


def _horner(p: PolyKP, v: RatKP) -> RatKP:
    rec: dict[int, dict] = {}
    for (ek, ep), c in p._t.items():
        rec.setdefault(ep, {})[(ek, 0)] = c
    if not rec:
        return ZERO
    out = ZERO
    for ep in range(max(rec), -1, -1):
        out = out * v
        if ep in rec:
            out = out + RatKP._make(PolyKP._raw(rec[ep]), PolyKP._raw({(0, 0): 1}))
    return out


def eval_p0(f: RatKP, v: RatKP | Scalar) -> RatKP:
    """Substitute p0 = v, an element of Q(k)."""
    v = _as_rat(v)
    if not v.is_p0_free():
        raise ValueError("substituted value must not involve p0")
    d = _horner(f.den, v)
    if d.is_zero():
        raise ZeroDivisionError("evaluation at pole")
    return _horner(f.num, v) / d


# ---------------------------------------------------------------------------
# arithmetic modes

@dataclass(frozen=True)
class FieldMode:
    """Which stand-in is used for k.

    Exact mode keeps k symbolic.  Probe mode replaces k by a random rational
    with large numerator and denominator, which keeps p0 symbolic but makes
    arithmetic much cheaper; probe results are advisory only.
    """

    name: str
    k: RatKP
    seed: int | None = None

    @property
    def exact(self) -> bool:
        return self.name == "exact"


EXACT = FieldMode("exact", K)


def probe_mode(seed: int) -> FieldMode:
    rng = random.Random(seed)
    num = rng.randrange(10**12, 10**13)
    den = rng.randrange(10**12, 10**13) | 1
    return FieldMode("probe", RatKP(Fraction(num, den)), seed)


# ---------------------------------------------------------------------------
# canonical printing and parsing

def _format_mono(ek: int, ep: int) -> str:
    parts = []
    if ek:
        parts.append("k" if ek == 1 else f"k^{ek}")
    if ep:
        parts.append("p0" if ep == 1 else f"p0^{ep}")
    return "*".join(parts)


def _format_coeff(c) -> str:
    return str(c) if isinstance(c, int) else f"({c})"


def _format_poly(p: PolyKP) -> str:
    if not p._t:
        return "0"
    out = []
    for idx, e in enumerate(sorted(p._t, key=_order_key, reverse=True)):
        c = p._t[e]
        mono = _format_mono(*e)
        if idx == 0:
            if not mono:
                out.append(_format_coeff(c))
            elif c == 1:
                out.append(mono)
            else:
                out.append(f"{_format_coeff(c)}*{mono}")
        else:
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if not mono:
                body = _format_coeff(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_format_coeff(a)}*{mono}"
            out.append(f"{sign} {body}")
    return " ".join(out)


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _int(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected integer", start)
        return int(self.text[start:self.pos])

    def parse(self) -> RatKP:
        value = self.expr(top=True)
        self._skip()
        if self.pos != len(self.text):
            raise ParseError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return value

    def expr(self, top: bool = False) -> RatKP:
        value = self.term(top)
        while self._peek() in ("+", "-") and self._peek():
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term(top)
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self, top: bool = False) -> RatKP:
        value = self.unary()
        while self._peek() in ("*", "/") and self._peek():
            op = self.text[self.pos]
            where = self.pos
            self.pos += 1
            if op == "/" and top:
                if getattr(self, "_slash_seen", False):
                    raise ParseError("more than one top-level '/'", where)
                self._slash_seen = True
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("zero denominator", where)
                value = value / rhs
        return value

    def unary(self) -> RatKP:
        c = self._peek()
        if c == "-":
            self.pos += 1
            return -self.unary()
        if c == "+":
            self.pos += 1
            return self.unary()
        return self.power()

    def power(self) -> RatKP:
        base = self.atom()
        if self._peek() == "^":
            self.pos += 1
            base = base ** self._int()
        return base

    def atom(self) -> RatKP:
        c = self._peek()
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if self._peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return inner
        if c.isdigit():
            return RatKP(self._int())
        if self.text.startswith("p0", self.pos):
            self.pos += 2
            return P0
        if c == "k":
            self.pos += 1
            return K
        raise ParseError(f"unexpected {c!r}" if c else "unexpected end of input", self.pos)


def parse(text: str) -> RatKP:
    """Parse the canonical rational-function grammar."""
    return _Parser(text).parse()


def poly_from_str(text: str) -> PolyKP:
    f = parse(text)
    if not f.is_polynomial():
        raise ValueError(f"{text!r} is not a polynomial")
    return f.num


def sum_rat(values: Iterable[RatKP]) -> RatKP:
    out = ZERO
    for v in values:
        out = out + v
    return out
