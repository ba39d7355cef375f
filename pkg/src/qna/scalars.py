"""Exact arithmetic in the rational function field Q(q), q transcendental.

Elements are stored as ``num / den`` where ``num`` is a Laurent polynomial
and ``den`` is an ordinary polynomial with nonzero constant term and leading
coefficient 1, coprime to ``num``.  This makes the representation canonical,
so equality and hashing are structural.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = ["LaurentPoly", "Scalar", "qpow", "ZERO", "ONE", "Q"]


class LaurentPoly:
    """A Laurent polynomial in q with rational coefficients.

    ``coeffs`` maps integer exponents to nonzero Fractions; the empty map is 0.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = Fraction(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, e: int, coeff=1) -> "LaurentPoly":
        return cls({e: coeff})

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def low(self) -> int:
        return min(self._c)

    def high(self) -> int:
        return max(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self._c)
        for e, v in other._c.items():
            w = c.get(e)
            if w is None:
                c[e] = v
            else:
                w += v
                if w:
                    c[e] = w
                else:
                    del c[e]
        return LaurentPoly._raw(c)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        a, b = self._c, other._c
        if not a or not b:
            return LaurentPoly._raw({})
        if len(a) == 1:
            (e0, v0), = a.items()
            return LaurentPoly._raw({e0 + e: v0 * v for e, v in b.items()})
        if len(b) == 1:
            (e0, v0), = b.items()
            return LaurentPoly._raw({e0 + e: v0 * v for e, v in a.items()})
        c: dict = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._raw({e: v for e, v in c.items() if v})

    def scale(self, coeff: Fraction) -> "LaurentPoly":
        if not coeff:
            return LaurentPoly._raw({})
        return LaurentPoly._raw({e: v * coeff for e, v in self._c.items()})

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def leading_coeff(self) -> Fraction:
        return self._c[max(self._c)]

    def dense(self) -> list:
        """Coefficient list from exponent ``low()`` upward."""
        lo, hi = self.low(), self.high()
        out = [Fraction(0)] * (hi - lo + 1)
        for e, v in self._c.items():
            out[e - lo] = v
        return out

    @classmethod
    def from_dense(cls, coeffs: Iterable, low: int = 0) -> "LaurentPoly":
        return cls._raw({low + i: Fraction(v) for i, v in enumerate(coeffs) if v})

    def __call__(self, value):
        return sum((v * value ** e for e, v in self._c.items()), Fraction(0))

    def __repr__(self) -> str:
        return f"LaurentPoly({_poly_str(self)})"


def _poly_str(p: LaurentPoly) -> str:
    if not p._c:
        return "0"
    parts = []
    for e in sorted(p._c, reverse=True):
        v = p._c[e]
        if e == 0:
            mono = ""
        elif e == 1:
            mono = "q"
        else:
            mono = f"q^{e}" if e > 0 else f"q^({e})"
        if mono and abs(v) == 1:
            body = mono
        elif mono:
            body = f"{abs(v)}*{mono}"
        else:
            body = str(abs(v))
        sign = "-" if v < 0 else "+"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


# dense polynomial helpers, coefficients low -> high, no trailing zeros

def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) <= db:
        return [], a
    quo = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if not c:
            continue
        c = c / lb
        quo[i - db] = c
        for j in range(db + 1):
            a[i - db + j] -= c * b[j]
    return _trim(quo), _trim(a[:db])


def _gcd(a: list, b: list) -> list:
    """Monic gcd of two dense polynomials over Q."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    if not a:
        return [Fraction(1)]
    lc = a[-1]
    return [c / lc for c in a]


def _exact_div(a: list, b: list) -> list:
    q, r = _divmod(a, b)
    assert not r, "inexact polynomial division"
    return q


_ONE_POLY = LaurentPoly._raw({0: Fraction(1)})


class Scalar:
    """An element of Q(q) in canonical form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None):
        num = _as_laurent(num)
        if den is None:
            self.num, self.den = num, _ONE_POLY
        else:
            self.num, self.den = _canonical(num, _as_laurent(den))
        self._hash = None

    @classmethod
    def _make(cls, num: LaurentPoly, den: LaurentPoly) -> "Scalar":
        s = cls.__new__(cls)
        s.num, s.den, s._hash = num, den, None
        return s

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls._make(LaurentPoly._raw({0: Fraction(x)} if x else {}), _ONE_POLY)
        if isinstance(x, LaurentPoly):
            return cls._make(x, _ONE_POLY)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    # predicates

    def is_zero(self) -> bool:
        return not self.num._c

    def __bool__(self) -> bool:
        return bool(self.num._c)

    def is_laurent(self) -> bool:
        return self.den is _ONE_POLY or self.den == _ONE_POLY

    def as_qpower(self) -> int | None:
        """Return e if this scalar equals q**e, else None."""
        if self.is_laurent() and len(self.num._c) == 1:
            (e, v), = self.num._c.items()
            if v == 1:
                return e
        return None

    def as_rational(self) -> Fraction | None:
        if self.is_laurent() and set(self.num._c) <= {0}:
            return self.num._c.get(0, Fraction(0))
        return None

    # arithmetic

    def __add__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.num._c:
            return self
        if not self.num._c:
            return other
        if self.den == other.den:
            if self.den == _ONE_POLY:
                return Scalar._make(self.num + other.num, _ONE_POLY)
            n, d = _canonical(self.num + other.num, self.den)
            return Scalar._make(n, d)
        n = self.num * other.den + other.num * self.den
        n, d = _canonical(n, self.den * other.den)
        return Scalar._make(n, d)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._make(-self.num, self.den)

    def __sub__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return Scalar.coerce(other) - self

    def __mul__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num._c or not other.num._c:
            return ZERO
        if self.den == _ONE_POLY and other.den == _ONE_POLY:
            return Scalar._make(self.num * other.num, _ONE_POLY)
        if self.num.is_monomial() and other.den == _ONE_POLY and other.num.is_monomial():
            return Scalar._make(self.num * other.num, self.den)
        if other.num.is_monomial() and self.den == _ONE_POLY and self.num.is_monomial():
            return Scalar._make(self.num * other.num, other.den)
        n, d = _canonical(self.num * other.num, self.den * other.den)
        return Scalar._make(n, d)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if not self.num._c:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        n, d = _canonical(self.den, self.num)
        return Scalar._make(n, d)

    def __truediv__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other) -> "Scalar":
        return Scalar.coerce(other) * self.inv()

    def __pow__(self, e: int) -> "Scalar":
        if e < 0:
            return self.inv() ** (-e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparison

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __call__(self, value):
        """Evaluate at a numeric value of q (for diagnostics only)."""
        return self.num(value) / self.den(value)

    def __repr__(self) -> str:
        n = _poly_str(self.num)
        if self.den == _ONE_POLY:
            return n
        if len(self.num._c) > 1:
            n = f"({n})"
        return f"{n}/({_poly_str(self.den)})"

    # serialization

    def to_json(self) -> dict:
        return {
            "num": [[_frac_str(v), e] for e, v in sorted(self.num._c.items())],
            "den": [[_frac_str(v), e] for e, v in sorted(self.den._c.items())],
        }

    @classmethod
    def from_json(cls, obj) -> "Scalar":
        if isinstance(obj, (int, str)):
            return cls.coerce(Fraction(obj))
        num = LaurentPoly({int(e): Fraction(c) for c, e in obj["num"]})
        den_terms = obj.get("den")
        if not den_terms:
            return cls(num)
        den = LaurentPoly({int(e): Fraction(c) for c, e in den_terms})
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in scalar JSON")
        return cls(num, den)


def _frac_str(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _as_laurent(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly._raw({0: Fraction(x)} if x else {})
    if isinstance(x, Mapping):
        return LaurentPoly(x)
    raise TypeError(f"cannot build a Laurent polynomial from {type(x).__name__}")


def _canonical(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if not den._c:
        raise ZeroDivisionError("division by zero in Q(q)")
    if not num._c:
        return num, _ONE_POLY
    # move the q-power of den into num and make den monic
    lo = den.low()
    lc = den.leading_coeff()
    if len(den._c) == 1:
        return num.shift(-lo).scale(1 / lc), _ONE_POLY
    num = num.shift(-lo).scale(1 / lc)
    den = den.shift(-lo).scale(1 / lc)
    nlo = num.low()
    nd, dd = num.dense(), den.dense()
    g = _gcd(nd, dd)
    if len(g) > 1:
        nd = _exact_div(nd, g)
        dd = _exact_div(dd, g)
        num = LaurentPoly.from_dense(nd, nlo)
        den = LaurentPoly.from_dense(dd, 0)
    if den == _ONE_POLY:
        den = _ONE_POLY
    return num, den


ZERO = Scalar._make(LaurentPoly._raw({}), _ONE_POLY)
ONE = Scalar._make(LaurentPoly._raw({0: Fraction(1)}), _ONE_POLY)

_QPOW_CACHE: dict = {}


def qpow(e: int) -> Scalar:
    """Return q**e."""
    s = _QPOW_CACHE.get(e)
    if s is None:
        s = Scalar._make(LaurentPoly._raw({int(e): Fraction(1)}), _ONE_POLY)
        _QPOW_CACHE[e] = s
    return s


Q = qpow(1)

ScalarLike = Union[Scalar, int, Fraction]
