"""Exact scalars: Laurent polynomials in ``s`` (with ``q = s**2``) over Q(i, sqrt 2).

Every constant the fermion engine needs (``i``, ``1/sqrt(2)``, ``sqrt(q)``,
``q +- 1``) lives in this ring, so all identities can be checked with zero
tolerance.
"""

from __future__ import annotations

import cmath
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterator, Mapping, Union

__all__ = [
    "QISqrt2",
    "ExactScalar",
    "S",
    "Q",
    "I",
    "SQRT2",
    "as_scalar",
    "q_number",
    "gauss_binom",
]


class QISqrt2:
    """Element ``a + b*i + c*sqrt2 + d*i*sqrt2`` of the field Q(i, sqrt 2).

    Stored as four integer numerators over one positive common denominator,
    reduced so that the overall gcd is 1.
    """

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, a=0, b=0, c=0, d=0):
        parts = [Fraction(x) for x in (a, b, c, d)]
        den = 1
        for p in parts:
            den = den * p.denominator // gcd(den, p.denominator)
        self._set(tuple(p.numerator * (den // p.denominator) for p in parts), den)

    def _set(self, num, den):
        g = gcd(gcd(gcd(num[0], num[1]), gcd(num[2], num[3])), den)
        if g > 1:
            num = (num[0] // g, num[1] // g, num[2] // g, num[3] // g)
            den //= g
        self._num = num
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, num, den) -> "QISqrt2":
        obj = cls.__new__(cls)
        if den < 0:
            num = (-num[0], -num[1], -num[2], -num[3])
            den = -den
        obj._set(num, den)
        return obj

    # components as reduced fractions
    @property
    def a(self) -> Fraction:
        return Fraction(self._num[0], self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._num[1], self._den)

    @property
    def c(self) -> Fraction:
        return Fraction(self._num[2], self._den)

    @property
    def d(self) -> Fraction:
        return Fraction(self._num[3], self._den)

    def parts(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.a, self.b, self.c, self.d

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not (self._num[1] or self._num[2] or self._num[3])

    def __bool__(self) -> bool:
        return any(self._num)

    def __eq__(self, other) -> bool:
        if isinstance(other, QISqrt2):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Rational)):
            return self == QISqrt2(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                self._hash = hash((self._num, self._den))
        return self._hash

    @staticmethod
    def _coerce(x) -> "QISqrt2":
        if isinstance(x, QISqrt2):
            return x
        if isinstance(x, (int, Rational)):
            return QISqrt2(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to QISqrt2")

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        d1, d2 = self._den, o._den
        return QISqrt2._raw(tuple(x * d2 + y * d1 for x, y in zip(self._num, o._num)), d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> "QISqrt2":
        return QISqrt2._raw(tuple(-x for x in self._num), self._den)

    def __sub__(self, other):
        try:
            return self + (-self._coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return QISqrt2._raw(tuple(x * other for x in self._num), self._den)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self._num
        e, f, g, h = o._num
        num = (
            a * e - b * f + 2 * (c * g - d * h),
            a * f + b * e + 2 * (c * h + d * g),
            a * g + c * e - b * h - d * f,
            a * h + d * e + b * g + c * f,
        )
        return QISqrt2._raw(num, self._den * o._den)

    __rmul__ = __mul__

    def conjugate(self) -> "QISqrt2":
        """Complex conjugation: i -> -i, sqrt2 fixed."""
        a, b, c, d = self._num
        return QISqrt2._raw((a, -b, c, -d), self._den)

    def _flip_root(self) -> "QISqrt2":
        a, b, c, d = self._num
        return QISqrt2._raw((a, b, -c, -d), self._den)

    def inverse(self) -> "QISqrt2":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt2)")
        # x * conj(x) lies in Q(sqrt2); its norm down to Q is rational.
        y = self * self.conjugate()
        y_bar = y._flip_root()
        norm = (y * y_bar).a
        return self.conjugate() * y_bar * QISqrt2(1 / norm)

    def __truediv__(self, other):
        try:
            return self * self._coerce(other).inverse()
        except TypeError:
            return NotImplemented

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __complex__(self) -> complex:
        r2 = 2 ** 0.5
        a, b, c, d = (float(x) for x in self.parts())
        return complex(a + c * r2, b + d * r2)

    def __str__(self) -> str:
        comps = [(p, suffix) for p, suffix in zip(self.parts(), ("", "i", "r2", "ir2")) if p]
        if not comps:
            return "0"
        if len(comps) == 1 and comps[0][1] == "":
            return _frac_str(comps[0][0])
        out = []
        for k, (p, suffix) in enumerate(comps):
            text = _frac_str(abs(p)) + suffix
            if p < 0:
                out.append("-" + text)
            else:
                out.append(("+" if k else "") + text)
        return "(" + "".join(out) + ")"

    def __repr__(self) -> str:
        return f"QISqrt2({str(self)!r})"

    _COMPONENT = re.compile(r"([+-]?)(\d+(?:/\d+)?)(ir2|r2|i)?")

    @classmethod
    def parse(cls, text: str) -> "QISqrt2":
        """Parse ``"3/4"``, ``"(1/2-1i)"``, ``"(0+1i+2r2)"`` and similar."""
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        body = body.replace(" ", "")
        if not body:
            raise ValueError(f"empty scalar: {text!r}")
        slots = {"": 0, "i": 1, "r2": 2, "ir2": 3}
        vals = [Fraction(0)] * 4
        pos = 0
        while pos < len(body):
            m = cls._COMPONENT.match(body, pos)
            if not m or m.end() == pos:
                raise ValueError(f"malformed scalar: {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            vals[slots[m.group(3) or ""]] += sign * Fraction(m.group(2))
            pos = m.end()
        return cls(*vals)


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


_ZERO_F = QISqrt2(0)
_ONE_F = QISqrt2(1)

Number = Union[int, Fraction, QISqrt2, "ExactScalar"]


class ExactScalar:
    """Laurent polynomial ``sum_k c_k s**k`` with coefficients in Q(i, sqrt 2).

    ``s`` is a formal real square root of ``q``.  Instances are immutable and
    canonical: zero coefficients are never stored, so equality is map equality.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = QISqrt2._coerce(v)
                if v:
                    c[int(k)] = v
        self._c = c
        self._hash = None

    @classmethod
    def _wrap(cls, c: dict) -> "ExactScalar":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, value) -> "ExactScalar":
        v = QISqrt2._coerce(value)
        return cls._wrap({0: v} if v else {})

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "ExactScalar":
        return cls({exponent: coeff})

    @property
    def coeffs(self) -> Mapping[int, QISqrt2]:
        return dict(self._c)

    def items(self) -> Iterator[tuple[int, QISqrt2]]:
        return iter(sorted(self._c.items()))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def constant_term(self) -> QISqrt2:
        return self._c.get(0, _ZERO_F)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactScalar):
            return self._c == other._c
        try:
            return self._c == as_scalar(other)._c
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other):
        try:
            o = as_scalar(other)
        except TypeError:
            return NotImplemented
        if not o._c:
            return self
        c = dict(self._c)
        for k, v in o._c.items():
            w = c.get(k)
            if w is None:
                c[k] = v
            else:
                w = w + v
                if w:
                    c[k] = w
                else:
                    del c[k]
        return ExactScalar._wrap(c)

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar._wrap({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        try:
            return self + (-as_scalar(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            if other == 1:
                return self
            return ExactScalar._wrap({k: v * other for k, v in self._c.items()})
        try:
            o = as_scalar(other)
        except TypeError:
            return NotImplemented
        c: dict[int, QISqrt2] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in o._c.items():
                k = k1 + k2
                w = v1 * v2
                prev = c.get(k)
                c[k] = w if prev is None else prev + w
        return ExactScalar._wrap({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ExactScalar":
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "ExactScalar":
        """Inverse of a unit (a single term ``c * s**k``); other inverses leave the ring."""
        if len(self._c) != 1:
            raise ZeroDivisionError(f"{self} is not a unit of the Laurent ring")
        ((k, v),) = self._c.items()
        return ExactScalar._wrap({-k: v.inverse()})

    def __truediv__(self, other):
        try:
            return self * as_scalar(other).inverse()
        except TypeError:
            return NotImplemented

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def conjugate(self) -> "ExactScalar":
        """Complex conjugation of the coefficients; ``s`` (hence ``q``) is real."""
        return ExactScalar._wrap({k: v.conjugate() for k, v in self._c.items()})

    def evaluate(self, q: complex) -> complex:
        """Numeric value at ``q`` (``s`` is the principal square root)."""
        s = cmath.sqrt(q)
        return sum((complex(v) * s ** k for k, v in self._c.items()), 0j)

    def at_q(self, q) -> QISqrt2:
        """Exact value at a rational ``q``.

        Odd powers of ``s`` need ``sqrt(q)`` to lie in the field; that is only
        supported when ``q`` is the square of a rational.
        """
        q = Fraction(q)
        if q == 0:
            raise ZeroDivisionError("q must be nonzero")
        root = None
        if any(k % 2 for k in self._c):
            root = _rational_sqrt(q)
            if root is None:
                raise ValueError(f"odd powers of s cannot be evaluated exactly at q={q}")
        total = _ZERO_F
        for k, v in self._c.items():
            if k % 2:
                total = total + v * QISqrt2(root ** k)
            else:
                total = total + v * QISqrt2(q ** (k // 2))
        return total

    def __str__(self) -> str:
        if not self._c:
            return "0"
        return " + ".join(_term_str(k, v) for k, v in sorted(self._c.items()))

    def __repr__(self) -> str:
        return f"ExactScalar({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "ExactScalar":
        """Inverse of ``str``: ``"(1/2)*s^-1 + (0+1i)*s^3"``, ``"-s^2"``, ``"3"``."""
        text = text.strip()
        if text == "0":
            return ZERO
        total = ZERO
        for chunk in _split_terms(text):
            total = total + _parse_term(chunk)
        return total


def _rational_sqrt(q: Fraction):
    from math import isqrt

    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _term_str(k: int, v: QISqrt2) -> str:
    if k == 0:
        return str(v)
    power = "s" if k == 1 else f"s^{k}"
    if v == 1:
        return power
    if v == -1:
        return "-" + power
    return f"{v}*{power}"


def _split_terms(text: str) -> list[str]:
    out, depth, start = [], 0, 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith(" + ", i):
            out.append(text[start:i])
            start = i + 3
            i += 3
            continue
        i += 1
    out.append(text[start:])
    return [t.strip() for t in out if t.strip()]


_POWER = re.compile(r"^(?:(.*)\*)?(-?)s(?:\^(-?\d+))?$")


def _parse_term(chunk: str) -> ExactScalar:
    m = _POWER.match(chunk)
    if m is None:
        return ExactScalar.const(QISqrt2.parse(chunk))
    coeff_text, neg, exp = m.groups()
    coeff = QISqrt2.parse(coeff_text) if coeff_text else _ONE_F
    if neg:
        coeff = -coeff
    return ExactScalar.monomial(int(exp) if exp is not None else 1, coeff)


def as_scalar(x) -> ExactScalar:
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, int):
        return _INT_CACHE.get(x) or ExactScalar.const(x)
    if isinstance(x, (Rational, QISqrt2)):
        return ExactScalar.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to ExactScalar")


ZERO = ExactScalar()
ONE = ExactScalar.const(1)
_INT_CACHE = {k: ExactScalar.const(k) for k in range(-8, 9) if k}
_INT_CACHE[0] = ZERO

S = ExactScalar.monomial(1)
"""The formal square root of q."""
Q = ExactScalar.monomial(2)
I = ExactScalar.const(QISqrt2(0, 1))
SQRT2 = ExactScalar.const(QISqrt2(0, 0, 1))
INV_SQRT2 = ExactScalar.const(QISqrt2(0, 0, Fraction(1, 2)))


def q_number(m: int, k: int = 1) -> ExactScalar:
    """Symmetric q-integer ``[m]`` in the base ``Q = q**k``, as a Laurent polynomial."""
    if m < 0:
        raise ValueError("q_number needs m >= 0")
    return ExactScalar({2 * k * (m - 1 - 2 * j): 1 for j in range(m)}) if k else as_scalar(m)


@lru_cache(maxsize=None)
def gauss_binom(m: int, n: int, k: int = 1) -> ExactScalar:
    """Gaussian binomial in base ``Q = q**k`` via the balanced q-Pascal rule."""
    if m < 0 or n < 0:
        raise ValueError("gauss_binom needs m, n >= 0")
    if n > m:
        raise ValueError(f"gauss_binom needs n <= m (got m={m}, n={n})")
    if n == 0 or n == m:
        return ONE
    up = ExactScalar.monomial(2 * k * n)
    down = ExactScalar.monomial(-2 * k * (m - n))
    return up * gauss_binom(m - 1, n, k) + down * gauss_binom(m - 1, n - 1, k)
