"""The fermion algebra A(N) in normal-ordered form.

A basis monomial is ``psi^dag_{i1} ... psi^dag_{ik} psi_{j1} ... psi_{jm}`` with
both index blocks strictly ascending; it is stored as a pair of bit masks.
Mode indices are 1-based throughout the public API, bit ``i-1`` of a mask
stands for mode ``i``.
"""

from __future__ import annotations

import hashlib
import json
from collections import defaultdict
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple

from .report import DEFAULT_Q_SAMPLES, Report, compare, flag
from .scalar import ONE, Q, ExactScalar, as_scalar

__all__ = [
    "Monomial",
    "AlgebraElement",
    "mono_mul",
    "alg_mul",
    "star",
    "reversal",
    "grade",
    "psi",
    "psid",
    "omega_power",
    "omega",
    "omega_inv",
    "zeta",
    "number_op",
    "basis_monomials",
    "verify_q_clifford",
]

# Letters of a word: creation of mode i (0-based) is i, annihilation is ANN + i.
# The normal order is then simply "strictly increasing letters".
ANN = 1 << 16


class Monomial(NamedTuple):
    """Normal-ordered fermion word, as creation and annihilation bit masks."""

    dag: int
    ann: int

    @property
    def grade(self) -> int:
        return (self.dag.bit_count() + self.ann.bit_count()) & 1

    def word(self) -> tuple[int, ...]:
        return _word(self)

    def __str__(self) -> str:
        parts = [f"d{i + 1}" for i in _bits(self.dag)] + [f"a{i + 1}" for i in _bits(self.ann)]
        return " ".join(parts) if parts else "1"

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        """Parse the text form, e.g. ``"d1 d3 a2"``; the word must already be normal-ordered."""
        text = text.strip()
        if text in ("", "1"):
            return IDENTITY
        letters = []
        for tok in text.split():
            if len(tok) < 2 or tok[0] not in "da" or not tok[1:].isdigit() or int(tok[1:]) < 1:
                raise ValueError(f"bad fermion letter {tok!r}")
            idx = int(tok[1:]) - 1
            letters.append(idx if tok[0] == "d" else ANN + idx)
        if any(x >= y for x, y in zip(letters, letters[1:])):
            raise ValueError(f"monomial {text!r} is not in normal order")
        return cls(*_masks(letters))


IDENTITY = Monomial(0, 0)


def _bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _word(m: Monomial) -> tuple[int, ...]:
    return tuple(_bits(m.dag)) + tuple(ANN + i for i in _bits(m.ann))


def _masks(letters: Iterable[int]) -> tuple[int, int]:
    dag = ann = 0
    for x in letters:
        if x >= ANN:
            ann |= 1 << (x - ANN)
        else:
            dag |= 1 << x
    return dag, ann


@lru_cache(maxsize=None)
def normal_order(word: tuple[int, ...]) -> tuple[tuple[Monomial, int], ...]:
    """Expand an arbitrary word into normal-ordered monomials with integer coefficients.

    Rewrites the first out-of-order adjacent pair using the canonical
    anticommutation relations; each step shortens the word or removes an
    inversion, so the recursion terminates.
    """
    for p in range(len(word) - 1):
        x, y = word[p], word[p + 1]
        if x < y:
            continue
        if x == y:
            return ()
        out: dict[Monomial, int] = defaultdict(int)
        swapped = word[:p] + (y, x) + word[p + 2 :]
        for m, c in normal_order(swapped):
            out[m] -= c
        if x >= ANN and y < ANN and x - ANN == y:
            for m, c in normal_order(word[:p] + word[p + 2 :]):
                out[m] += c
        return tuple((m, c) for m, c in out.items() if c)
    return ((Monomial(*_masks(word)), 1),)


@lru_cache(maxsize=1 << 18)
def mono_mul(x: Monomial, y: Monomial) -> tuple[tuple[Monomial, int], ...]:
    """Normal-ordered expansion of the product ``x * y``."""
    if not x.ann and not y.dag:
        # creators times annihilators is already normal ordered
        return ((Monomial(x.dag, y.ann), 1),)
    return normal_order(_word(x) + _word(y))


@lru_cache(maxsize=None)
def _mono_star(m: Monomial) -> tuple[tuple[Monomial, int], ...]:
    word = tuple((x - ANN) if x >= ANN else (x + ANN) for x in reversed(_word(m)))
    return normal_order(word)


@lru_cache(maxsize=None)
def _mono_reversal(m: Monomial) -> tuple[tuple[Monomial, int], ...]:
    return normal_order(tuple(reversed(_word(m))))


def bilinear(xterms: Mapping, yterms: Mapping, keymul: Callable) -> dict:
    """Bilinear product of two coefficient maps.

    Terms are grouped by coefficient first, so the inner expansion runs on
    plain integers and only one exact multiplication is needed per pair of
    distinct coefficients.
    """
    gx: dict[ExactScalar, list] = defaultdict(list)
    gy: dict[ExactScalar, list] = defaultdict(list)
    for k, c in xterms.items():
        gx[c].append(k)
    for k, c in yterms.items():
        gy[c].append(k)
    out: dict = {}
    for cx, kxs in gx.items():
        for cy, kys in gy.items():
            acc: dict = defaultdict(int)
            for kx in kxs:
                for ky in kys:
                    for k, c in keymul(kx, ky):
                        acc[k] += c
            coeff = cx * cy
            for k, v in acc.items():
                if v:
                    term = coeff * v
                    prev = out.get(k)
                    out[k] = term if prev is None else prev + term
    return {k: v for k, v in out.items() if v}


def linear_map(terms: Mapping, keymap: Callable, coeffmap: Callable | None = None) -> dict:
    """Apply a map given on basis keys (as integer combinations) to a coefficient map."""
    out: dict = {}
    for k, c in terms.items():
        if coeffmap is not None:
            c = coeffmap(c)
        for k2, v in keymap(k):
            term = c * v
            prev = out.get(k2)
            out[k2] = term if prev is None else prev + term
    return {k: v for k, v in out.items() if v}


class AlgebraElement:
    """Finite linear combination of normal-ordered monomials over ExactScalar.

    Immutable value type; arithmetic returns new elements in canonical form,
    so ``==`` decides equality in A(N).
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Monomial, object] | None = None):
        if n < 1:
            raise ValueError("number of modes must be positive")
        self.n = n
        t = {}
        if terms:
            limit = 1 << n
            for m, c in terms.items():
                if not isinstance(m, Monomial):
                    m = Monomial(*m)
                if m.dag >= limit or m.ann >= limit:
                    raise ValueError(f"monomial {m} exceeds {n} modes")
                c = as_scalar(c)
                if c:
                    t[m] = t[m] + c if m in t else c
            t = {m: c for m, c in t.items() if c}
        self._terms = t
        self._hash = None

    @classmethod
    def _wrap(cls, n: int, terms: dict) -> "AlgebraElement":
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def one(cls, n: int) -> "AlgebraElement":
        return cls._wrap(n, {IDENTITY: ONE})

    @classmethod
    def zero(cls, n: int) -> "AlgebraElement":
        return cls._wrap(n, {})

    @classmethod
    def scalar(cls, n: int, c) -> "AlgebraElement":
        return cls(n, {IDENTITY: c})

    @classmethod
    def basis(cls, n: int, m: Monomial) -> "AlgebraElement":
        return cls(n, {m: ONE})

    @property
    def terms(self) -> Mapping[Monomial, ExactScalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "AlgebraElement") -> None:
        if self.n != other.n:
            raise ValueError(f"mode count mismatch: {self.n} vs {other.n}")

    def _lift(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            self._check(other)
            return other
        return AlgebraElement.scalar(self.n, as_scalar(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraElement):
            return self.n == other.n and self._terms == other._terms
        try:
            return self._terms == self._lift(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        t = dict(self._terms)
        for m, c in o._terms.items():
            v = t[m] + c if m in t else c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return AlgebraElement._wrap(self.n, t)

    __radd__ = __add__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement._wrap(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            return self + (-self._lift(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "AlgebraElement":
        c = as_scalar(c)
        if not c:
            return AlgebraElement.zero(self.n)
        return AlgebraElement._wrap(self.n, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return alg_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        return self.scale(as_scalar(other).inverse())

    def __pow__(self, k: int) -> "AlgebraElement":
        if k < 0:
            raise ValueError("negative powers are not defined for general elements")
        result = AlgebraElement.one(self.n)
        for _ in range(k):
            result = result * self
        return result

    def star(self) -> "AlgebraElement":
        return star(self)

    def reversal(self) -> "AlgebraElement":
        return reversal(self)

    @property
    def grade(self) -> str:
        return grade(self)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in sorted(self._terms.items(), key=lambda kv: _mono_key(kv[0])):
            parts.append(f"({c})*{m}" if m != IDENTITY else f"({c})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"AlgebraElement(n={self.n}, {self})"

    def to_json(self) -> list:
        return [[str(m), str(c)] for m, c in sorted(self._terms.items(), key=lambda kv: _mono_key(kv[0]))]

    @classmethod
    def from_json(cls, n: int, data: list) -> "AlgebraElement":
        return cls(n, {Monomial.parse(m): ExactScalar.parse(c) for m, c in data})

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.to_json()).encode()).hexdigest()[:16]


def _mono_key(m: Monomial) -> tuple:
    return (m.dag.bit_count() + m.ann.bit_count(), m.dag, m.ann)


def alg_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._check(y)
    return AlgebraElement._wrap(x.n, bilinear(x._terms, y._terms, mono_mul))


def star(x: AlgebraElement) -> AlgebraElement:
    """Anti-linear anti-automorphism exchanging ``psi_i`` and ``psi_i^dag``."""
    return AlgebraElement._wrap(x.n, linear_map(x._terms, _mono_star, lambda c: c.conjugate()))


def reversal(x: AlgebraElement) -> AlgebraElement:
    """Linear anti-automorphism fixing every generator (word reversal)."""
    return AlgebraElement._wrap(x.n, linear_map(x._terms, _mono_reversal))


def grade(x: AlgebraElement) -> str:
    """``"even"``, ``"odd"`` or ``"mixed"``; the zero element counts as even."""
    grades = {m.grade for m in x._terms}
    if len(grades) > 1:
        return "mixed"
    return "odd" if grades == {1} else "even"


def _mode(n: int, i: int) -> int:
    if not 1 <= i <= n:
        raise IndexError(f"mode index {i} outside 1..{n}")
    return 1 << (i - 1)


def psi(n: int, i: int) -> AlgebraElement:
    return AlgebraElement._wrap(n, {Monomial(0, _mode(n, i)): ONE})


def psid(n: int, i: int) -> AlgebraElement:
    return AlgebraElement._wrap(n, {Monomial(_mode(n, i), 0): ONE})


def number_op(n: int, i: int) -> AlgebraElement:
    b = _mode(n, i)
    return AlgebraElement._wrap(n, {Monomial(b, b): ONE})


def omega_power(n: int, i: int, k: int) -> AlgebraElement:
    """``psi_i psi_i^dag + q**(-k) psi_i^dag psi_i``; k = 1 and k = -1 give omega_i and its inverse."""
    b = _mode(n, i)
    return AlgebraElement(n, {IDENTITY: ONE, Monomial(b, b): Q ** (-k) - ONE})


def omega(n: int, i: int) -> AlgebraElement:
    return omega_power(n, i, 1)


def omega_inv(n: int, i: int) -> AlgebraElement:
    return omega_power(n, i, -1)


def zeta(n: int, i: int) -> AlgebraElement:
    """``psi_i psi_i^dag - psi_i^dag psi_i`` (the mode parity, squares to 1)."""
    b = _mode(n, i)
    return AlgebraElement._wrap(n, {IDENTITY: ONE, Monomial(b, b): as_scalar(-2)})


def basis_monomials(n: int) -> list[Monomial]:
    """All 4**n normal-ordered monomials, lowest degree first."""
    return sorted((Monomial(d, a) for d, a in product(range(1 << n), repeat=2)), key=_mono_key)


def anticommutator(x, y):
    return x * y + y * x


def commutator(x, y):
    return x * y - y * x


def verify_q_clifford(n: int, *, backend: str = "exact", q_samples=None) -> Report:
    """Check the q-deformed fermion relations, and the refined forms, inside A(n)."""
    samples = q_samples or DEFAULT_Q_SAMPLES
    rep = Report("clifford", n, backend)

    def check(rel, lhs, rhs, **params):
        rep.add(compare(rel, lhs, rhs, params=params, backend=backend, q_samples=samples))

    one = AlgebraElement.one(n)
    zero = AlgebraElement.zero(n)
    q = Q
    qi = Q.inverse()
    modes = range(1, n + 1)
    w = {i: omega(n, i) for i in modes}
    wi = {i: omega_inv(n, i) for i in modes}
    for i in modes:
        p, pd = psi(n, i), psid(n, i)
        check("omega.inverse", w[i] * wi[i], one, i=i, side="right")
        check("omega.inverse", wi[i] * w[i], one, i=i, side="left")
        for j in modes:
            check("omega.commute", w[i] * w[j], w[j] * w[i], i=i, j=j)
            pj, pdj = psi(n, j), psid(n, j)
            check("omega.conjugate_psi", w[i] * pj * wi[i], pj.scale(q) if i == j else pj, i=i, j=j)
            check("omega.conjugate_psid", w[i] * pdj * wi[i], pdj.scale(qi) if i == j else pdj, i=i, j=j)
            check("psi.anticommute", anticommutator(p, pj), zero, i=i, j=j, kind="psi")
            check("psi.anticommute", anticommutator(pd, pdj), zero, i=i, j=j, kind="psid")
            check("psi.mixed_anticommute", anticommutator(p, pdj), one if i == j else zero, i=i, j=j)
        check("omega.square_forms", p * pd + (pd * p).scale(q * q), wi[i] * wi[i], i=i, sign=-2)
        check("omega.square_forms", p * pd + (pd * p).scale(qi * qi), w[i] * w[i], i=i, sign=2)
        for k in range(-3, 4):
            base = w[i] if k >= 0 else wi[i]
            check("omega.power", omega_power(n, i, k), base ** abs(k), i=i, k=k)
            for k2 in range(-3, 4):
                check("omega.power_add", omega_power(n, i, k) * omega_power(n, i, k2), omega_power(n, i, k + k2), i=i, k=k, k2=k2)
        check("omega.quadratic", (w[i] - one) * (w[i].scale(q) - one), zero, i=i)
        check("omega.absorb_psi", w[i] * p, p, i=i, side="left")
        check("omega.absorb_psi", p * w[i], p.scale(qi), i=i, side="right")
        check("omega.absorb_psid", pd * w[i], pd, i=i, side="right")
        check("omega.absorb_psid", w[i] * pd, pd.scale(qi), i=i, side="left")
        check("omega.star", star(w[i]), w[i], i=i, power=1)
        check("omega.star", star(wi[i]), wi[i], i=i, power=-1)
        z = zeta(n, i)
        check("zeta.square", z * z, one, i=i)
        check("omega.zeta_form", w[i].scale(2), one.scale(qi + ONE) - z.scale(qi - ONE), i=i, power=1)
        check("omega.zeta_form", wi[i].scale(2), one.scale(q + ONE) - z.scale(q - ONE), i=i, power=-1)
        check("omega.reversal", reversal(w[i]), wi[i].scale(qi), i=i, power=1)
        check("omega.reversal", reversal(wi[i]), w[i].scale(q), i=i, power=-1)
    if n <= 3:
        bad = [m for m in basis_monomials(n) if reversal(reversal(AlgebraElement.basis(n, m))) != AlgebraElement.basis(n, m)]
        rep.add(flag("reversal.involutive", not bad, params={"monomials": 4**n}, note=str(bad[0]) if bad else ""))
    return rep
