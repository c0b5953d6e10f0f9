"""Graded tensor powers of A(N) (arity 2 and 3).

Products carry the Koszul sign ``(-1)**M`` with ``M = sum_{i>j} d(a_i) d(b_j)``.
Operators on ``V^{(x)n}`` are obtained by inserting parity operators:
component ``j`` becomes ``mat(a_j) P**(d(a_{j+1}) + ... + d(a_n))``, which turns
the Koszul sign into ordinary matrix multiplication.
"""

from __future__ import annotations

import hashlib
import json
from functools import lru_cache
from itertools import product
from typing import Callable, Mapping

from .clifford import (
    IDENTITY,
    AlgebraElement,
    Monomial,
    _mono_key,
    _mono_reversal,
    _mono_star,
    bilinear,
    linear_map,
    mono_mul,
)
from .fock import FockMatrix, _mono_matrix
from .scalar import ONE, ExactScalar, as_scalar

__all__ = [
    "GradedTensor",
    "STAR_CONVENTIONS",
    "tensor",
    "tensor_mul",
    "tensor_star",
    "mult_m",
    "flip_tau",
    "reversal_Y_tensor",
    "map_Z",
    "apply_at",
    "tensor_to_matrix",
]

STAR_CONVENTIONS = ("adjoint", "diagonal")

Key = tuple  # tuple of Monomials


def _koszul(x: Key, y: Key) -> int:
    """Parity of sum over i > j of d(x_i) d(y_j)."""
    acc = 0
    seen = 0  # number of odd components of y to the left of position i
    for i in range(len(x)):
        if i:
            seen += y[i - 1].grade
        acc += x[i].grade * seen
    return acc & 1


def _key_mul(x: Key, y: Key) -> tuple[tuple[Key, int], ...]:
    if len(x) == 2:
        a0, a1 = x
        b0, b1 = y
        odd = (a1.dag.bit_count() + a1.ann.bit_count()) & (b0.dag.bit_count() + b0.ann.bit_count()) & 1
        p0 = mono_mul(a0, b0)
        if not p0:
            return ()
        p1 = mono_mul(a1, b1)
        if odd:
            return tuple(((m0, m1), -c0 * c1) for m0, c0 in p0 for m1, c1 in p1)
        return tuple(((m0, m1), c0 * c1) for m0, c0 in p0 for m1, c1 in p1)
    return _key_mul_general(x, y)


def _key_mul_general(x: Key, y: Key) -> tuple[tuple[Key, int], ...]:
    sign = -1 if _koszul(x, y) else 1
    parts = [mono_mul(a, b) for a, b in zip(x, y)]
    out = []
    for combo in product(*parts):
        c = sign
        for _, v in combo:
            c *= v
        out.append((tuple(m for m, _ in combo), c))
    return tuple(out)


def _star_sign(x: Key, convention: str) -> int:
    grades = [m.grade for m in x]
    lower = sum(grades[i] * grades[j] for i in range(1, len(x)) for j in range(i))
    if convention == "diagonal":
        lower += sum(grades[1:])
    elif convention != "adjoint":
        raise ValueError(f"unknown star convention {convention!r}")
    return -1 if lower & 1 else 1


@lru_cache(maxsize=None)
def _key_star(x: Key, convention: str) -> tuple[tuple[Key, int], ...]:
    sign = _star_sign(x, convention)
    out = []
    for combo in product(*(_mono_star(m) for m in x)):
        c = sign
        for _, v in combo:
            c *= v
        out.append((tuple(m for m, _ in combo), c))
    return tuple(out)


@lru_cache(maxsize=None)
def _key_reversal(x: Key) -> tuple[tuple[Key, int], ...]:
    out = []
    for combo in product(*(_mono_reversal(m) for m in reversed(x))):
        c = 1
        for _, v in combo:
            c *= v
        out.append((tuple(m for m, _ in combo), c))
    return tuple(out)


class GradedTensor:
    """Element of ``A(N)^{(x)arity}``: a map from tuples of monomials to scalars."""

    __slots__ = ("n", "arity", "_terms", "_hash")

    def __init__(self, n: int, arity: int, terms: Mapping[Key, object] | None = None):
        if arity not in (2, 3):
            raise ValueError("tensor arity must be 2 or 3")
        self.n = n
        self.arity = arity
        t: dict = {}
        for k, c in (terms or {}).items():
            k = tuple(m if isinstance(m, Monomial) else Monomial(*m) for m in k)
            if len(k) != arity:
                raise ValueError(f"key {k} does not have {arity} components")
            c = as_scalar(c)
            t[k] = t[k] + c if k in t else c
        self._terms = {k: c for k, c in t.items() if c}
        self._hash = None

    @classmethod
    def _wrap(cls, n: int, arity: int, terms: dict) -> "GradedTensor":
        obj = cls.__new__(cls)
        obj.n = n
        obj.arity = arity
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def one(cls, n: int, arity: int = 2) -> "GradedTensor":
        return cls._wrap(n, arity, {(IDENTITY,) * arity: ONE})

    @classmethod
    def zero(cls, n: int, arity: int = 2) -> "GradedTensor":
        return cls._wrap(n, arity, {})

    @property
    def terms(self) -> Mapping[Key, ExactScalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "GradedTensor") -> None:
        if (self.n, self.arity) != (other.n, other.arity):
            raise ValueError(
                f"tensor shape mismatch: (n={self.n}, arity={self.arity}) vs (n={other.n}, arity={other.arity})"
            )

    def _lift(self, other) -> "GradedTensor":
        if isinstance(other, GradedTensor):
            self._check(other)
            return other
        return GradedTensor.one(self.n, self.arity).scale(other)

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedTensor):
            return (self.n, self.arity) == (other.n, other.arity) and self._terms == other._terms
        try:
            return self._terms == self._lift(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.arity, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        t = dict(self._terms)
        for k, c in o._terms.items():
            v = t[k] + c if k in t else c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return GradedTensor._wrap(self.n, self.arity, t)

    __radd__ = __add__

    def __neg__(self) -> "GradedTensor":
        return GradedTensor._wrap(self.n, self.arity, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            return self + (-self._lift(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "GradedTensor":
        c = as_scalar(c)
        if not c:
            return GradedTensor.zero(self.n, self.arity)
        return GradedTensor._wrap(self.n, self.arity, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, GradedTensor):
            return tensor_mul(self, other)
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

    def __pow__(self, k: int) -> "GradedTensor":
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = GradedTensor.one(self.n, self.arity)
        for _ in range(k):
            out = out * self
        return out

    def star(self, convention: str = "adjoint") -> "GradedTensor":
        return tensor_star(self, convention)

    def reversal(self) -> "GradedTensor":
        return reversal_Y_tensor(self)

    def _sorted(self):
        return sorted(self._terms.items(), key=lambda kv: tuple(_mono_key(m) for m in kv[0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({c})*[{' | '.join(map(str, k))}]" for k, c in self._sorted())

    def __repr__(self) -> str:
        return f"GradedTensor(n={self.n}, arity={self.arity}, {self})"

    def to_json(self) -> list:
        return [[[str(m) for m in k], str(c)] for k, c in self._sorted()]

    @classmethod
    def from_json(cls, n: int, data: list) -> "GradedTensor":
        if not data:
            raise ValueError("cannot infer arity of an empty term list; use GradedTensor.zero")
        arity = len(data[0][0])
        return cls(n, arity, {tuple(Monomial.parse(m) for m in k): ExactScalar.parse(c) for k, c in data})

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.to_json()).encode()).hexdigest()[:16]


def tensor(*factors: AlgebraElement) -> GradedTensor:
    """``x_1 (x) x_2 (x) ...`` of algebra elements (plain outer product, no sign)."""
    if len(factors) not in (2, 3):
        raise ValueError("tensor arity must be 2 or 3")
    n = factors[0].n
    if any(f.n != n for f in factors):
        raise ValueError("mode count mismatch between tensor factors")
    out: dict = {}
    for combo in product(*(f.items() for f in factors)):
        c = ONE
        for _, v in combo:
            c = c * v
        out[tuple(m for m, _ in combo)] = c
    return GradedTensor._wrap(n, len(factors), out)


def tensor_mul(x: GradedTensor, y: GradedTensor) -> GradedTensor:
    x._check(y)
    return GradedTensor._wrap(x.n, x.arity, bilinear(x._terms, y._terms, _key_mul))


def tensor_star(x: GradedTensor, convention: str = "adjoint") -> GradedTensor:
    """Anti-linear star on tensors.

    ``adjoint`` uses the sign ``sum_{i>j} d(a_i)d(a_j)``, which matches the
    matrix adjoint on ``V^{(x)n}``.  ``diagonal`` also counts the diagonal
    terms ``d(a_i)^2`` for ``i >= 2``.
    """
    if convention not in STAR_CONVENTIONS:
        raise ValueError(f"unknown star convention {convention!r}")
    return GradedTensor._wrap(
        x.n, x.arity, linear_map(x._terms, lambda k: _key_star(k, convention), lambda c: c.conjugate())
    )


def mult_m(x: GradedTensor) -> AlgebraElement:
    """Multiply the components together: ``a_1 a_2 ... a_n``."""

    def keymap(k: Key):
        acc = {IDENTITY: 1}
        for m in k:
            nxt: dict = {}
            for m0, c0 in acc.items():
                for m1, c1 in mono_mul(m0, m):
                    nxt[m1] = nxt.get(m1, 0) + c0 * c1
            acc = {m: c for m, c in nxt.items() if c}
        return acc.items()

    return AlgebraElement._wrap(x.n, linear_map(x._terms, keymap))


def flip_tau(x: GradedTensor, signed: bool = False) -> GradedTensor:
    """``a (x) b -> b (x) a``; with ``signed`` odd(x)odd terms pick up a minus sign."""
    if x.arity != 2:
        raise ValueError("flip is defined on arity-2 tensors only")
    out = {}
    for (a, b), c in x.items():
        out[(b, a)] = -c if signed and a.grade and b.grade else c
    return GradedTensor._wrap(x.n, 2, out)


def reversal_Y_tensor(x: GradedTensor) -> GradedTensor:
    """Reverse the tensor order and reverse every component word (no sign)."""
    return GradedTensor._wrap(x.n, x.arity, linear_map(x._terms, _key_reversal))


def map_Z(x: GradedTensor) -> GradedTensor:
    """Identity on terms with an even component, reversal on odd (x) odd terms."""
    if x.arity != 2:
        raise ValueError("Z is defined on arity-2 tensors only")

    def keymap(k: Key):
        if k[0].grade and k[1].grade:
            return _key_reversal(k)
        return ((k, 1),)

    return GradedTensor._wrap(x.n, 2, linear_map(x._terms, keymap))


def apply_at(x, pos: int, image: Callable[[Monomial], GradedTensor]) -> GradedTensor:
    """Replace component ``pos`` of every term by its image under an arity-2 map.

    ``x`` may be an AlgebraElement (then ``pos`` must be 0 and this is just the
    map itself) or an arity-2 tensor, giving ``(h (x) id)`` for ``pos=0`` and
    ``(id (x) h)`` for ``pos=1``.
    """
    if isinstance(x, AlgebraElement):
        keys = {(m,): c for m, c in x.items()}
    else:
        keys = dict(x.items())
    arity = len(next(iter(keys))) + 1 if keys else (2 if isinstance(x, AlgebraElement) else x.arity + 1)
    out: dict = {}
    for k, c in keys.items():
        if not 0 <= pos < len(k):
            raise ValueError(f"position {pos} outside a {len(k)}-fold tensor")
        for sub, v in image(k[pos]).items():
            key = k[:pos] + sub + k[pos + 1 :]
            term = c * v
            prev = out.get(key)
            out[key] = term if prev is None else prev + term
    return GradedTensor._wrap(x.n, arity, {k: v for k, v in out.items() if v})


@lru_cache(maxsize=None)
def _component_pattern(n: int, m: Monomial, parity: int) -> tuple:
    """Sparse ``mat(m) P**parity`` as (row, col, sign) triples."""
    if not parity:
        return _mono_matrix(n, m)
    return tuple((r, c, -s if c.bit_count() & 1 else s) for r, c, s in _mono_matrix(n, m))


@lru_cache(maxsize=1 << 16)
def _key_pattern(n: int, k: Key) -> tuple:
    grades = [m.grade for m in k]
    dim = 1 << n
    pats = [_component_pattern(n, m, sum(grades[j + 1 :]) & 1) for j, m in enumerate(k)]
    out = [(0, 0, 1)]
    for pat in pats:
        out = [(r0 * dim + r, c0 * dim + c, s0 * s) for r0, c0, s0 in out for r, c, s in pat]
    return tuple(out)


def tensor_to_matrix(x: GradedTensor) -> FockMatrix:
    """Exact operator on ``V^{(x)arity}`` (parity-inserted Kronecker embedding)."""
    out: dict = {}
    for k, c in x.items():
        for r, col, s in _key_pattern(x.n, k):
            term = c * s
            key = (r, col)
            out[key] = out[key] + term if key in out else term
    return FockMatrix._wrap(1 << (x.n * x.arity), {k: v for k, v in out.items() if v})
