"""Fock representation of A(N) on the 2**N dimensional space V.

Basis vector ``|m>`` (occupations ``m_1..m_N``) has index ``sum m_i 2**(i-1)``.
Matrices are kept sparse and exact; ``to_numpy`` evaluates them at a value of q.
"""

from __future__ import annotations

import json
from collections import defaultdict
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .clifford import ANN, AlgebraElement, Monomial, _word
from .report import DEFAULT_Q_SAMPLES, Report, flag
from .scalar import ONE, ExactScalar, QISqrt2, as_scalar

__all__ = [
    "FockMatrix",
    "occupation",
    "index_of",
    "basis_vector",
    "apply",
    "to_matrix",
    "parity_matrix",
    "weight_decomposition",
    "check_invariance",
    "random_element",
    "verify_representation",
]


def occupation(n: int, index: int) -> tuple[int, ...]:
    return tuple((index >> i) & 1 for i in range(n))


def index_of(m: Sequence[int]) -> int:
    if any(x not in (0, 1) for x in m):
        raise ValueError(f"occupation numbers must be 0 or 1: {m}")
    return sum(x << i for i, x in enumerate(m))


def basis_vector(m: Sequence[int]) -> dict[int, ExactScalar]:
    return {index_of(m): ONE}


@lru_cache(maxsize=None)
def _letter_action(letter: int, state: int):
    """Apply one creation/annihilation letter to a basis state: (sign, new state) or None."""
    if letter >= ANN:
        i = letter - ANN
        if not (state >> i) & 1:
            return None
    else:
        i = letter
        if (state >> i) & 1:
            return None
    sign = -1 if (state & ((1 << i) - 1)).bit_count() & 1 else 1
    return sign, state ^ (1 << i)


@lru_cache(maxsize=None)
def _mono_action(m: Monomial, state: int):
    sign = 1
    for letter in reversed(_word(m)):
        hit = _letter_action(letter, state)
        if hit is None:
            return None
        s, state = hit
        sign *= s
    return sign, state


def apply(x: AlgebraElement, v: Mapping[int, object]) -> dict[int, ExactScalar]:
    """Act with ``x`` on a Fock vector given as ``{basis index: coefficient}``."""
    dim = 1 << x.n
    out: dict[int, ExactScalar] = {}
    for idx, coeff in v.items():
        if not 0 <= idx < dim:
            raise ValueError(f"basis index {idx} outside a {x.n}-mode Fock space")
        coeff = as_scalar(coeff)
        for m, c in x.items():
            hit = _mono_action(m, idx)
            if hit is None:
                continue
            sign, new = hit
            term = c * coeff * sign
            out[new] = out[new] + term if new in out else term
    return {k: v for k, v in out.items() if v}


class FockMatrix:
    """Sparse square matrix with ExactScalar entries, ``entries[(row, col)]``."""

    __slots__ = ("dim", "_e")

    def __init__(self, dim: int, entries: Mapping[tuple[int, int], object] | None = None):
        self.dim = dim
        e = {}
        for (r, c), v in (entries or {}).items():
            v = as_scalar(v)
            if v:
                e[(r, c)] = v
        self._e = e

    @classmethod
    def _wrap(cls, dim: int, e: dict) -> "FockMatrix":
        obj = cls.__new__(cls)
        obj.dim = dim
        obj._e = e
        return obj

    @classmethod
    def identity(cls, dim: int) -> "FockMatrix":
        return cls._wrap(dim, {(k, k): ONE for k in range(dim)})

    @property
    def entries(self) -> Mapping[tuple[int, int], ExactScalar]:
        return dict(self._e)

    def __getitem__(self, rc: tuple[int, int]) -> ExactScalar:
        return self._e.get(rc, as_scalar(0))

    def is_zero(self) -> bool:
        return not self._e

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockMatrix):
            return NotImplemented
        return self.dim == other.dim and self._e == other._e

    def _same(self, other: "FockMatrix") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "FockMatrix") -> "FockMatrix":
        self._same(other)
        e = dict(self._e)
        for k, v in other._e.items():
            w = e[k] + v if k in e else v
            if w:
                e[k] = w
            else:
                e.pop(k, None)
        return FockMatrix._wrap(self.dim, e)

    def __neg__(self) -> "FockMatrix":
        return FockMatrix._wrap(self.dim, {k: -v for k, v in self._e.items()})

    def __sub__(self, other: "FockMatrix") -> "FockMatrix":
        return self + (-other)

    def scale(self, c) -> "FockMatrix":
        c = as_scalar(c)
        return FockMatrix._wrap(self.dim, {k: v * c for k, v in self._e.items() if v * c})

    def __matmul__(self, other: "FockMatrix") -> "FockMatrix":
        self._same(other)
        by_col: dict[int, list] = defaultdict(list)
        for (r, k), v in self._e.items():
            by_col[k].append((r, v))
        out: dict = {}
        for (k, c), w in other._e.items():
            for r, v in by_col.get(k, ()):
                term = v * w
                key = (r, c)
                out[key] = out[key] + term if key in out else term
        return FockMatrix._wrap(self.dim, {k: v for k, v in out.items() if v})

    def adjoint(self) -> "FockMatrix":
        """Conjugate transpose (q is real, so only the field conjugation acts)."""
        return FockMatrix._wrap(self.dim, {(c, r): v.conjugate() for (r, c), v in self._e.items()})

    def kron(self, other: "FockMatrix") -> "FockMatrix":
        d = other.dim
        e = {}
        for (r1, c1), v1 in self._e.items():
            for (r2, c2), v2 in other._e.items():
                e[(r1 * d + r2, c1 * d + c2)] = v1 * v2
        return FockMatrix._wrap(self.dim * d, e)

    def at_q(self, q) -> dict[tuple[int, int], QISqrt2]:
        return {k: v.at_q(q) for k, v in self._e.items()}

    def to_numpy(self, q: float = 1.5) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for (r, c), v in self._e.items():
            out[r, c] = v.evaluate(q)
        return out

    def to_json(self) -> list[list[str]]:
        rows = [["0"] * self.dim for _ in range(self.dim)]
        for (r, c), v in self._e.items():
            rows[r][c] = str(v)
        return rows

    @classmethod
    def from_json(cls, rows: list[list[str]]) -> "FockMatrix":
        dim = len(rows)
        if any(len(r) != dim for r in rows):
            raise ValueError("matrix must be square")
        return cls(dim, {(i, j): ExactScalar.parse(v) for i, row in enumerate(rows) for j, v in enumerate(row)})

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __repr__(self) -> str:
        return f"FockMatrix(dim={self.dim}, nnz={len(self._e)})"


@lru_cache(maxsize=None)
def _mono_matrix(n: int, m: Monomial) -> tuple:
    cols = []
    for s in range(1 << n):
        hit = _mono_action(m, s)
        if hit is not None:
            cols.append((hit[1], s, hit[0]))
    return tuple(cols)


def to_matrix(x: AlgebraElement) -> FockMatrix:
    """Exact matrix of ``x`` acting on V."""
    out: dict = {}
    for m, c in x.items():
        for r, col, sign in _mono_matrix(x.n, m):
            term = c * sign
            key = (r, col)
            out[key] = out[key] + term if key in out else term
    return FockMatrix._wrap(1 << x.n, {k: v for k, v in out.items() if v})


def parity_matrix(n: int) -> FockMatrix:
    """``(-1)**|m|`` on the diagonal."""
    return FockMatrix._wrap(
        1 << n, {(k, k): as_scalar(-1 if k.bit_count() & 1 else 1) for k in range(1 << n)}
    )


def weight_decomposition(n: int) -> list[list[int]]:
    """Basis indices of each fixed-particle-number subspace ``V_0 .. V_n``."""
    spaces: list[list[int]] = [[] for _ in range(n + 1)]
    for idx in range(1 << n):
        spaces[idx.bit_count()].append(idx)
    assert [len(s) for s in spaces] == [comb(n, r) for r in range(n + 1)]
    return spaces


class _Span:
    """Incremental row echelon basis over Q(i, sqrt2)."""

    def __init__(self):
        self.rows: list[tuple[int, list[QISqrt2]]] = []

    def add(self, vec: list[QISqrt2]) -> bool:
        vec = list(vec)
        for pivot, row in self.rows:
            if vec[pivot]:
                f = vec[pivot]
                vec = [a - f * b for a, b in zip(vec, row)]
        for k, v in enumerate(vec):
            if v:
                inv = v.inverse()
                self.rows.append((k, [x * inv for x in vec]))
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)


def orbit_rank(mats: Iterable[dict], space: list[int], start: int) -> int:
    """Dimension of the span of words in ``mats`` applied to basis vector ``start``."""
    pos = {idx: k for k, idx in enumerate(space)}
    zero = QISqrt2(0)
    mats = list(mats)
    span = _Span()
    first = [zero] * len(space)
    first[pos[start]] = QISqrt2(1)
    queue = [first]
    span.add(first)
    while queue and span.rank < len(space):
        vec = queue.pop()
        for mat in mats:
            out = [zero] * len(space)
            for (r, c), v in mat.items():
                if c in pos and vec[pos[c]]:
                    out[pos[r]] = out[pos[r]] + v * vec[pos[c]]
            if any(out) and span.add(out):
                queue.append(out)
    return span.rank


def check_invariance(n: int, q_samples: Sequence = DEFAULT_Q_SAMPLES) -> Report:
    """Each ``V_r`` is invariant under e_i, f_i, k_i, k_i^-1 and irreducible under {e_i, f_i}."""
    from .qgroup import build_generators

    report = Report("weights", n)
    spaces = weight_decomposition(n)
    report.add(flag("weights.complete", sum(map(len, spaces)) == 1 << n, params={"n": n}))
    if n < 2:
        return report
    g = build_generators(n)
    named = {"e": g.e, "f": g.f, "k": g.k, "k_inv": g.k_inv}
    mats = {name: [to_matrix(x) for x in xs] for name, xs in named.items()}
    for r, space in enumerate(spaces):
        inside = set(space)
        for name, ms in mats.items():
            for i, m in enumerate(ms, start=1):
                ok = all((row in inside) == (col in inside) for (row, col) in m.entries)
                report.add(flag("weights.invariant", ok, params={"r": r, "gen": name, "i": i}))
        for q in q_samples:
            ladders = [m.at_q(q) for m in mats["e"] + mats["f"]]
            ok = all(orbit_rank(ladders, space, v) == len(space) for v in space)
            report.add(flag("weights.irreducible", ok, params={"r": r, "q": str(q), "dim": len(space)}))
    return report


def random_element(n: int, rng, terms: int = 3) -> AlgebraElement:
    """A sparse element with a few random basis monomials and simple q-dependent coefficients."""
    from .scalar import INV_SQRT2, I, Q

    coeffs = (ONE, -ONE, Q, Q.inverse(), I, INV_SQRT2 + Q)
    out = AlgebraElement.zero(n)
    for _ in range(terms):
        m = Monomial(rng.randrange(1 << n), rng.randrange(1 << n))
        out = out + AlgebraElement.basis(n, m).scale(rng.choice(coeffs))
    return out


def verify_representation(n: int, *, pairs: int = 200, seed: int = 0) -> Report:
    """Products and stars of random elements agree with matrix products and adjoints, exactly."""
    import random

    from .clifford import star

    rng = random.Random(seed)
    report = Report("clifford", n)
    mul_ok = star_ok = True
    for _ in range(pairs):
        x, y = random_element(n, rng), random_element(n, rng)
        mx, my = to_matrix(x), to_matrix(y)
        mul_ok = mul_ok and to_matrix(x * y) == mx @ my
        star_ok = star_ok and to_matrix(star(x)) == mx.adjoint()
        if not (mul_ok and star_ok):
            break
    report.add(flag("oracle.product", mul_ok, params={"pairs": pairs, "seed": seed}))
    report.add(flag("oracle.star", star_ok, params={"pairs": pairs, "seed": seed}))
    return report
