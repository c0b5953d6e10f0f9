"""U_q(su(N)) generators in the spinor realization, relation checks and the coproduct."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .clifford import AlgebraElement, omega, omega_inv, psi, psid, star
from .report import DEFAULT_Q_SAMPLES, Report, compare, flag
from .scalar import ONE, Q, ExactScalar, gauss_binom
from .tensor import GradedTensor, tensor

__all__ = [
    "QGroupGenerators",
    "cartan_matrix",
    "build_generators",
    "verify_uq_relations",
    "verify_extra_relations",
    "coproduct_delta",
    "verify_coproduct",
    "verify_star_structure",
    "verify_qgroup",
]

GENERATOR_KINDS = ("e", "f", "k", "kinv")


@dataclass(frozen=True)
class QGroupGenerators:
    """``e[i-1], f[i-1], k[i-1], k_inv[i-1]`` for ``i = 1 .. n-1``."""

    n: int
    e: tuple
    f: tuple
    k: tuple
    k_inv: tuple

    @property
    def rank(self) -> int:
        return self.n - 1

    def get(self, which: str, i: int) -> AlgebraElement:
        if which not in GENERATOR_KINDS:
            raise ValueError(f"unknown generator {which!r}; expected one of {GENERATOR_KINDS}")
        if not 1 <= i <= self.rank:
            raise IndexError(f"generator index {i} outside 1..{self.rank}")
        seq = {"e": self.e, "f": self.f, "k": self.k, "kinv": self.k_inv}[which]
        return seq[i - 1]


def cartan_matrix(n: int) -> list[list[int]]:
    """Cartan matrix of type A_{n-1}."""
    r = n - 1
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(r)] for i in range(r)]


def build_generators(n: int) -> QGroupGenerators:
    if n < 2:
        raise ValueError("the quantum group needs at least two modes (N >= 2)")
    idx = range(1, n)
    return QGroupGenerators(
        n=n,
        e=tuple(psi(n, i) * psid(n, i + 1) for i in idx),
        f=tuple(psi(n, i + 1) * psid(n, i) for i in idx),
        k=tuple(omega(n, i) * omega_inv(n, i + 1) for i in idx),
        k_inv=tuple(omega(n, i + 1) * omega_inv(n, i) for i in idx),
    )


def _q_power(a: int) -> ExactScalar:
    return Q ** a


def _relation_checks(
    rep: Report,
    e: Sequence,
    f: Sequence,
    k: Sequence,
    k_inv: Sequence,
    one,
    *,
    backend: str,
    q_samples: Sequence,
    prefix: str = "uq",
) -> None:
    """Defining relations of U_q(A_{r}) for any concrete images of the generators."""
    r = len(e)
    a = cartan_matrix(r + 1)
    zero = one - one
    qq = Q * Q
    denom = qq - qq.inverse()

    def check(rel, lhs, rhs, **params):
        rep.add(compare(f"{prefix}.{rel}", lhs, rhs, params=params, backend=backend, q_samples=q_samples))

    for i in range(r):
        check("k_inverse", k[i] * k_inv[i], one, i=i + 1, side="right")
        check("k_inverse", k_inv[i] * k[i], one, i=i + 1, side="left")
        for j in range(r):
            p = dict(i=i + 1, j=j + 1)
            check("k_commute", k[i] * k[j], k[j] * k[i], **p)
            check("k_conjugate_e", k[i] * e[j] * k_inv[i], e[j].scale(_q_power(a[i][j])), **p)
            check("k_conjugate_f", k[i] * f[j] * k_inv[i], f[j].scale(_q_power(-a[i][j])), **p)
            rhs = (k[i] * k[i] - k_inv[i] * k_inv[i]) if i == j else zero
            check("ef_commutator", (e[i] * f[j] - f[j] * e[i]).scale(denom), rhs, **p)
            if i == j:
                continue
            deg = 1 - a[i][j]
            for name, x in (("serre_e", e), ("serre_f", f)):
                acc = zero
                for m in range(deg + 1):
                    coeff = gauss_binom(deg, m, 2) * (-1) ** m
                    acc = acc + (x[i] ** (deg - m) * x[j] * x[i] ** m).scale(coeff)
                check(name, acc, zero, **p)


def verify_uq_relations(
    g: QGroupGenerators, *, backend: str = "exact", q_samples: Sequence = DEFAULT_Q_SAMPLES
) -> Report:
    """Quantum group relations with the commutator relation in cross-multiplied form."""
    rep = Report("qgroup", g.n, backend)
    _relation_checks(rep, g.e, g.f, g.k, g.k_inv, AlgebraElement.one(g.n), backend=backend, q_samples=q_samples)
    return rep


def verify_extra_relations(
    g: QGroupGenerators, *, backend: str = "exact", q_samples: Sequence = DEFAULT_Q_SAMPLES
) -> Report:
    """Relations that hold in the spinor representation but not in U_q itself."""
    rep = Report("qgroup", g.n, backend)
    one = AlgebraElement.one(g.n)
    zero = AlgebraElement.zero(g.n)
    q, qi = Q, Q.inverse()

    def check(rel, lhs, rhs, i):
        rep.add(compare(f"extra.{rel}", lhs, rhs, params={"i": i}, backend=backend, q_samples=q_samples))

    for i in range(1, g.n):
        e, f, k, ki = g.get("e", i), g.get("f", i), g.get("k", i), g.get("kinv", i)
        check("e_square", e * e, zero, i)
        check("f_square", f * f, zero, i)
        check("k_cubic", (k - one) * (k - one.scale(q)) * (k - one.scale(qi)), zero, i)
        check("efe", e * f * e, e, i)
        check("fef", f * e * f, f, i)
        check("k_from_ef", k.scale(q), one.scale(q) + (f * e - (e * f).scale(q)).scale(ONE - q), i)
        check("kinv_from_ef", ki.scale(q), one.scale(q) + (e * f - (f * e).scale(q)).scale(ONE - q), i)
        check("e_k", e * k, e.scale(qi), i)
        check("f_k", f * k, f.scale(q), i)
        check("k_e", k * e, e.scale(q), i)
        check("k_f", k * f, f.scale(qi), i)
    return rep


def coproduct_delta(g: QGroupGenerators, which: str, i: int) -> GradedTensor:
    """Standard coproduct of a generator, as an element of A(N) (x) A(N)."""
    x = g.get(which, i)
    k, ki = g.get("k", i), g.get("kinv", i)
    if which in ("e", "f"):
        return tensor(k, x) + tensor(x, ki)
    return tensor(x, x)


def verify_coproduct(
    g: QGroupGenerators, *, backend: str = "exact", q_samples: Sequence = DEFAULT_Q_SAMPLES
) -> Report:
    """The coproduct images satisfy the quantum group relations in A(N) (x) A(N)."""
    rep = Report("coproduct", g.n, backend)
    imgs = {w: [coproduct_delta(g, w, i) for i in range(1, g.n)] for w in GENERATOR_KINDS}
    _relation_checks(
        rep,
        imgs["e"],
        imgs["f"],
        imgs["k"],
        imgs["kinv"],
        GradedTensor.one(g.n),
        backend=backend,
        q_samples=q_samples,
        prefix="coproduct",
    )
    for i in range(1, g.n):
        e = g.get("e", i)
        de = imgs["e"][i - 1]
        ok = (e * e).is_zero() and not (de * de).is_zero()
        rep.add(flag("coproduct.e_square_nonzero", ok, params={"i": i}, note="e_i^2 = 0 but Delta(e_i)^2 != 0"))
    return rep


def verify_star_structure(
    g: QGroupGenerators, *, backend: str = "exact", q_samples: Sequence = DEFAULT_Q_SAMPLES
) -> Report:
    rep = Report("qgroup", g.n, backend)
    for i in range(1, g.n):
        for src, dst in (("e", "f"), ("f", "e"), ("k", "k"), ("kinv", "kinv")):
            rep.add(
                compare(
                    "star.generator",
                    star(g.get(src, i)),
                    g.get(dst, i),
                    params={"i": i, "gen": src},
                    backend=backend,
                    q_samples=q_samples,
                )
            )
    return rep


def verify_qgroup(n: int, *, backend: str = "exact", q_samples: Sequence = DEFAULT_Q_SAMPLES) -> Report:
    g = build_generators(n)
    rep = Report("qgroup", n, backend)
    for part in (verify_uq_relations, verify_extra_relations, verify_star_structure):
        rep.extend(part(g, backend=backend, q_samples=q_samples))
    return rep
