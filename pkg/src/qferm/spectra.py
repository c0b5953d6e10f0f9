"""Free-fermion quadratic operators on V (x) V and their explicit eigenbasis (floating point).

The operator is ``H = sum_ij a_ij psi_i (x) psi_j^dag + b_ij psi_i^dag (x) psi_j``
with ``b = -conj(a)``.  Variant A has real symmetric ``a``; variant B has
``i a`` real symmetric.  After rotating the modes, ``phi_l = sum_m u_lm psi_m``,
the 2N operators built from delta1 and delta2 on the ``phi_l`` turn ``H`` into a
sum of number operators, which gives the eigenvectors in closed form.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from .clifford import psi, psid
from .fock import parity_matrix, to_matrix
from .homs import FermionHom
from .tensor import tensor, tensor_to_matrix

__all__ = [
    "CouplingMatrix",
    "SpectralSolution",
    "validate_coupling",
    "build_H",
    "diagonalize_coupling",
    "phi_operators",
    "solve",
    "load_coupling",
]

INPUT_TOL = 1e-12
RESULT_TOL = 1e-9


@dataclass
class CouplingMatrix:
    a: np.ndarray
    variant: str = "A"

    @property
    def n(self) -> int:
        return self.a.shape[0]


def validate_coupling(c: CouplingMatrix, tol: float = INPUT_TOL) -> None:
    a = np.asarray(c.a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"coupling must be a nonempty square matrix, got shape {a.shape}")
    if a.shape[0] > 6:
        raise ValueError("at most 6 modes are supported (dimension 4**N)")
    if c.variant == "A":
        if np.abs(a.imag).max() > tol or np.abs(a - a.T).max() > tol:
            raise ValueError("variant A needs a real symmetric coupling matrix")
    elif c.variant == "B":
        h = 1j * a
        if np.abs(h.imag).max() > tol or np.abs(h - h.T).max() > tol:
            raise ValueError("variant B needs i*a to be real symmetric (a purely imaginary and symmetric)")
    else:
        raise ValueError(f"unknown variant {c.variant!r}; expected 'A' or 'B'")


@lru_cache(maxsize=None)
def _pair_matrices(n: int) -> tuple:
    """Dense matrices of psi_i (x) psi_j^dag and psi_i^dag (x) psi_j on V (x) V."""
    ab = np.empty((n, n), dtype=object)
    ba = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            ab[i, j] = tensor_to_matrix(tensor(psi(n, i + 1), psid(n, j + 1))).to_numpy()
            ba[i, j] = tensor_to_matrix(tensor(psid(n, i + 1), psi(n, j + 1))).to_numpy()
    return ab, ba


def build_H(c: CouplingMatrix) -> np.ndarray:
    validate_coupling(c)
    n = c.n
    a = np.asarray(c.a, dtype=complex)
    b = -a.conj()
    ab, ba = _pair_matrices(n)
    dim = 4**n
    h = np.zeros((dim, dim), dtype=complex)
    for i in range(n):
        for j in range(n):
            if a[i, j]:
                h += a[i, j] * ab[i, j]
            if b[i, j]:
                h += b[i, j] * ba[i, j]
    return h


def diagonalize_coupling(c: CouplingMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Unitary ``u`` with ``u h u^dag`` diagonal, where ``h`` is ``a`` (A) or ``i a`` (B).

    Eigenvalues come out in descending order (ties keep index order); each row
    of ``u`` is phased so that its first nonzero entry is real and positive.
    """
    validate_coupling(c)
    a = np.asarray(c.a, dtype=complex)
    h = a.real if c.variant == "A" else (1j * a).real
    h = (h + h.T) / 2
    w, v = np.linalg.eigh(h)
    order = sorted(range(len(w)), key=lambda k: (-w[k], k))
    w = w[order]
    u = v[:, order].T.astype(complex)
    for row in u:
        k = int(np.argmax(np.abs(row) > 1e-12))
        row *= abs(row[k]) / row[k]
    return u, w


@lru_cache(maxsize=None)
def _mode_matrices(n: int) -> tuple[np.ndarray, ...]:
    return tuple(to_matrix(psi(n, i)).to_numpy() for i in range(1, n + 1))


def phi_operators(u: np.ndarray, *, rebased: bool = True) -> list[np.ndarray]:
    """The 2N operators on V (x) V: delta1 images of the rotated modes, then delta2 images.

    With ``rebased`` (the default) delta1 is taken relative to the rotated
    modes, ``(i/sqrt2)(zeta_l (x) phi_l - phi_l (x) zeta_l)`` with
    ``zeta_l = phi_l phi_l^dag - phi_l^dag phi_l``.  Otherwise the delta1
    images of the original modes are combined linearly, which only works when
    ``u`` is a permutation up to phases.
    """
    u = np.asarray(u, dtype=complex)
    n = u.shape[0]
    if np.abs(u @ u.conj().T - np.eye(n)).max() > 1e-10:
        raise ValueError("mode rotation is not unitary")
    modes = _mode_matrices(n)
    par = parity_matrix(n).to_numpy()
    ident = np.eye(1 << n)
    phis = [sum(u[l, m] * modes[m] for m in range(n)) for l in range(n)]
    r = 1 / np.sqrt(2)
    out = []
    if rebased:
        for ph in phis:
            z = ph @ ph.conj().T - ph.conj().T @ ph
            out.append(1j * r * (np.kron(z @ par, ph) - np.kron(ph, z)))
    else:
        d1 = FermionHom.named("delta1")
        imgs = [tensor_to_matrix(d1(psi(n, m + 1))).to_numpy() for m in range(n)]
        out.extend(sum(u[l, m] * imgs[m] for m in range(n)) for l in range(n))
    out.extend(r * (np.kron(ident @ par, ph) + np.kron(ph, ident)) for ph in phis)
    return out


@dataclass
class SpectralSolution:
    n: int
    variant: str
    u: np.ndarray
    eigenvalues: np.ndarray
    energies: np.ndarray
    occupations: list
    vectors: np.ndarray | None
    residuals: np.ndarray | None
    gram_deviation: float
    normal_form_residual: float
    spectrum_mismatch: float
    trace: float
    car_residual: float
    car_residual_same_mode: float
    diagnostics: dict = field(default_factory=dict)

    def checks(self, tol: float = RESULT_TOL) -> dict[str, bool]:
        out = {"spectrum": self.spectrum_mismatch < tol, "trace": abs(self.trace) < tol}
        if self.variant == "A":
            out.update(
                eigen_residual=float(np.max(self.residuals)) < tol,
                gram=self.gram_deviation < tol,
                normal_form=self.normal_form_residual < tol,
            )
        return out

    def passed(self, tol: float = RESULT_TOL) -> bool:
        return all(self.checks(tol).values())

    def to_dict(self, tol: float = RESULT_TOL) -> dict:
        def cplx(m):
            return [[[float(z.real), float(z.imag)] for z in row] for row in m]

        pairs = []
        for k, m in enumerate(self.occupations):
            entry = {"M": list(m), "E": float(self.energies[k])}
            if self.residuals is not None:
                entry["residual"] = float(self.residuals[k])
            pairs.append(entry)
        return {
            "n": self.n,
            "variant": self.variant,
            "u": cplx(self.u),
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "eigenpairs": pairs,
            "gram_deviation": self.gram_deviation,
            "normal_form_residual": self.normal_form_residual,
            "spectrum_mismatch": self.spectrum_mismatch,
            "trace": self.trace,
            "car_residual": self.car_residual,
            "car_residual_same_mode": self.car_residual_same_mode,
            "checks": self.checks(tol),
            "passed": self.passed(tol),
        }


def _car_residuals(ops: list[np.ndarray], n: int) -> tuple[float, float]:
    """Largest canonical-anticommutator violation, split into generic and same-mode pairs."""
    eye = np.eye(ops[0].shape[0])
    generic = same = 0.0
    for I_, a in enumerate(ops):
        for J, b in enumerate(ops):
            bd = b.conj().T
            err = max(
                np.abs(a @ bd + bd @ a - (eye if I_ == J else 0)).max(),
                np.abs(a @ b + b @ a).max(),
            )
            if abs(I_ - J) == n:
                same = max(same, err)
            else:
                generic = max(generic, err)
    return float(generic), float(same)


def solve(c: CouplingMatrix, *, rebased: bool = True) -> SpectralSolution:
    """Eigenvalues and eigenvectors of H from the 2N-fermion normal form.

    Variant A builds every eigenvector ``prod (Phi_I^dag)^{M_I} |0>|0>`` and
    checks it.  For variant B only the predicted spectrum
    ``sum sigma_l (M_l - M_{l+N})`` is compared with dense diagonalization.
    """
    validate_coupling(c)
    n = c.n
    h = build_H(c)
    u, lam = diagonalize_coupling(c)
    occ = list(product((0, 1), repeat=2 * n))
    energies = np.array([sum(lam[l] * (m[l] - m[l + n]) for l in range(n)) for m in occ])
    dense = np.linalg.eigvalsh(h)
    mismatch = float(np.abs(np.sort(energies) - np.sort(dense)).max())
    ops = phi_operators(u, rebased=rebased)
    generic, same = _car_residuals(ops, n)
    common = dict(
        n=n,
        variant=c.variant,
        u=u,
        eigenvalues=lam,
        energies=energies,
        occupations=occ,
        spectrum_mismatch=mismatch,
        trace=float(energies.sum()),
        car_residual=generic,
        car_residual_same_mode=same,
    )
    if c.variant == "B":
        return SpectralSolution(
            vectors=None, residuals=None, gram_deviation=0.0, normal_form_residual=0.0, **common
        )
    normal = sum(lam[l] * (ops[l].conj().T @ ops[l] - ops[l + n].conj().T @ ops[l + n]) for l in range(n))
    dim = 4**n
    vac = np.zeros(dim, dtype=complex)
    vac[0] = 1
    daggers = [op.conj().T for op in ops]
    vecs = np.empty((len(occ), dim), dtype=complex)
    for k, m in enumerate(occ):
        v = vac
        for I_ in reversed(range(2 * n)):
            if m[I_]:
                v = daggers[I_] @ v
        vecs[k] = v
    res = np.linalg.norm(vecs @ h.T - energies[:, None] * vecs, axis=1)
    gram = vecs.conj() @ vecs.T
    completeness = vecs.T @ vecs.conj()
    return SpectralSolution(
        vectors=vecs,
        residuals=res,
        gram_deviation=float(np.abs(gram - np.eye(len(occ))).max()),
        normal_form_residual=float(np.abs(h - normal).max()),
        diagnostics={"completeness_deviation": float(np.abs(completeness - np.eye(dim)).max())},
        **common,
    )


def _parse_entry(text: str) -> complex:
    text = text.strip().strip('"')
    if "," in text:
        re_, im = text.split(",")
        return complex(float(re_), float(im))
    return complex(float(text), 0.0)


def load_coupling(text: str, fmt: str | None = None) -> CouplingMatrix:
    """Parse a coupling matrix from JSON or CSV.

    JSON: ``{"n": 2, "variant": "A", "entries": [[re, im], ...]}`` row-major
    (plain numbers are taken as real).  CSV: first row ``n,variant``, then
    ``n`` rows of ``n`` cells each holding ``"re,im"`` or a real number.
    """
    fmt = fmt or ("json" if text.lstrip().startswith("{") else "csv")
    if fmt == "json":
        data = json.loads(text)
        n = int(data["n"])
        variant = str(data.get("variant", "A"))
        flat = data["entries"]
        if len(flat) != n * n:
            raise ValueError(f"expected {n * n} entries, got {len(flat)}")
        vals = [complex(*e) if isinstance(e, list) else complex(e) for e in flat]
    elif fmt == "csv":
        rows = [r for r in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in r)]
        if not rows or len(rows[0]) < 2:
            raise ValueError("CSV header must be 'n,variant'")
        n, variant = int(rows[0][0]), rows[0][1].strip()
        body = rows[1:]
        if len(body) != n or any(len(r) != n for r in body):
            raise ValueError(f"CSV body must be {n} rows of {n} cells")
        vals = [_parse_entry(cell) for r in body for cell in r]
    else:
        raise ValueError(f"unknown coupling format {fmt!r}")
    if n < 1:
        raise ValueError("n must be positive")
    c = CouplingMatrix(np.array(vals, dtype=complex).reshape(n, n), variant)
    validate_coupling(c)
    return c
