"""Relation-check records and suite reports.

Each check compares two sides of an identity.  ``expect`` says whether the
identity is supposed to hold: a handful of identities are recorded with
``expect="fails"`` because the engine shows they are false as usually
stated; the check then passes only if they really do fail, and the residual
is kept in the report.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np

DEFAULT_Q_SAMPLES = (Fraction(3, 2), Fraction(5, 7))

# Numeric-backend tolerance used when a check is not given one explicitly.
_numeric_tol = [1e-10]


def set_numeric_tolerance(tol: float) -> None:
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    _numeric_tol[0] = float(tol)

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["suite", "n", "backend", "passed", "summary", "checks"],
    "properties": {
        "suite": {"type": "string"},
        "n": {"type": "integer", "minimum": 1},
        "backend": {"enum": ["exact", "numeric"]},
        "passed": {"type": "boolean"},
        "summary": {
            "type": "object",
            "required": ["total", "passed", "failed"],
            "properties": {
                "total": {"type": "integer", "minimum": 0},
                "passed": {"type": "integer", "minimum": 0},
                "failed": {"type": "integer", "minimum": 0},
            },
        },
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["relation", "params", "status", "expect", "residual_terms", "residual_hash"],
                "properties": {
                    "relation": {"type": "string"},
                    "params": {"type": "object"},
                    "status": {"enum": ["pass", "fail"]},
                    "expect": {"enum": ["holds", "fails"]},
                    "residual_terms": {"type": "integer", "minimum": 0},
                    "residual_hash": {"type": "string"},
                    "note": {"type": "string"},
                    "counterexample": {"type": "string"},
                },
            },
        },
    },
}


@dataclass
class Check:
    relation: str
    params: dict
    status: str
    expect: str = "holds"
    residual_terms: int = 0
    residual_hash: str = ""
    note: str = ""
    counterexample: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        d = asdict(self)
        if not d["note"]:
            del d["note"]
        if not d["counterexample"]:
            del d["counterexample"]
        return d


@dataclass
class Report:
    suite: str
    n: int
    backend: str = "exact"
    checks: list[Check] = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def by_relation(self, relation: str) -> list[Check]:
        return [c for c in self.checks if c.relation == relation]

    def to_dict(self) -> dict:
        failed = sum(not c.ok for c in self.checks)
        return {
            "suite": self.suite,
            "n": self.n,
            "backend": self.backend,
            "passed": failed == 0,
            "summary": {"total": len(self.checks), "passed": len(self.checks) - failed, "failed": failed},
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def to_text(self) -> str:
        lines = [f"suite {self.suite} (n={self.n}, backend={self.backend})"]
        for c in self.checks:
            params = ",".join(f"{k}={v}" for k, v in c.params.items())
            tail = f"  [expected to fail; residual {c.residual_terms} terms]" if c.expect == "fails" else ""
            if not c.ok and c.counterexample:
                tail += f"  e.g. {c.counterexample}"
            lines.append(f"  {c.status.upper():4} {c.relation}({params}){tail}")
        d = self.to_dict()["summary"]
        lines.append(f"{d['passed']}/{d['total']} checks passed")
        return "\n".join(lines)


def _digest(x) -> str:
    return hashlib.sha256(json.dumps(x.to_json()).encode()).hexdigest()[:16]


def _first_term(x) -> str:
    data = x.to_json()
    if not data:
        return ""
    mono, coeff = data[0]
    return f"({coeff}) {mono}"


def matrix_of(x, q) -> np.ndarray:
    from .fock import to_matrix
    from .tensor import GradedTensor, tensor_to_matrix

    if isinstance(x, GradedTensor):
        return tensor_to_matrix(x).to_numpy(q)
    return to_matrix(x).to_numpy(q)


def compare(
    relation: str,
    lhs,
    rhs,
    *,
    params: dict | None = None,
    expect: str = "holds",
    backend: str = "exact",
    q_samples: Sequence = DEFAULT_Q_SAMPLES,
    tol: float | None = None,
    note: str = "",
) -> Check:
    """Check ``lhs == rhs`` exactly, or via matrix images at sample values of q."""
    residual = lhs - rhs
    tol = _numeric_tol[0] if tol is None else tol
    if backend == "exact":
        holds = residual.is_zero()
    elif backend == "numeric":
        holds = all(np.abs(matrix_of(residual, float(q))).max(initial=0.0) < tol for q in q_samples)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    ok = holds if expect == "holds" else not holds
    return Check(
        relation=relation,
        params=dict(params or {}),
        status="pass" if ok else "fail",
        expect=expect,
        residual_terms=len(residual),
        residual_hash=_digest(residual),
        note=note,
        counterexample="" if ok else _first_term(residual),
    )


def compare_all(
    relation: str,
    pairs: Iterable[tuple],
    *,
    params: dict | None = None,
    backend: str = "exact",
    q_samples: Sequence = DEFAULT_Q_SAMPLES,
    tol: float | None = None,
    note: str = "",
) -> Check:
    """One check covering many ``(lhs, rhs, label)`` instances; stops at the first failure."""
    count = 0
    digest = hashlib.sha256()
    for lhs, rhs, label in pairs:
        count += 1
        c = compare(relation, lhs, rhs, backend=backend, q_samples=q_samples, tol=tol)
        digest.update(c.residual_hash.encode())
        if not c.ok:
            c.params = {**(params or {}), "instances": count, "at": label}
            c.note = note
            return c
    return Check(
        relation=relation,
        params={**(params or {}), "instances": count},
        status="pass",
        residual_hash=digest.hexdigest()[:16],
        note=note,
    )


def flag(relation: str, ok: bool, *, params: dict | None = None, note: str = "") -> Check:
    """A check whose outcome was decided by other means (ranks, counts, inequalities)."""
    return Check(relation=relation, params=dict(params or {}), status="pass" if ok else "fail", note=note)


def merge(suite: str, n: int, reports: Iterable[Report], backend: str = "exact") -> Report:
    out = Report(suite, n, backend)
    for r in reports:
        out.extend(r)
    return out
