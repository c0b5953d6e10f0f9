"""Command-line front end: ``qferm verify | dump | spectra | scan-ansatz``.

Exit codes: 0 success, 1 a check or residual failed, 2 bad configuration or input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

from .report import DEFAULT_Q_SAMPLES, Report, set_numeric_tolerance

SUITES = ("clifford", "qgroup", "homs", "coproduct", "all")
DUMP_OBJECTS = ("e", "f", "k", "kinv", "delta1", "delta2", "coproduct")
MAX_N = 8


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    n: int = 2
    backend: str = "exact"
    q_samples: tuple = DEFAULT_Q_SAMPLES
    q_given: bool = False
    tol: float = 1e-10
    seed: int = 0
    jobs: int = 1
    fmt: str = "text"
    out: str | None = None
    strict: bool = False


def _parse_q(text: str) -> tuple:
    try:
        vals = tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad --q value {text!r}: {exc}") from None
    if not vals:
        raise ConfigError("--q needs at least one value")
    for v in vals:
        if v in (0, 1, -1):
            raise ConfigError(f"q must avoid 0 and +-1, got {v}")
    return vals


def _config(args) -> RunConfig:
    if not 1 <= args.n <= MAX_N:
        raise ConfigError(f"--n must be between 1 and {MAX_N}")
    tol = args.tol if args.tol is not None else (1e-9 if args.verb == "spectra" else 1e-10)
    if not tol > 0:
        raise ConfigError("--tol must be positive")
    jobs = args.jobs
    if jobs is None:
        env = os.environ.get("QFERM_JOBS", "1")
        try:
            jobs = int(env)
        except ValueError:
            raise ConfigError(f"QFERM_JOBS must be an integer, got {env!r}") from None
    if jobs < 1:
        raise ConfigError("--jobs must be at least 1")
    return RunConfig(
        n=args.n,
        backend=args.backend,
        q_samples=_parse_q(args.q) if args.q else DEFAULT_Q_SAMPLES,
        q_given=bool(args.q),
        tol=tol,
        seed=args.seed,
        jobs=jobs,
        fmt=args.format,
        out=args.out,
        strict=getattr(args, "strict", False),
    )


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _suite_tasks(suite: str, cfg: RunConfig) -> list:
    from .clifford import verify_q_clifford
    from .fock import check_invariance, verify_representation
    from .homs import homs_tasks, verify_reconstruction
    from .qgroup import build_generators, verify_coproduct, verify_qgroup

    n, kw = cfg.n, dict(backend=cfg.backend, q_samples=cfg.q_samples)
    parts = {
        "clifford": [partial(verify_q_clifford, n, **kw), partial(verify_representation, n, seed=cfg.seed)],
        "qgroup": [partial(verify_qgroup, n, **kw), partial(check_invariance, n, cfg.q_samples)],
        "homs": homs_tasks(n, seed=cfg.seed, **kw),
    }
    if n >= 2:
        parts["coproduct"] = [partial(verify_coproduct, build_generators(n), **kw), partial(verify_reconstruction, n, **kw)]
    if suite != "all":
        return parts[suite]
    # the homs tasks already include the reconstruction
    return parts["clifford"] + parts["qgroup"] + parts["homs"] + parts["coproduct"][:1]


def _init_worker(tol: float) -> None:
    set_numeric_tolerance(tol)


def _call(task):
    return task()


def run_suite(suite: str, cfg: RunConfig) -> Report:
    """Run a suite, in parallel across independent parts when ``cfg.jobs > 1``."""
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}")
    if suite in ("qgroup", "coproduct", "all") and cfg.n < 2:
        raise ConfigError(f"suite {suite!r} needs --n >= 2")
    set_numeric_tolerance(cfg.tol)
    tasks = _suite_tasks(suite, cfg)
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs, initializer=_init_worker, initargs=(cfg.tol,)) as pool:
            parts = list(pool.map(_call, tasks))
    else:
        parts = [t() for t in tasks]
    rep = Report(suite, cfg.n, cfg.backend)
    for p in parts:
        rep.extend(p)
    return rep


def cmd_verify(args) -> int:
    cfg = _config(args)
    rep = run_suite(args.suite, cfg)
    _emit(rep.to_json(indent=2) if cfg.fmt == "json" else rep.to_text(), cfg)
    if not rep.passed:
        return 1
    if cfg.strict and any(c.expect == "fails" for c in rep.checks):
        return 1
    return 0


def _dump_element(obj: str, i: int, which: str, cfg: RunConfig):
    from .clifford import psi, psid
    from .homs import FermionHom
    from .qgroup import build_generators, coproduct_delta

    n = cfg.n
    if obj in ("delta1", "delta2"):
        if not 1 <= i <= n:
            raise ConfigError(f"mode index {i} outside 1..{n}")
        src = psi(n, i) if which == "psi" else psid(n, i)
        return FermionHom.named(obj)(src), f"{obj}({which}_{i})"
    if n < 2:
        raise ConfigError("quantum group generators need --n >= 2")
    if not 1 <= i < n:
        raise ConfigError(f"generator index {i} outside 1..{n - 1}")
    g = build_generators(n)
    if obj == "coproduct":
        if which not in ("e", "f", "k", "kinv"):
            raise ConfigError("coproduct needs a generator: e, f, k or kinv")
        return coproduct_delta(g, which, i), f"coproduct({which}_{i})"
    return g.get(obj, i), f"{obj}_{i}"


def cmd_dump(args) -> int:
    from .fock import to_matrix
    from .tensor import GradedTensor, tensor_to_matrix

    cfg = _config(args)
    if args.object == "coproduct":
        if args.arg1 is None or args.arg2 is None:
            raise ConfigError("usage: dump coproduct GENERATOR INDEX")
        which, idx = args.arg1, args.arg2
    else:
        if args.arg1 is None or args.arg2 is not None:
            raise ConfigError(f"usage: dump {args.object} INDEX")
        which, idx = args.of, args.arg1
    try:
        i = int(idx)
    except ValueError:
        raise ConfigError(f"index must be an integer, got {idx!r}") from None
    x, label = _dump_element(args.object, i, which, cfg)
    mat = tensor_to_matrix(x) if isinstance(x, GradedTensor) else to_matrix(x)
    if cfg.q_given:
        q = cfg.q_samples[0]
        dense = mat.to_numpy(float(q))
        rows = [[[float(z.real), float(z.imag)] for z in row] for row in dense]
        text_rows = ["  ".join(_fmt_complex(z) for z in row) for row in dense]
    else:
        q = None
        rows = mat.to_json()
        text_rows = ["  ".join(cell for cell in row) for row in rows]
    if cfg.fmt == "json":
        payload = {
            "object": args.object,
            "label": label,
            "n": cfg.n,
            "index": i,
            "element": str(x),
            "dim": mat.dim,
            "q": None if q is None else str(q),
            "matrix": rows,
        }
        _emit(json.dumps(payload, indent=2), cfg)
    else:
        head = f"{label} = {x}\nmatrix ({mat.dim}x{mat.dim}" + (f", q={q})" if q is not None else ", exact)")
        _emit("\n".join([head] + text_rows), cfg)
    return 0


def _fmt_complex(z: complex) -> str:
    if abs(z.imag) < 1e-15:
        return f"{z.real:.6g}"
    return f"{z.real:.6g}{z.imag:+.6g}i"


def cmd_spectra(args) -> int:
    from .spectra import load_coupling, solve

    cfg = _config(args)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        fmt = args.input_format
        if fmt is None and args.input.endswith((".json", ".csv")):
            fmt = args.input.rsplit(".", 1)[1]
        coupling = load_coupling(text, fmt)
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read coupling: {exc}") from None
    sol = solve(coupling, rebased=not args.literal)
    data = sol.to_dict(cfg.tol)
    if cfg.fmt == "json":
        _emit(json.dumps(data, indent=2), cfg)
    else:
        lines = [f"variant {sol.variant}, n={sol.n}, mode eigenvalues {[round(float(x), 12) for x in sol.eigenvalues]}"]
        lines += [f"  M={''.join(map(str, p['M']))}  E={p['E']:+.12g}" for p in data["eigenpairs"]]
        lines += [f"  {k}: {'pass' if v else 'fail'}" for k, v in data["checks"].items()]
        _emit("\n".join(lines), cfg)
    return 0 if data["passed"] else 1


def cmd_scan(args) -> int:
    from .homs import scan_ansatz

    cfg = _config(args)
    rows = scan_ansatz(n=cfg.n)
    if cfg.fmt == "json":
        _emit(json.dumps(rows, indent=2), cfg)
    else:
        lines = [
            f"a={r['a']} b={r['b']} c={r['c']} d={r['d']}  m-condition={r['m_condition']} "
            f"pseudo={r['pseudo_coassociative']} coassoc={r['coassociative']} {r['known']}".rstrip()
            for r in rows
        ]
        _emit("\n".join(lines), cfg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2, help="number of fermion modes")
    common.add_argument("--backend", choices=("exact", "numeric"), default="exact")
    common.add_argument("--q", help="comma-separated rational sample values of q (e.g. 3/2,5/7)")
    common.add_argument("--tol", type=float, default=None, help="numeric tolerance (1e-10 for checks, 1e-9 for spectra)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: $QFERM_JOBS or 1)")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="qferm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--strict", action="store_true", help="also fail on identities recorded as known to be false")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dump", parents=[common], help="print an element and its Fock matrix")
    d.add_argument("object", choices=DUMP_OBJECTS)
    d.add_argument("arg1", nargs="?", help="index, or generator name for coproduct")
    d.add_argument("arg2", nargs="?", help="index for coproduct")
    d.add_argument("--of", choices=("psi", "psid"), default="psi", help="argument of delta1/delta2")
    d.set_defaults(func=cmd_dump)

    s = sub.add_parser("spectra", parents=[common], help="solve a quadratic two-copy problem")
    s.add_argument("input", help="coupling file (JSON or CSV), or - for stdin")
    s.add_argument("--input-format", choices=("json", "csv"))
    s.add_argument("--literal", action="store_true", help="apply delta1 linearly to the rotated modes")
    s.set_defaults(func=cmd_spectra)

    a = sub.add_parser("scan-ansatz", parents=[common], help="scan parameter tuples of the linear ansatz")
    a.set_defaults(func=cmd_scan, n=1)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"qferm: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
