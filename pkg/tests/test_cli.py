import json
import subprocess
import sys

import jsonschema
import pytest

from qferm.cli import main
from qferm.report import REPORT_SCHEMA


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("suite", ["clifford", "qgroup", "coproduct"])
def test_verify_suites_json(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite, "--n", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, REPORT_SCHEMA)
    assert data["passed"] and data["summary"]["failed"] == 0


def test_verify_homs_lists_key_relations(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "homs", "--n", "2", "--format", "json", "--jobs", "2")
    assert code == 0
    rels = {c["relation"] for c in json.loads(out)["checks"]}
    assert {"pseudo.generator", "big.car", "omega_image.product", "coproduct.via_Z"} <= rels


def test_strict_flag_fails_on_known_false_identities(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "coproduct", "--n", "2", "--strict")
    assert code == 1


def test_numeric_backend_and_q(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "qgroup", "--n", "2", "--backend", "numeric", "--q", "3/2,5/7", "--tol", "1e-9")
    assert code == 0 and "checks passed" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--suite", "qgroup", "--n", "1"],
        ["verify", "--n", "0"],
        ["verify", "--suite", "clifford", "--q", "1"],
        ["verify", "--suite", "clifford", "--q", "x"],
        ["verify", "--suite", "clifford", "--tol", "-1"],
        ["dump", "e", "5", "--n", "2"],
        ["dump", "e", "--n", "2"],
        ["dump", "coproduct", "h", "1", "--n", "2"],
        ["dump", "delta1", "3", "--n", "2"],
    ],
)
def test_config_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_bad_jobs_env(capsys, monkeypatch):
    monkeypatch.setenv("QFERM_JOBS", "many")
    assert run(capsys, "verify", "--suite", "clifford", "--n", "1")[0] == 2


def test_dump_e(capsys):
    code, out, _ = run(capsys, "dump", "e", "1", "--n", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["dim"] == 4
    nonzero = [(r, c, v) for r, row in enumerate(data["matrix"]) for c, v in enumerate(row) if v != "0"]
    # psi_1 psi_2^dag sends |1,0> to -|0,1>
    assert nonzero == [(2, 1, "-1")]


def test_dump_k_at_q(capsys):
    code, out, _ = run(capsys, "dump", "k", "1", "--n", "2", "--q", "3/2", "--format", "json")
    m = json.loads(out)["matrix"]
    diag = {round(m[k][k][0], 12) for k in range(4)}
    assert code == 0 and diag <= {1.0, round(2 / 3, 12), 1.5}


def test_dump_coproduct_and_delta(capsys):
    code, out, _ = run(capsys, "dump", "coproduct", "e", "1", "--n", "2")
    assert code == 0 and "16x16" in out and "|" in out
    code, out, _ = run(capsys, "dump", "delta2", "1", "--n", "1", "--of", "psid")
    assert code == 0 and "delta2(psid_1)" in out


def test_spectra_files(capsys, tmp_path):
    good = tmp_path / "a.json"
    good.write_text(json.dumps({"n": 1, "variant": "A", "entries": [1]}))
    code, out, _ = run(capsys, "spectra", str(good), "--format", "json")
    assert code == 0
    assert sorted(p["E"] for p in json.loads(out)["eigenpairs"]) == [-1, 0, 0, 1]
    bad = tmp_path / "b.csv"
    bad.write_text("2,A\n1,2\n")
    assert run(capsys, "spectra", str(bad))[0] == 2
    asym = tmp_path / "c.csv"
    asym.write_text("2,A\n1,2\n3,4\n")
    assert run(capsys, "spectra", str(asym))[0] == 2
    assert run(capsys, "spectra", str(tmp_path / "missing.json"))[0] == 2


def test_spectra_literal_delta_fails(capsys, tmp_path):
    f = tmp_path / "x.csv"
    f.write_text("2,A\n0,1\n1,0\n")
    assert run(capsys, "spectra", str(f))[0] == 0
    assert run(capsys, "spectra", str(f), "--literal")[0] == 1


def test_scan_ansatz(capsys):
    code, out, _ = run(capsys, "scan-ansatz", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and {r["known"] for r in rows} >= {"delta1", "delta2"}


def test_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    assert run(capsys, "verify", "--suite", "clifford", "--n", "1", "--format", "json", "--out", str(target))[0] == 0
    jsonschema.validate(json.loads(target.read_text()), REPORT_SCHEMA)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qferm.cli", "verify", "--suite", "qgroup", "--n", "2"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
