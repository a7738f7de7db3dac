import csv
import io
import json

import numpy as np
import pytest

from schrodinger_mop.cli import main
from schrodinger_mop.elements import psi_oracle
from schrodinger_mop.group import GroupParams

CANON = ["--sigma", "0.7", "--delta", "0.1", "--rho", "0.3", "--theta", "0.5"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    n = max(int(r["n"]) for r in rows) + 1
    k = max(int(r["k"]) for r in rows) + 1
    out = np.zeros((n, k), dtype=complex)
    for r in rows:
        out[int(r["n"]), int(r["k"])] = complex(float(r["psi_re"]), float(r["psi_im"]))
    return out


def test_identity_table(capsys):
    code, out, _ = run(capsys, "table", "--sigma", "0", "--rho", "0", "--nmax", "3", "--kmax", "3", "--route", "oracle")
    assert code == 0
    assert out.splitlines()[0] == "n,k,psi_re,psi_im"
    np.testing.assert_array_equal(parse_csv(out), np.eye(4))


@pytest.mark.parametrize("route", ["recurrence", "convolution", "hermite2"])
def test_table_routes_match_oracle(capsys, route):
    code, out, _ = run(capsys, "table", *CANON, "--nmax", "12", "--kmax", "12", "--route", route)
    assert code == 0
    ref = psi_oracle(GroupParams(0.7, 0.1, 0.3, 0.5), 12, 12).entries
    assert np.max(np.abs(parse_csv(out) - ref)) <= 1e-8


def test_json_output_and_determinism(capsys, tmp_path):
    args = ["table", *CANON, "--nmax", "2", "--kmax", "3", "--format", "json"]
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    doc = json.loads(first)
    assert set(doc) == {"params", "route", "nmax", "kmax", "entries"}
    assert len(doc["entries"]) == 3 and len(doc["entries"][0]) == 4
    re, im = doc["entries"][0][0]
    assert complex(re, im) == pytest.approx(0.7149256579309221 + 0.015081267556804152j, abs=1e-14)
    out = tmp_path / "t.json"
    assert main([*args, "--out", str(out)]) == 0
    assert out.read_text() == first


def test_invalid_parameters_exit_2(capsys):
    code, out, err = run(capsys, "table", "--rho", "0", "--sigma", "0.5", "--nmax", "2", "--kmax", "2", "--route", "recurrence")
    assert code == 2 and out == "" and "rho = 0" in err
    code, _, _ = run(capsys, "table", "--sigma", "-1", "--rho", "0.2", "--nmax", "2", "--kmax", "2")
    assert code == 2


def test_bad_flags_exit_2(capsys):
    for argv in (["verify", "--suite", "nope"], ["table", "--nmax", "2"], ["bench", "--sizes", "a,b"], ["verify", "--tol", "-1"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_convergence_failure_exit_3(capsys):
    code, _, err = run(capsys, "table", "--sigma", "0.7", "--rho", "3", "--nmax", "12", "--kmax", "12", "--route", "oracle")
    assert code == 3 and "dim" in err


def test_verify_exit_codes(capsys):
    code, out, err = run(capsys, "verify", "--suite", "appendix")
    assert code == 0 and json.loads(out)["passed"] is True
    code, out, err = run(capsys, "verify", "--suite", "appendix", "--tol", "1e-20")
    assert code == 1 and "FAIL" in err


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "8")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert len(rows) == 1 and rows[0]["size"] == 8
    assert rows[0]["max_deviation"] <= 1e-8
