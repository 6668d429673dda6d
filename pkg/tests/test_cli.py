import csv
import io
import json
import subprocess
import sys

import pytest

from qeuler.cli import main, parse_number, parse_range
from qeuler.exactq import lext_from_json
from qeuler.sequences import family_recurrence


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_helpers():
    from fractions import Fraction

    assert parse_number("1/2") == Fraction(1, 2)
    assert parse_number("0.25") == Fraction(1, 4)
    assert parse_number("0.5+0.2i") == 0.5 + 0.2j
    assert parse_number("-1") == -1
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("-1..1") == [-1, 0, 1]
    assert parse_range("1,3,5") == [1, 3, 5]


def test_table_modified_euler(capsys):
    code, out, _ = run(capsys, "table", "--family", "modified-euler", "--n-max", "2", "--eval-q", "1/2")
    assert code == 0
    assert "(-1 + q)/(2*(1 + q^2))" in out
    assert "-0.2" in out


def test_table_classical(capsys):
    code, out, _ = run(capsys, "table", "--family", "classical-euler", "--n-max", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "value"]
    assert [r[1] for r in rows[1:]] == ["1", "-1/2", "0", "1/4"]


def test_table_json_round_trip(capsys):
    code, out, _ = run(capsys, "table", "--family", "modified-bernoulli", "--n-max", "3", "--format", "json")
    data = json.loads(out)
    row0 = data["rows"][0]["value"]
    assert row0["logpart"] == {"num": ["1"], "den": ["1"]} and row0["num"] == []
    for row in data["rows"]:
        assert lext_from_json(row["value"]) == family_recurrence("modified_bernoulli", row["n"])


def test_table_complex_eval(capsys):
    code, out, _ = run(capsys, "table", "--family", "kim-euler", "--n-max", "2", "--eval-q", "0.5+0.2i", "--format", "json")
    assert code == 0
    assert set(json.loads(out)["rows"][2]["numeric"]) == {"re", "im"}


def test_verify_pass(capsys):
    code, out, err = run(capsys, "verify", "--identity", "theorem6", "--n-max", "30", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "pass" and data["instances"] == 31
    assert "verifying" in err


def test_verify_theorem11(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "theorem11", "--n-max", "8", "--d", "3,5")
    assert code == 0 and "pass" in out


def test_verify_erratum(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "lemma4-verbatim", "--n-max", "3", "--m-max", "3")
    assert code == 0
    assert "erratum confirmed" in out


@pytest.mark.parametrize("ident", ["theorem7", "lemma4", "prop2", "eq14", "char-decomp"])
def test_verify_others(capsys, ident):
    code, out, _ = run(capsys, "verify", "--identity", ident, "--n-max", "3", "--k-max", "3", "--m-max", "3", "--d", "1,3")
    assert code == 0, out


def test_verify_functional_eqs(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "functional-eqs", "--j=-1..4", "--n-max", "5", "--format", "json")
    assert code == 0
    assert json.loads(out)["failures"] == 0


def test_verify_failure_exit_code(capsys, monkeypatch):
    from qeuler import cli, identities

    def broken(n_max, jobs=1):
        r = identities.IdentityReport("theorem6", {"n_max": n_max})
        r.add({"n": 0}, identities.QRat.gen())
        return r

    monkeypatch.setattr(cli.identities, "verify_theorem6", broken)
    code, _, err = run(capsys, "verify", "--identity", "theorem6")
    assert code == 1
    assert "counterexample" in err


def test_padic(capsys):
    args = ["padic", "--p", "5", "--q", "6", "--family", "modified-euler", "--n", "2", "--levels", "1..4", "--precision", "30"]
    code, out, err = run(capsys, *args, "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["N", "p^N", "valuation", "wall-time"]
    vals = [int(r[2]) for r in rows[1:]]
    assert vals == sorted(vals) and len(vals) == 4
    assert "level 4" in err


def test_padic_byte_identical(capsys):
    args = ["padic", "--p", "3", "--q", "4", "--family", "carlitz-bernoulli", "--n", "3", "--levels", "1..4", "--no-timing"]
    outs = {run(capsys, *args, "--format", fmt)[1] for fmt in ("csv",) for _ in range(2)}
    assert len(outs) == 1
    a = run(capsys, *args, "--format", "json")[1]
    b = run(capsys, *args, "--format", "json", "--jobs", "1")[1]
    assert a == b


def test_padic_exhausted_and_monomial(capsys):
    code, out, _ = run(capsys, "padic", "--p", "3", "--q", "4", "--monomial", "0", "--kind", "fermionic", "--levels", "1..3", "--precision", "20")
    assert code == 0
    assert ">=20" in out


def test_padic_usage_errors(capsys):
    assert run(capsys, "padic", "--p", "5", "--q", "6")[0] == 2
    assert run(capsys, "padic", "--p", "5", "--q", "7", "--family", "kim-euler")[0] == 2
    assert run(capsys, "padic", "--p", "7", "--q", "8", "--family", "kim-euler", "--levels", "1..9")[0] == 2
    assert run(capsys, "padic", "--p", "5", "--q", "6", "--family", "carlitz-xi")[0] == 2


def test_zeta(capsys):
    code, out, _ = run(capsys, "zeta", "--q", "0.5", "--x", "0", "--s=-1")
    assert code == 0
    assert out.splitlines()[0] == "-0.5"
    assert "principal" in out
    code, out, _ = run(capsys, "zeta", "--q", "0.5+0.2i", "--x", "1/2", "--s", "2", "--format", "json")
    data = json.loads(out)
    assert set(data["value"]) == {"re", "im"} and "branch" in data


def test_zeta_errors(capsys):
    code, _, err = run(capsys, "zeta", "--q", "0.5", "--x", "0", "--s", "0.5")
    assert code == 2 and "series undefined at x=0" in err
    assert run(capsys, "zeta", "--q", "2", "--x", "1", "--s", "1")[0] == 2
    assert run(capsys, "zeta", "--q", "0.9", "--x", "0.001", "--s", "0.5", "--max-terms", "10")[0] == 1


def test_lseries(capsys):
    code, out, _ = run(capsys, "lseries", "--modulus", "3", "--char-index", "1", "--q", "0.5", "--s", "0")
    assert code == 0
    assert out.splitlines()[0] == "-1.5"
    assert run(capsys, "lseries", "--modulus", "4", "--char-index", "1", "--q", "0.5", "--s", "0")[0] == 2
    assert run(capsys, "lseries", "--modulus", "3", "--char-index", "7", "--q", "0.5", "--s", "0")[0] == 2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "t.json"
    code, out, _ = run(capsys, "table", "--family", "carlitz-bernoulli", "--n-max", "2", "--format", "json", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["rows"][1]["text"] == "-1/(1 + q)"


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["table", "--family", "nope", "--n-max", "2"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["verify", "--identity", "theorem99"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["zeta", "--q", "abc", "--x", "1", "--s", "1"])
    assert e.value.code == 2
    assert run(capsys, "verify", "--identity", "theorem11", "--d", "2")[0] == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "qeuler", "table", "--family", "classical-euler", "--n-max", "3", "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert [r["text"] for r in json.loads(res.stdout)["rows"]] == ["1", "-1/2", "0", "1/4"]
