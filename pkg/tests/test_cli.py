import json

import pytest

from etahecke.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coeffs_csv(capsys):
    code, out, _ = run(capsys, "coeffs", "alpha", "--max", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "n,value"
    assert out.splitlines()[-1] == "4,5"


def test_coeffs_overpartition_and_E(capsys):
    _, out, _ = run(capsys, "coeffs", "overpartition", "--max", "3", "--format", "csv")
    assert out.splitlines()[-1] == "3,8"
    _, out, _ = run(capsys, "coeffs", "E", "--max", "2", "--format", "csv")
    assert out.splitlines()[1:] == ["0,1", "1,-1", "2,-1"]


def test_coeffs_spec_and_j(capsys):
    _, out, _ = run(capsys, "coeffs", "1:-1", "--max", "5", "--format", "plain")
    assert out.splitlines()[-1] == "5 7"
    _, out, _ = run(capsys, "coeffs", "j", "--max", "0", "--format", "plain")
    assert out.splitlines() == ["-1 1", "0 744"]


def test_bad_spec_exit_2(capsys):
    code, _, err = run(capsys, "coeffs", "1-2", "--max", "3")
    assert code == 2 and "unknown series" in err
    code, _, err = run(capsys, "coeffs", "1:x", "--max", "3")
    assert code == 2


def test_verify_json_round_trip(capsys):
    code, out, _ = run(capsys, "verify", "thm1.1", "--ell", "5", "--nmax", "100")
    assert code == 0
    data = json.loads(out)
    assert data["witnesses"]["c_ell"] == "26"
    assert json.dumps(data, indent=2) + "\n" == out


def test_verify_multiple_jobs_sorted(capsys):
    code, out, _ = run(capsys, "verify", "overpartition", "--ell", "7", "3", "5", "--nmax", "20")
    assert code == 0
    data = json.loads(out)
    assert [d["params"]["ell"] for d in data] == ["3", "5", "7"]


def test_verify_missing_flag(capsys):
    code, _, err = run(capsys, "verify", "thm1.1", "--ell", "5")
    assert code == 2 and "--nmax" in err


def test_verify_truncation_too_small(capsys):
    code, _, err = run(capsys, "verify", "thm1.1", "--ell", "5", "--nmax", "10", "--truncation", "5")
    assert code == 2 and "insufficient truncation" in err


def test_verify_hypothesis_violation(capsys):
    code, _, _ = run(capsys, "verify", "thm1.3", "--i", "2", "--ell", "5", "--cases", "2")
    assert code == 2


def test_verify_plain_and_csv(capsys):
    code, out, _ = run(capsys, "verify", "thm1.4", "--r", "-2", "--s", "1", "--p", "2", "--ell", "3", "--nmax", "20", "--format", "plain")
    assert code == 0 and out.startswith("PASS thm1.4")
    code, out, _ = run(capsys, "verify", "mu-mod32", "--ell-max", "31", "--format", "csv")
    assert out.splitlines()[0] == "theorem,params,checked,failures,passed"


def test_eigenvalue(capsys):
    code, out, _ = run(capsys, "eigenvalue", "--r", "-2", "--s", "3", "--p", "2", "--ell", "13")
    data = json.loads(out)
    assert code == 0
    assert data["direct"] == data["via_mu"] == "9294"
    assert data["difference"] == "0"


def test_faber(capsys):
    _, out, _ = run(capsys, "faber", "A", "--max", "2")
    assert json.loads(out)["polynomials"][-1] == "x^2 - 1489x + 160511"
    _, out, _ = run(capsys, "faber", "SB", "--r", "-2", "--s", "3", "--p", "2", "--max", "1", "--method", "geometric")
    assert json.loads(out)["polynomials"] == ["1", "x + 27"]
    code, _, _ = run(capsys, "faber", "SB", "--max", "1")
    assert code == 2


def test_decompose(capsys):
    _, out, _ = run(capsys, "decompose", "hecke", "--r", "-2", "--s", "3", "--p", "2", "--ell", "7")
    data = json.loads(out)
    assert data["constant"] == "104"
    assert data["coefficients"] == {"1": "51", "2": "1"}
    _, out, _ = run(capsys, "decompose", "hecke", "--r", "-2", "--s", "3", "--p", "2", "--ell", "7", "--side", "plain")
    assert json.loads(out)["coefficients"] == {"1": "208896", "2": "16777216"}
    code, out, _ = run(capsys, "decompose", "atkin", "--ell", "5", "--format", "csv")
    assert code == 0 and out.splitlines()[1:] == ["0,-750", "1,1"]


def test_identities_plain(capsys):
    code, out, _ = run(capsys, "identities", "--format", "plain")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 10
    assert all(line.startswith("PASS") for line in lines)


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "faber", "J", "--max", "1", "-o", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["polynomials"] == ["1", "x - 744"]


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
