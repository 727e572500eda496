import json

import pytest

from hexdimer import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_brute_and_dft_tables_identical(capsys):
    c1, brute, _ = run(capsys, "winding", "--m", "1", "--n", "3", "--method", "brute")
    c2, dft, _ = run(capsys, "winding", "--m", "1", "--n", "3", "--method", "dft")
    assert c1 == c2 == 0
    assert brute == dft
    assert brute.splitlines()[0] == "k,l,count"


def test_mgf_at_origin(capsys):
    code, out, _ = run(capsys, "mgf", "--m", "2", "--n", "6", "--alpha", "0", "--beta", "0")
    assert code == 0
    d = json.loads(out)
    assert d["mgf"] == 1.0
    assert d["precision"] == "hardware"


def test_verify_theta(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "theta")
    d = json.loads(out)
    assert code == 0 and d["pass"] is True
    assert all(c["residual"] < 1e-10 and c["pass"] for c in d["checks"])


def test_output_is_deterministic(capsys):
    args = ("partition", "--m", "3", "--n", "6", "--alpha", "0.2", "--beta", "-0.1")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_output_file(capsys, tmp_path):
    path = tmp_path / "t.json"
    code, out, _ = run(capsys, "winding", "--m", "2", "--n", "6", "--format", "json", "-o", str(path))
    assert code == 0 and out == ""
    # small counts stay JSON numbers; only counts beyond 2^53 become strings
    assert json.loads(path.read_text())["total"] == 7248


def test_partition_reports_exact_count(capsys):
    code, out, _ = run(capsys, "partition", "--m", "3", "--n", "6")
    d = json.loads(out)
    assert d["count"] == "281268"


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--m", "2", "--n", "3")
    d = json.loads(out)
    assert d["count"] == 116
    assert d["winding_formula_agreement"] == {"checked": 116, "disagreements": 0}


def test_lattice_info(capsys):
    code, out, _ = run(capsys, "lattice-info", "--m", "2", "--n", "6")
    d = json.loads(out)
    assert d["vertices"] == 48 and d["edges"] == 72
    assert d["edges_by_type"] == {"I": 24, "II": 24, "III": 24}
    code, out, _ = run(capsys, "lattice-info", "--m", "1", "--n", "3", "--edges")
    assert code == 0 and len(out.splitlines()) > 18


def test_theta_command(capsys):
    code, out, _ = run(capsys, "theta", "--index", "3", "--tau-im", "1")
    d = json.loads(out)
    assert d["value_re"] == pytest.approx(1.0864348112133080, rel=1e-14)
    code, out2, _ = run(capsys, "theta", "--index", "3", "--tau-im", "1", "--side", "product")
    assert json.loads(out2)["value_re"] == pytest.approx(d["value_re"], rel=1e-14)


def test_free_energy_command(capsys):
    code, out, _ = run(capsys, "free-energy", "--method", "half_range")
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(-0.6461318944, abs=1e-9)


def test_converge_writes_files(capsys, tmp_path):
    code, out, _ = run(capsys, "converge", "--sizes", "2x6", "--out-dir", str(tmp_path))
    assert code == 0
    assert (tmp_path / "summary.json").exists()
    assert (tmp_path / "winding_m2_n6.csv").exists()
    assert json.loads(out)["entries"][0]["m"] == 2


def test_env_precision(capsys, monkeypatch):
    monkeypatch.setenv("HEXDIMER_DPS", "30")
    code, out, _ = run(capsys, "mgf", "--m", "1", "--n", "3", "--alpha", "0.2", "--beta", "0.2")
    d = json.loads(out)
    assert code == 0 and d["precision"] == "mpmath dps=30"
    assert d["mgf"] == pytest.approx(1.0374017944669531, rel=1e-14)


def test_bad_env_precision(capsys, monkeypatch):
    monkeypatch.setenv("HEXDIMER_DPS", "abc")
    assert run(capsys, "mgf", "--m", "1", "--n", "3")[0] == cli.EXIT_VALIDATION


@pytest.mark.parametrize("argv", [
    ("mgf", "--m", "2"),
    ("mgf", "--m", "x", "--n", "3"),
    ("winding", "--m", "2", "--n", "4"),
    ("partition", "--m", "0", "--n", "3"),
    ("theta", "--index", "3", "--q-re", "1.2"),
    ("converge", "--sizes", "2y6"),
    ("mgf", "--m", "1", "--n", "3", "--dps", "10"),
    ("verify", "--suite", "nope"),
])
def test_validation_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == cli.EXIT_VALIDATION
    assert err


def test_precision_failure(capsys):
    code, _, err = run(capsys, "winding", "--m", "4", "--n", "12", "--dps", "15")
    assert code == cli.EXIT_PRECISION
    assert "precision" in err


def test_unknown_command(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == cli.EXIT_USAGE
    assert "invalid choice" in err


def test_exit_codes_are_distinct():
    assert len({cli.EXIT_OK, cli.EXIT_VALIDATION, cli.EXIT_PRECISION, cli.EXIT_USAGE}) == 4
