import csv
import io
import json
import math
import subprocess
import sys

import pytest

from hbl.cli import main, parse_ns


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def monomial_file(tmp_path):
    path = tmp_path / "z4.json"
    path.write_text(json.dumps({"zeros": [[0.0, 0.0]] * 4}))
    return str(path)


def test_parse_ns():
    assert parse_ns("2..16") == [2, 4, 8, 16]
    assert parse_ns("3..20") == [4, 8, 16]
    assert parse_ns("5, 7,9") == [5, 7, 9]


def test_norm_csv(monomial_file, capsys):
    code, out, _ = run(["norm", "--space", "besov", "--p", "2", "--in", monomial_file], capsys)
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert float(row["value"]) == pytest.approx(2.0, rel=1e-10)
    assert row["kind"] == "besov"


def test_norm_json(monomial_file, capsys):
    code, out, _ = run(["norm", "--space", "a1", "--p", "2", "--alpha", "0", "--in", monomial_file,
                        "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(2.0, rel=1e-10)


def test_norm_bmoa_note(monomial_file, capsys):
    _, out, _ = run(["norm", "--space", "bmoa", "--in", monomial_file, "--format", "json"], capsys)
    assert "UPPER BOUND" in json.loads(out)["note"]


def test_norm_nonconvergence_exit_code(monomial_file, capsys):
    code, _, _ = run(["norm", "--space", "a1", "--p", "1.5", "--in", monomial_file, "--tol", "1e-16"], capsys)
    assert code == 2


def test_norm_domain_error(monomial_file, capsys):
    code, _, err = run(["norm", "--space", "besov", "--p", "0.4", "--in", monomial_file], capsys)
    assert code == 1 and "hbl:" in err


def test_missing_file(capsys):
    code, _, _ = run(["norm", "--space", "a1", "--in", "/nonexistent.json"], capsys)
    assert code == 1


def test_verify_csv(capsys):
    code, out, _ = run(["verify", "--check", "dynkin", "--trials", "3", "--n", "8", "--seed", "4"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3
    assert list(rows[0]) == ["name", "instance", "lhs", "rhs", "margin", "pass"]
    assert all(r["pass"] == "True" for r in rows)


def test_verify_json_lines(capsys):
    code, out, _ = run(["verify", "--check", "hardy", "--p", "3", "--alpha", "1", "--trials", "2",
                        "--format", "json"], capsys)
    assert code == 0
    lines = [json.loads(x) for x in out.splitlines()]
    assert len(lines) == 2 and all(x["pass"] for x in lines)


def test_verify_manifest(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps([{"check": "uss", "params": {"trials": 5}, "seed": 1},
                                {"check": "kernel4", "params": {"trials": 2}, "seed": 2}]))
    code, out, _ = run(["verify", "--manifest", str(path)], capsys)
    assert code == 0 and len(out.splitlines()) == 8


def test_verify_sandwich_alias(capsys):
    code, out, _ = run(["verify", "--check", "theorem3", "--p", "2", "--alpha", "0", "--n", "8",
                        "--trials", "5"], capsys)
    assert code == 0 and out.count("dynkin_sandwich") == 5


def test_verify_outside_region(capsys):
    code, _, err = run(["verify", "--check", "hardy", "--p", "2", "--alpha", "3"], capsys)
    assert code == 1 and "hbl:" in err


def test_verify_unknown_check(capsys):
    code, _, err = run(["verify", "--check", "bogus"], capsys)
    assert code == 1 and "unknown check" in err


def test_verify_failing_check_exit_code(capsys):
    # the critical weight with 0.02 slope tolerance over small degrees fails
    code, _, _ = run(["verify", "--check", "critical", "--p", "2", "--eps", "0", "--ns", "2..16"], capsys)
    assert code == 1


def test_sweep_csv(capsys):
    code, out, _ = run(["sweep", "--sweep", "afp", "--p", "2", "--ns", "2..32"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "value", "cumulative_exponent"]
    assert rows[-1][0] == "fit"
    assert float(rows[-1][1]) == pytest.approx(0.5, abs=1e-9)
    assert float(rows[1][1]) == pytest.approx(math.sqrt(2), rel=1e-10)


def test_sweep_json(capsys):
    code, out, _ = run(["sweep", "--sweep", "dolzhenko", "--p", "4", "--r", "0.5", "--ns", "2..8",
                        "--format", "json"], capsys)
    d = json.loads(out)
    assert code == 0 and d["pass"] and d["xs"] == [2, 4, 8]


def test_sweep_needs_three_points(capsys):
    code, _, err = run(["sweep", "--sweep", "afp", "--ns", "2,4"], capsys)
    assert code == 1 and "degenerate" in err


def test_gen_round_trip(tmp_path, capsys):
    out = tmp_path / "b.json"
    assert main(["gen", "--kind", "blaschke", "--n", "5", "--radius", "0.8", "--seed", "3",
                 "--out", str(out)]) == 0
    assert len(json.loads(out.read_text())["zeros"]) == 5
    code, text, _ = run(["norm", "--space", "I", "--in", str(out)], capsys)
    assert code == 0


def test_gen_mobius_power_needs_r(capsys):
    code, _, _ = run(["gen", "--kind", "mobius_power", "--n", "3"], capsys)
    assert code == 1


def test_bad_arguments(capsys):
    assert main(["norm"]) == 1
    assert main(["--help"]) == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hbl", "gen", "--kind", "monomial", "--n", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"zeros": [[0.0, 0.0], [0.0, 0.0]]}
