import json
import subprocess
import sys

import pytest

from mlvrel import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def ranks(csv_text):
    return [int(line.split(",")[3]) for line in csv_text.strip().splitlines()[1:]]


def test_tables_check_r1(capsys):
    code, out, err = run(capsys, "tables", "--r", "1", "--weights", "3..8", "--family", "deriv", "--check")
    assert code == 0
    assert ranks(out) == [1, 2, 5, 10, 22, 44]
    assert err.count(" ok") == 6


def test_tables_check_r2_ext(capsys):
    code, out, _ = run(capsys, "tables", "--r", "2", "--weights", "3..6", "--family", "ext", "--check")
    assert code == 0 and ranks(out) == [4, 14, 48, 150]


def test_tables_r6_weight3(capsys):
    code, out, _ = run(capsys, "--r", "6", "tables", "--weights", "3..3", "--family", "all", "--check")
    assert code == 0 and ranks(out) == [36, 36, 36]


def test_check_compares_with_the_fixture(capsys, monkeypatch):
    real = cli.load_fixture()
    real["tables"]["1"]["deriv"][0] = 2
    monkeypatch.setattr(cli, "load_fixture", lambda: real)
    code, _, err = run(capsys, "tables", "--weights", "3..4", "--family", "deriv", "--check")
    assert code == 1 and "MISMATCH" in err


def test_untabulated_cells_are_reported(capsys):
    code, _, err = run(capsys, "--r", "7", "tables", "--weights", "3..3", "--family", "deriv", "--check")
    assert code == 0 and "no published value" in err
    fx = cli.load_fixture()
    assert cli.expected_cell(fx, "ext", 1, 14) is None
    assert cli.expected_cell(fx, "deriv", 1, 14) == 2912


def test_fixture_counts_follow_closed_form():
    fx = cli.load_fixture()
    for r, tab in fx["tables"].items():
        for N, count in zip(tab["weights"], tab["count"]):
            assert count == int(r) ** 2 * (int(r) + 1) ** (N - 2)


def test_resource_cap(capsys):
    code, _, err = run(capsys, "--r", "6", "tables", "--weights", "3..5", "--family", "deriv")
    assert code == 3 and "--force" in err


@pytest.mark.parametrize("argv", [
    ["tables", "--weights", "2..4"],
    ["tables", "--weights", "x"],
    ["relations", "--weight", "2"],
    ["eval", "--word", "1:0"],
    ["eval", "--word", "0:0"],
    ["newton", "--word", "1:1", "--r", "3", "--z", "0.5"],
    ["newton", "--word", "1:0", "--z", "abc"],
    ["verify", "--cases", "0"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("mlvrel:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["tables", "--family", "nope"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        cli.main(["--r", "0", "tables"])
    assert e.value.code == 2


def test_eval_zeta_two(capsys):
    code, out, _ = run(capsys, "eval", "--r", "1", "--word", "2:0", "--m", "1000000")
    d = json.loads(out)
    assert code == 0
    assert set(d) == {"estimate_re", "estimate_im", "error_proxy", "m_max", "accel"}
    assert abs(d["estimate_re"] - 1.6449340668482264) < 1e-5


def test_newton(capsys):
    code, out, _ = run(capsys, "newton", "--word", "1:0", "--z", "-0.5", "--terms", "2000")
    d = json.loads(out)
    assert code == 0 and d["error_proxy"] < 1e-3 and abs(d["estimate_re"] - 2) < 1e-3
    code, out, _ = run(capsys, "newton", "--word", "1:0", "--z", "3")
    assert json.loads(out)["estimate_re"] == pytest.approx(0.25) and json.loads(out)["accel"] == "EXACT"


def test_relations_dump(capsys, tmp_path):
    target = tmp_path / "rel.json"
    code, out, err = run(capsys, "relations", "--r", "1", "--weight", "4", "--family", "lin",
                         "--out", str(target))
    assert code == 0 and out == ""
    assert "2 independent" in err
    d = json.loads(target.read_text())
    assert d["rank"] == 2 and d["family"] == "lin" and d["weight"] == 4
    assert all(set(row) == {"coeffs", "provenance"} for row in d["rows"])


def test_verify_report_and_determinism(capsys):
    a = run(capsys, "verify", "--suite", "newton", "--cases", "3", "--seed", "5")
    b = run(capsys, "verify", "--suite", "newton", "--cases", "3", "--seed", "5")
    assert a == b and a[0] == 0
    assert all(line.endswith(" ok") for line in a[1].strip().splitlines())
    code, out, _ = run(capsys, "verify", "--suite", "products", "--cases", "2", "--format", "json")
    assert code == 0 and all(t["ok"] for t in json.loads(out))


def test_tables_json_and_out(capsys, tmp_path):
    target = tmp_path / "t.json"
    code, out, _ = run(capsys, "tables", "--weights", "3..4", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    cells = json.loads(target.read_text())
    assert [c["family"] for c in cells] == ["deriv", "deriv", "ext", "ext", "lin", "lin"]


def test_console_script_bytes_are_stable():
    cmd = [sys.executable, "-m", "mlvrel.cli", "tables", "--r", "2", "--weights", "3..4"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd + ["--workers", "1"], capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"family,r,weight,rank,basis_count\n")
