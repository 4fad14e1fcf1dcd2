import json
import subprocess
import sys

import pytest

from lpalg.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_period1(capsys):
    code, out, _ = run(["check", "x1*x2 + 1", "--n", "3"], capsys)
    assert code == 0
    assert "Period1" in out and "P1 = x0 + x2" in out


def test_check_json_negative(capsys):
    code, out, _ = run(["check", "x1 + x2 + 1", "--n", "3", "--json"], capsys)
    assert code == 1
    data = json.loads(out)
    assert data["verdict"] == "NotPeriod1" and data["stage"] == "pseudoperiod"


def test_sequence_numeric(capsys):
    code, out, _ = run(["sequence", "x1*x3 + x2^2", "--n", "4", "--terms", "12", "--numeric", "--ones"], capsys)
    assert code == 0
    assert out.strip() == "1,1,1,1,2,3,7,23,59,314,1529,8209"


def test_sequence_json_uses_strings(capsys):
    code, out, _ = run(["sequence", "x1*x3 + x2^2", "--n", "4", "--terms", "6", "--numeric", "--ones", "--json"],
                       capsys)
    assert code == 0 and json.loads(out) == ["1", "1", "1", "1", "2", "3"]


def test_quiver_mutate(capsys):
    code, out, _ = run(["quiver", "mutate", "--matrix", "[[0,-1,2],[1,0,-3],[-1,0,0]]", "--at", "0"], capsys)
    assert code == 0
    assert json.loads(out) == [[0, 1, -2], [-1, 0, -1], [1, -1, 0]]


def test_quiver_mutate_not_mutable(capsys):
    code, out, _ = run(["quiver", "mutate", "--matrix", "[[0,-1,2],[1,0,-3],[-1,0,0]]", "--at", "2"], capsys)
    assert code == 1 and "not mutable" in out


def test_classify(capsys):
    code, out, _ = run(["classify", "--n", "3", "x1*x2 + 3*x1 + 3*x2 + 5"], capsys)
    assert code == 0 and "class 5" in out
    code, out, _ = run(["classify", "--n", "2", "x1^3 + 2"], capsys)
    assert code == 1


def test_family_with_params(capsys):
    code, out, _ = run(["family", "Extreme", "--n", "4", "A=3", "B=2", "--emit-seed"], capsys)
    assert code == 0
    assert "P1 = x0 + x2 + 3" in out


def test_invariant(capsys):
    code, out, _ = run(["invariant", "Extreme", "--n", "4", "A=3", "B=2", "--terms", "8"], capsys)
    assert code == 0 and "ok" in out


def test_seed_and_mutate_round_trip(tmp_path, capsys):
    code, out, _ = run(["seed", "x1*x3 + x2^2", "--n", "4", "--json"], capsys)
    assert code == 0
    path = tmp_path / "seed.json"
    path.write_text(out)
    code, out, _ = run(["mutate", "--seed", str(path), "--at", "0"], capsys)
    assert code == 0 and "x0'" in out


@pytest.mark.parametrize("argv", [
    ["check", "x1 +", "--n", "3"],
    ["check", "x1*x2 + 1"],
    ["check", "x1*x2 + 1", "--n", "-3"],
    ["nosuchcommand"],
    ["sequence", "x1", "--n", "2", "--terms", "x"],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and err


def test_parse_error_points_at_column(capsys):
    code, _, err = run(["check", "x1 + (", "--n", "3"], capsys)
    assert code == 2 and "column 6" in err


def test_output_is_deterministic(capsys):
    a = run(["selftest", "--rng-seed", "3", "--json"], capsys)
    b = run(["selftest", "--rng-seed", "3", "--json"], capsys)
    assert a == b and a[0] == 0


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "lpalg.cli", "check", "x1*x2 + 1", "--n", "3", "--json"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["verdict"] == "Period1"
