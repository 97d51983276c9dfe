import json
import subprocess
import sys

import pytest

from tiletransport.cli import EXIT_INFEASIBLE, EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main
from tiletransport.geometry import Patch


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_svg_and_json(tmp_path, capsys):
    svg, js = tmp_path / "out.svg", tmp_path / "p.json"
    code, out, _ = run(["gen", "--system", "chair", "--proto", "NE", "--level", "2",
                        "--svg", str(svg), "--out", str(js)], capsys)
    assert code == EXIT_OK
    assert "16 tiles" in out
    assert svg.read_text().count("<polygon") == 16
    assert len(Patch.from_json(js.read_text())) == 16


def test_discrepancy_rn(capsys):
    code, out, _ = run(["discrepancy", "--system", "chair", "--alpha", "NE:1,SW:-1", "--family", "Rn",
                        "--max", "8"], capsys)
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "descriptor,integral_exact,boundary_exact,ratio_float"
    assert len(lines) == 9
    for n, line in enumerate(lines[1:], start=1):
        name, integral, bnd, ratio = line.split(",")
        assert name == f"R{n}"
        assert int(integral) == (n - 1) * 2 ** n + 1
        assert int(bnd) == 4 * 2 ** n
        assert float(ratio) == pytest.approx(((n - 1) * 2 ** n + 1) / (4 * 2 ** n), rel=1e-11)


def test_output_is_deterministic(capsys):
    argv = ["discrepancy", "--system", "fibonacci", "--alpha", "a:1,b:-1φ", "--max", "10"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b
    argv = ["solve-pe", "--system", "chair", "--alpha", "f2", "--level", "3", "--R", "2"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b


def test_integrate_region(capsys):
    code, out, _ = run(["integrate", "--system", "chair", "--alpha", "NE:1,SW:-1", "--region", "3"], capsys)
    assert code == EXIT_OK and out.strip() == "17"


def test_transport_feasible_writes_plan(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    code, out, _ = run(["transport", "--system", "fibonacci", "--source", "f1", "--target", "f2", "--level", "8",
                        "--r", "10", "--slack-band", "10", "--plan", str(plan)], capsys)
    assert code == EXIT_OK
    assert json.loads(out)["feasible"] is True
    moves = json.loads(plan.read_text())
    assert moves and set(moves[0]) == {"src", "dst", "mass", "disp", "step"}


def test_transport_infeasible_exit_code(capsys):
    code, out, _ = run(["transport", "--system", "chair", "--source", "f1", "--target", "f2", "--level", "5",
                        "--r", "2"], capsys)
    assert code == EXIT_INFEASIBLE
    cert = json.loads(out)["certificate"]
    assert cert["type"] == "cut"


def test_solve_pe_json(capsys):
    code, out, _ = run(["solve-pe", "--system", "chair", "--alpha", "NE:1,SW:1,NW:-1,SE:-1", "--level", "3",
                        "--R", "2"], capsys)
    data = json.loads(out)
    assert code == EXIT_OK and data["exact"] is True and data["residual"] == 0


def test_stepwise_chair(capsys):
    code, out, _ = run(["stepwise", "--system", "chair", "--source", "f2", "--target", "f3", "--level", "3",
                        "--R", "2"], capsys)
    assert code == EXIT_OK
    assert json.loads(out)["ok"] is True


def test_stepwise_failure_has_distinct_code(capsys):
    code, out, _ = run(["stepwise", "--system", "fibonacci", "--source", "f1", "--target", "f2", "--level", "8",
                        "--R", "1"], capsys)
    assert code == EXIT_VERIFY
    assert json.loads(out)["ok"] is False


def test_casebook_fibonacci(capsys):
    code, out, _ = run(["casebook", "--case", "fibonacci"], capsys)
    assert code == EXIT_OK
    assert "all verdicts match: yes" in out


def test_bad_input_exit_code(capsys):
    code, _, err = run(["integrate", "--system", "chair", "--alpha", "XX:1"], capsys)
    assert code == EXIT_INPUT and "XX" in err


def test_unwritable_output(capsys):
    code, _, err = run(["discrepancy", "--system", "chair", "--alpha", "NE:1", "--family", "Rn", "--max", "2",
                        "--out", "/nonexistent/dir/x.csv"], capsys)
    assert code == EXIT_INPUT and "cannot write" in err


@pytest.mark.parametrize("argv", [["bogus"], ["gen", "--system", "chair", "--frobnicate"], []])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tiletransport", "integrate", "--system", "fibonacci",
                          "--alpha", "a:1", "--level", "4"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "5"
