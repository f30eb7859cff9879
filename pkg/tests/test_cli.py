import subprocess
import sys

import pytest

from coniveau.cli import main

from conftest import FIXTURES, GOLDEN

X_BAD = str(FIXTURES / "x_bad.tbl")


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,golden", [
    (["fp", "--format", "machine", "--filtration", "coniveau", "blowup(P2, point, 2)"], "fp_blowup_p2_point.txt"),
    (["normalize", "--format", "machine", "blowup(P2, point, 2) - prod(P1,P1)"], "normalize_bl_minus_p1p1.txt"),
    (["ghc", "--format", "machine", "P3"], "ghc_p3.txt"),
])
def test_golden_outputs(argv, golden, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0
    assert out.encode() == (GOLDEN / golden).read_bytes()
    # deterministic across runs
    assert run(argv, capsys)[1] == out


def test_ghc_x_bad(capsys):
    code, out, _ = run(["ghc", "--load", X_BAD, "--format", "machine", "X_bad"], capsys)
    assert code == 0 and out == "ghc criterion-fails\nfail 3 1 0 2\n"
    code, _, _ = run(["ghc", "--strict", "--load", X_BAD, "X_bad"], capsys)
    assert code == 3
    code, _, _ = run(["ghc", "--strict", "P3"], capsys)
    assert code == 0


def test_input_errors_exit_2_without_stdout(capsys):
    for argv in (["normalize", "--format", "machine", "blowup(P2, P1, 3)"],
                 ["fp", "--format", "machine", "1 + "],
                 ["ghc", "Unknown"],
                 ["ghc", "--load", str(FIXTURES / "weight_purity.tbl"), "P1"]):
        code, out, err = run(argv, capsys)
        assert code == 2 and out == "" and err.startswith("error:")


def test_compare_and_transfer(capsys):
    code, out, _ = run(["compare", "--format", "machine", "--precision", "5", "1 + L^-5", "1"], capsys)
    assert out == "compare equal\n0\n"
    code, out, _ = run(["compare", "--format", "machine", "--precision", "6", "1 + L^-5", "1"], capsys)
    assert out == "compare unequal\nmc -5 1 1\n"
    code, out, _ = run(["transfer", "--format", "machine", "--precision", "3",
                        "blowup(P2,point,2)", "prod(P1,P1)"], capsys)
    assert out.splitlines()[:4] == ["transfer transfer-valid", "classes equal",
                                    "ghc-a criterion-holds", "ghc-b criterion-holds"]
    code, out, _ = run(["transfer", "--format", "machine", "--precision", "10", "P2", "prod(P1,P1)"], capsys)
    assert out.splitlines()[:2] == ["transfer no-transfer-established", "classes unequal"]


def test_fp_level_and_graded(capsys):
    args = ["--load", X_BAD, "--format", "machine", "X_bad"]
    _, nu_out, _ = run(["fp", "--filtration", "coniveau"] + args, capsys)
    _, lam_out, _ = run(["fp", "--filtration", "level"] + args, capsys)
    assert "fp 3 1 -2" in lam_out and "fp 3 1" not in nu_out
    _, gr, _ = run(["fp", "--graded"] + args, capsys)
    assert "gr 3 0 -2" in gr


def test_load_subcommand(capsys):
    code, out, _ = run(["load", "--format", "machine", X_BAD, str(FIXTURES / "fourfold.tbl")], capsys)
    assert code == 0
    assert out == "table X_bad dim 3 exact\ntable Y4 dim 4 exact\n"
    code, _, err = run(["load", str(FIXTURES / "coniveau_level.tbl")], capsys)
    assert code == 2 and "coniveau-exceeds-level" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "coniveau.cli", "ghc", "--format", "machine", "P3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "ghc criterion-holds\n"
