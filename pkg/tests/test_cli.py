"""Command-line interface: subcommands, exit codes, dumps."""

import subprocess
import sys

import pytest

from hopfusion.builtins import make_builtin
from hopfusion.cli import main
from hopfusion.field import gf_construct
from hopfusion.presentation import render_presentation


@pytest.fixture
def ks3_file(tmp_path):
    text = render_presentation(make_builtin("kS3", gf_construct(7)))
    path = tmp_path / "ks3.hsc"
    path.write_text(text)
    return path, text


def test_validate_builtin_passes(capsys):
    assert main(["validate", "--builtin", "kC3"]) == 0
    out = capsys.readouterr().out
    assert "input: kC3@p=5" in out
    assert "check Hopf.Axioms: pass" in out
    assert out.endswith("result: ALL-PASS\n")


def test_pipeline_through_stage(capsys):
    assert main(["pipeline", "--builtin", "kC2", "--through", "uv"]) == 0
    out = capsys.readouterr().out
    assert "check Prop2.6: pass" in out
    assert "check Smash.Axioms" not in out
    assert "through: uv" in out


def test_validate_from_file(ks3_file, capsys):
    path, _ = ks3_file
    assert main(["validate", "--input", str(path)]) == 0
    assert "input: ks3.hsc" in capsys.readouterr().out


def test_corrupted_file_fails_validation(ks3_file, capsys):
    path, text = ks3_file
    # flip one antipode coefficient: still parseable, no longer coherent
    assert "ANTIPODE\n0 0 1\n" in text
    path.write_text(text.replace("ANTIPODE\n0 0 1\n", "ANTIPODE\n0 0 2\n"))
    assert main(["validate", "--input", str(path)]) == 1
    out = capsys.readouterr().out
    assert "check Hopf.Axioms: fail" in out
    assert "result: FAIL Hopf.Axioms" in out


def test_malformed_file_is_invalid_input(tmp_path, capsys):
    path = tmp_path / "junk.hsc"
    path.write_text("not a presentation\n")
    assert main(["validate", "--input", str(path)]) == 2
    assert "invalid input" in capsys.readouterr().err


def test_missing_file_is_invalid_input(tmp_path, capsys):
    assert main(["validate", "--input", str(tmp_path / "absent.hsc")]) == 2


def test_unknown_builtin_is_invalid_input(capsys):
    assert main(["pipeline", "--builtin", "kQ8"]) == 2
    assert "unknown builtin" in capsys.readouterr().err


def test_hypothesis_violation_exit_code(capsys):
    assert main(["pipeline", "--builtin", "kS3@p=3"]) == 3
    assert "divides 2*dim" in capsys.readouterr().err
    assert main(["pipeline", "--builtin", "kS3@p=2"]) == 3


def test_bad_builtin_spec(capsys):
    assert main(["pipeline", "--builtin", "kS3@q=7"]) == 2
    assert main(["pipeline", "--builtin", "kS3@p=x"]) == 2
    assert main(["pipeline", "--builtin", "kS3@p=6"]) == 2


def test_export_table(capsys):
    assert main(["export", "--builtin", "kC2", "--table", "N"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "basis: 2"
    assert "entry 1 1 0 1" in out


def test_export_needs_valid_input(tmp_path, capsys):
    path = tmp_path / "junk.hsc"
    path.write_text("nope\n")
    assert main(["export", "--input", str(path), "--table", "N"]) == 2


def test_argparse_rejects_bad_flags():
    with pytest.raises(SystemExit) as exc:
        main(["pipeline", "--builtin", "kC2", "--through", "nowhere"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["export", "--builtin", "kC2"])  # missing --table
    with pytest.raises(SystemExit):
        main(["pipeline"])  # missing input source


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hopfusion.cli", "validate", "--builtin", "kC2"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "result: ALL-PASS" in proc.stdout


def test_seed_recorded_in_report(capsys):
    assert main(["validate", "--builtin", "kC2", "--seed", "42"]) == 0
    assert "seed: 42" in capsys.readouterr().out
