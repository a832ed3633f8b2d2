"""End-to-end tests of the command line interface."""
from __future__ import annotations

import numpy as np
import pytest

from dlnc.cli import _parse_n_values, main
from dlnc.linalg import read_matrix, write_matrix, CodingMatrix
from dlnc.gf import GF
from dlnc.model import ReceptionInstance, write_sfm
from dlnc.replay import EXAMPLE2_SFM


@pytest.fixture()
def instance_file(tmp_path):
    path = tmp_path / "example.sfm"
    write_sfm(ReceptionInstance(EXAMPLE2_SFM), path)
    return str(path)


def test_parse_n_values() -> None:
    assert _parse_n_values("5..40:5") == (5, 10, 15, 20, 25, 30, 35, 40)
    assert _parse_n_values("5..8") == (5, 6, 7, 8)
    assert _parse_n_values("3,9,27") == (3, 9, 27)
    assert _parse_n_values("12") == (12,)
    with pytest.raises(ValueError):
        _parse_n_values("9..5")
    with pytest.raises(ValueError):
        _parse_n_values("5..9:0")


def test_solve_stdout(instance_file, capsys) -> None:
    code = main(["solve", "--instance", instance_file])
    captured = capsys.readouterr()
    assert code == 0
    assert "U=4 w_max=4 q=2" in captured.err
    lines = captured.out.splitlines()
    assert lines[0] == "4 5 2"
    assert len(lines) == 5


def test_solve_trace_goes_to_stderr(instance_file, capsys) -> None:
    code = main(["solve", "--instance", instance_file, "--trace"])
    captured = capsys.readouterr()
    assert code == 0
    assert "F*={(2,3),(3,4)}" in captured.err
    assert "F*" not in captured.out


def test_solve_to_file_roundtrip(instance_file, tmp_path, capsys) -> None:
    out = str(tmp_path / "solution.mat")
    code = main(["solve", "--instance", instance_file, "--q", "3", "--out", out])
    captured = capsys.readouterr()
    assert code == 0
    assert out in captured.out
    matrix = read_matrix(out)
    assert matrix.u == 4
    assert matrix.k == 5
    assert matrix.field.q == 3


def test_solve_unsupported_field(instance_file, capsys) -> None:
    code = main(["solve", "--instance", instance_file, "--q", "6"])
    captured = capsys.readouterr()
    assert code == 2
    assert "error:" in captured.err


def test_solve_missing_instance(tmp_path, capsys) -> None:
    code = main(["solve", "--instance", str(tmp_path / "nope.sfm")])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_verify_accepts_solver_output(instance_file, tmp_path, capsys) -> None:
    solution = str(tmp_path / "solution.mat")
    assert main(["solve", "--instance", instance_file, "--out", solution]) == 0
    capsys.readouterr()
    code = main(["verify", "--instance", instance_file, "--solution", solution])
    captured = capsys.readouterr()
    assert code == 0
    assert "decodability: ok" in captured.out
    assert "row-minimality: ok" in captured.out
    assert "U=4 w_max=4" in captured.out


def test_verify_rejects_thin_matrix(instance_file, tmp_path, capsys) -> None:
    bad = str(tmp_path / "bad.mat")
    write_matrix(CodingMatrix(GF(2), np.eye(2, 5, dtype=int)), bad)
    code = main(["verify", "--instance", instance_file, "--solution", bad])
    captured = capsys.readouterr()
    assert code == 1
    assert "decodability: FAILED" in captured.out


def test_replay_example2(capsys) -> None:
    code = main(["replay", "example2"])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out.strip().endswith("PASS")


def test_replay_u24(capsys) -> None:
    code = main(["replay", "u24"])
    captured = capsys.readouterr()
    assert code == 0
    assert "optimal U = 3" in captured.out


def test_replay_unknown_name_is_usage_error(capsys) -> None:
    with pytest.raises(SystemExit) as excinfo:
        main(["replay", "example9"])
    assert excinfo.value.code == 2


def test_run_smoke(tmp_path, capsys) -> None:
    out = tmp_path / "results"
    code = main(
        [
            "run", "--k", "5", "--n", "2,4", "--pe", "0.3", "--trials", "6",
            "--seed", "1", "--algo", "graphic:q=2", "--algo", "rlnc:q=2",
            "--out", str(out),
        ]
    )
    captured = capsys.readouterr()
    assert code == 0
    assert "graphic:q=2" in captured.out
    assert (out / "trials.csv").exists()
    assert (out / "summary.csv").exists()
    for name in ("mean_transmissions.png", "perfect_rate.png", "within_one_rate.png"):
        assert (out / name).exists()


def test_run_no_figures(tmp_path, capsys) -> None:
    out = tmp_path / "results"
    code = main(
        [
            "run", "--k", "4", "--n", "3", "--trials", "4",
            "--algo", "graphic:q=2", "--out", str(out), "--no-figures",
        ]
    )
    capsys.readouterr()
    assert code == 0
    assert sorted(p.name for p in out.iterdir()) == ["summary.csv", "trials.csv"]


def test_run_rlnc_rule_flag(tmp_path, capsys) -> None:
    out = tmp_path / "results"
    code = main(
        [
            "run", "--k", "4", "--n", "3", "--trials", "4",
            "--algo", "rlnc:q=2", "--rlnc-rule", "decodable",
            "--out", str(out), "--no-figures",
        ]
    )
    captured = capsys.readouterr()
    assert code == 0
    assert "rlnc:q=2:rule=decodable" in captured.out


def test_run_rejects_unsupported_field(tmp_path, capsys) -> None:
    code = main(
        [
            "run", "--k", "4", "--n", "3", "--trials", "2",
            "--algo", "graphic:q=6", "--out", str(tmp_path / "x"),
        ]
    )
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_run_rejects_bad_config(tmp_path, capsys) -> None:
    code = main(
        [
            "run", "--k", "0", "--n", "3", "--trials", "2",
            "--algo", "graphic:q=2", "--out", str(tmp_path / "x"),
        ]
    )
    assert code == 2
