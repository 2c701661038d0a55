import json
import math
import subprocess
import sys

import pytest

from le_kit import cli
from le_kit.lane_emden import critical_case
from le_kit.regimes import RegimeReport
from le_kit.solutions import SolutionTrace


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestClassify:
    def test_json_two_bands(self, capsys):
        code, out, _ = run_cli(
            capsys, "classify", "--d", "4", "--C", "-0.5", "--format", "json"
        )
        assert code == 0
        data = json.loads(out)
        assert data["label"] == "TwoBands"
        s = math.sqrt(0.5)
        roots = [r for r, _m in data["roots"]]
        assert roots[-1] == pytest.approx(math.sqrt(1.0 + s), rel=1e-12)
        assert roots[-2] == pytest.approx(math.sqrt(1.0 - s), rel=1e-12)

    def test_json_round_trips_through_parser(self, capsys):
        code, out, _ = run_cli(
            capsys, "classify", "--d", "6", "--C", "0.7", "--format", "json"
        )
        assert code == 0
        case = critical_case(6)
        rep = RegimeReport.parse_dict(json.loads(out), case)
        assert rep.C == 0.7

    def test_no_real_solution_exits_3(self, capsys):
        code, out, err = run_cli(capsys, "classify", "--d", "4", "--C", "-2")
        assert code == 3
        assert out == ""
        assert "no real solutions" in err

    def test_text_mode(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "--d", "4", "--C", "0")
        assert code == 0
        assert "TalentiAubin" in out

    def test_d6_degenerate_note_on_stderr(self, capsys):
        code, out, err = run_cli(
            capsys, "classify", "--d", "6", "--C", "-1", "--format", "json"
        )
        assert code == 0
        assert "w62(1) = 1 + C" in err
        assert json.loads(out)["label"] == "DoubleRootDegenerate"

    def test_not_critical_dimension_exits_3(self, capsys):
        code, _, err = run_cli(capsys, "classify", "--d", "5", "--C", "0.5")
        assert code == 3
        assert "error" in err


class TestEval:
    def test_d6_bump_value(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "--d", "6", "--C", "0", "--B", "0.2886751", "--x", "1"
        )
        assert code == 0
        assert float(out) == pytest.approx(0.921600, abs=1e-5)

    def test_json_payload(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "eval", "--d", "4", "--C", "0.5", "--B", "1", "--x", "2.0",
            "--format", "json",
        )
        assert code == 0
        data = json.loads(out)
        assert set(data) == {"d", "C", "B", "x", "theta"}

    def test_invalid_constant_exits_3(self, capsys):
        code, _, err = run_cli(capsys, "eval", "--d", "4", "--C", "-2", "--x", "1")
        assert code == 3
        assert "error" in err

    def test_negative_sign_flag(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "eval", "--d", "4", "--C", "-0.5", "--sign", "-1", "--x", "1.3",
        )
        assert code == 0
        assert float(out) < 0.0


class TestVerify:
    def test_passing_family_exits_0(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--d", "4", "--C", "2", "--B", "1", "--tol", "1e-6"
        )
        assert code == 0
        assert "pass" in out

    def test_json_report(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "verify", "--d", "6", "--C", "1", "--B", "1", "--format", "json",
        )
        assert code == 0
        data = json.loads(out)
        assert data["passed"] is True
        assert abs(data["recovered_C"] - 1.0) < 1e-5

    def test_unreachable_tolerance_exits_1(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--d", "4", "--C", "2", "--B", "1", "--tol", "1e-18"
        )
        assert code == 1
        assert "FAIL" in out


class TestTrace:
    def test_csv_output(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "trace", "--d", "4", "--C", "-0.5",
            "--x-min", "0.1", "--x-max", "10", "--n", "5",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "x,theta"
        assert len(lines) == 6

    def test_json_round_trip(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "trace", "--d", "6", "--C", "2",
            "--x-min", "0.1", "--x-max", "10", "--n", "5", "--format", "json",
        )
        assert code == 0
        tr = SolutionTrace.from_json(out)
        assert len(tr.xs) == 5
        assert tr.thetas[2] is None  # middle sample sits on the P pole


class TestFigure:
    def test_w43_columns(self, capsys):
        code, out, _ = run_cli(capsys, "figure", "w43")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "z,C=-2,C=-1,C=-0.5,C=0,C=1"
        assert len(lines) == 402

    def test_w62_columns(self, capsys):
        code, out, _ = run_cli(capsys, "figure", "w62")
        assert code == 0
        assert out.splitlines()[0] == "z,C=-2,C=-1,C=-0.5,C=0,C=1"

    def test_solutions_d4_skips_invalid(self, capsys):
        code, out, _ = run_cli(capsys, "figure", "solutions", "--d", "4", "--n", "50")
        assert code == 0
        labels = {line.split(",")[0] for line in out.splitlines()[1:]}
        assert "singular" in labels and "talenti-aubin" in labels
        assert "C=-2" not in labels  # no real solution for d=4
        assert "C=-0.5" in labels and "C=2" in labels

    def test_solutions_d6_has_all_constants(self, capsys):
        code, out, _ = run_cli(capsys, "figure", "solutions", "--d", "6", "--n", "50")
        assert code == 0
        labels = {line.split(",")[0] for line in out.splitlines()[1:]}
        assert {"singular", "talenti-aubin", "C=-2", "C=-1", "C=-0.5", "C=1", "C=2"} <= labels

    def test_determinism(self, capsys):
        _, out1, _ = run_cli(capsys, "figure", "w43")
        _, out2, _ = run_cli(capsys, "figure", "w43")
        assert out1 == out2
        _, s1, _ = run_cli(capsys, "figure", "solutions", "--d", "6", "--n", "80")
        _, s2, _ = run_cli(capsys, "figure", "solutions", "--d", "6", "--n", "80")
        assert s1 == s2

    def test_determinism_other_commands(self, capsys):
        for argv in (
            ("classify", "--d", "6", "--C", "-0.5", "--format", "json"),
            ("trace", "--d", "4", "--C", "0.5", "--x-min", "0.1", "--x-max", "5",
             "--n", "40"),
        ):
            _, a, _ = run_cli(capsys, *argv)
            _, b, _ = run_cli(capsys, *argv)
            assert a == b


class TestExitCodes:
    def test_usage_error_is_2(self, capsys):
        assert run_cli(capsys, "classify", "--d", "4")[0] == 2  # missing --C
        assert run_cli(capsys, "nonsense")[0] == 2

    def test_io_error_is_4(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys,
            "figure", "w43", "--out", str(tmp_path / "missing" / "f.csv"),
        )
        assert code == 4
        assert "i/o error" in err

    def test_out_writes_file(self, capsys, tmp_path):
        target = tmp_path / "w43.csv"
        code, out, _ = run_cli(capsys, "figure", "w43", "--out", str(target))
        assert code == 0
        assert out == ""
        assert target.read_text().startswith("z,")


class TestConsoleScript:
    def test_entry_point_round_trip(self):
        proc = subprocess.run(
            [sys.executable, "-m", "le_kit.cli", "eval", "--d", "4", "--C", "0",
             "--B", "0.35355339059327373", "--x", "1", "--format", "json"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["theta"] == pytest.approx(8.0 / 9.0, rel=1e-9)

    def test_log_env_goes_to_stderr(self):
        proc = subprocess.run(
            [sys.executable, "-m", "le_kit.cli", "classify", "--d", "4", "--C", "0.5",
             "--format", "json"],
            capture_output=True, text=True, env={"LE_KIT_LOG": "debug", "PATH": ""},
        )
        assert proc.returncode == 0
        json.loads(proc.stdout)  # stdout stays machine readable
        assert "dispatch" in proc.stderr
