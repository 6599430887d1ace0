"""CLI contract: subcommands, exit codes, stdout/stderr separation."""
import dataclasses
import json
import math
import shutil
import subprocess

import pytest

import unisearch.bench
import unisearch.cli as cli
from unisearch.bench import VerifyRow, find_case
from unisearch.solvers import Method


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestUsageErrors:
    @pytest.mark.parametrize("argv", [
        [],
        ["run"],
        ["run", "newton", "t1_01", "--tol", "0.1"],
        ["run", "halving", "t1_01"],                               # no stop rule
        ["run", "halving", "t1_01", "--tol", "0.1", "--budget", "5"],
        ["run", "halving", "t1_01", "--tol", "-0.1"],
        ["run", "halving", "t1_01", "--budget", "1"],
        ["table"],
        ["table", "3"],
        ["bounds", "--tol", "0.1"],                                # missing length
        ["list", "--flag", "bogus"],
    ])
    def test_argparse_rejects(self, argv):
        with pytest.raises(SystemExit) as info:
            cli.main(argv)
        assert info.value.code == 2

    def test_unknown_case_id(self, capsys):
        code, out, err = run_cli(capsys, "run", "halving", "t1_99", "--tol", "0.1")
        assert code == 2
        assert out == ""
        assert err.startswith("error:")

    def test_delta_restricted_to_dichotomous(self, capsys):
        code, _, err = run_cli(capsys, "run", "halving", "t1_01",
                               "--tol", "0.1", "--delta", "0.01")
        assert code == 2
        assert "dichotomous" in err

    def test_fibonacci_needs_budget(self, capsys):
        code, _, err = run_cli(capsys, "run", "fibonacci", "t1_01", "--tol", "0.1")
        assert code == 2
        assert err.startswith("error:")


class TestList:
    def test_counts(self, capsys):
        for argv, expected in (
            (("list",), 23),
            (("list", "--table", "1"), 20),
            (("list", "--table", "2"), 3),
            (("list", "--flag", "endpoint"), 3),
            (("list", "--flag", "garbled"), 1),
        ):
            code, out, err = run_cli(capsys, *argv)
            assert code == 0
            assert len(out.splitlines()) == expected

    def test_row_contents(self, capsys):
        _, out, _ = run_cli(capsys, "list", "--flag", "garbled")
        assert out.startswith("t1_20")
        assert "[garbled]" in out


class TestRun:
    def test_markdown_fields(self, capsys):
        code, out, err = run_cli(capsys, "run", "trichotomy", "t1_02",
                                 "--tol", "1e-6")
        assert code == 0
        assert "n_evals: 31" in out
        assert "method: trichotomy" in out
        x_min = float(next(l for l in out.splitlines()
                           if l.startswith("x_min:")).split()[1])
        assert abs(x_min - 1.3572088082974534) < 1e-6

    def test_trace_rows(self, capsys):
        # halving on [0.5, 2]: lengths 1.5 (start), 0.75, 0.375
        code, out, _ = run_cli(capsys, "run", "halving", "t1_02",
                               "--tol", "0.2", "--trace")
        assert code == 0
        lines = [l.strip() for l in out.splitlines()]
        assert "0: [0.5, 2.0] len=1.5 evals=0" in lines
        trace_lines = [l for l in lines if l and l[0].isdigit()]
        assert "len=0.75" in trace_lines[1]
        assert "len=0.375" in trace_lines[2]

    def test_json_payload(self, capsys):
        code, out, _ = run_cli(capsys, "run", "golden", "t1_01",
                               "--budget", "12", "--format", "json", "--trace")
        assert code == 0
        payload = json.loads(out)
        assert payload["case"] == "t1_01"
        assert payload["n_evals"] == 12
        assert len(payload["trace"]) == payload["n_iters"]
        assert sum(ev["evals"] for ev in payload["trace"]) == 12

    def test_csv_payload(self, capsys):
        code, out, _ = run_cli(capsys, "run", "trichotomy", "t1_02",
                               "--tol", "1e-6", "--format", "csv")
        assert code == 0
        header, row = out.splitlines()
        assert header == "case,method,x_min,f_min,n_evals,n_iters,final_lo,final_hi"
        assert row.startswith("t1_02,trichotomy,")
        assert row.split(",")[4] == "31"

    def test_fibonacci_minimal_budget(self, capsys):
        code, out, _ = run_cli(capsys, "run", "fibonacci", "t1_01", "--budget", "2")
        assert code == 0
        assert "n_evals: 2" in out

    def test_nonfinite_objective_fails_with_3(self, capsys, monkeypatch):
        broken = dataclasses.replace(find_case("t1_01"), fn=lambda x: math.nan)
        monkeypatch.setattr(cli, "find_case", lambda _: broken)
        code, out, err = run_cli(capsys, "run", "halving", "t1_01", "--tol", "0.1")
        assert code == 3
        assert out == ""
        assert err.startswith("run failed:")


class TestTable:
    def test_table1_csv_deterministic(self, capsys):
        code1, out1, err1 = run_cli(capsys, "table", "1", "--format", "csv")
        code2, out2, _ = run_cli(capsys, "table", "1", "--format", "csv")
        assert code1 == code2 == 0
        assert out1 == out2
        assert out1.splitlines()[0] == unisearch.bench.CSV_HEADER
        assert len(out1.splitlines()) == 61
        assert "PASS: 57/57 comparisons within tolerance (3 excluded)" in err1

    def test_table2_passes(self, capsys):
        code, out, err = run_cli(capsys, "table", "2", "--quiet")
        assert code == 0
        assert err == ""
        assert len(out.splitlines()) == 29    # header + separator + 27 rows

    def test_out_redirects_stdout(self, capsys, tmp_path):
        target = tmp_path / "report.csv"
        code, out, _ = run_cli(capsys, "table", "2", "--format", "csv",
                               "--out", str(target))
        assert code == 0
        assert out == ""
        assert target.read_text().splitlines()[0] == unisearch.bench.CSV_HEADER

    def test_failing_comparison_exits_3(self, capsys, monkeypatch):
        monkeypatch.setattr(unisearch.bench, "TABLE1_COUNT_TOLERANCE", -1)
        code, out, err = run_cli(capsys, "table", "1", "--format", "csv")
        assert code == 3
        assert "FAIL" in err


class TestBounds:
    def test_iteration_bounds(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--length", "1", "--tol", "0.1")
        assert code == 0
        assert out.splitlines() == [
            "halving: k_formula=3 k_exact=3",
            "trichotomy: k_formula=2 k_exact=2",
        ]

    def test_accuracy_bounds(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--length", "2", "--budget", "10")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "halving: accuracy_bound=0.044194173824159216"
        assert lines[1].startswith("trichotomy: accuracy_bound=0.0844261872946214")

    def test_domain_error_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "bounds", "--length", "1", "--tol", "0.6")
        assert code == 2
        assert err.startswith("error:")


class TestVerify:
    def test_coarse_grid(self, capsys):
        code, out, err = run_cli(capsys, "verify", "--grid", "10001")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 110
        assert all(line.endswith(" ok") for line in lines)
        assert "warning:" in err          # coarse grid widens the threshold
        assert "PASS: 110/110" in err

    def test_grid_too_small(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--grid", "2")
        assert code == 2
        assert err.startswith("error:")

    def test_disagreement_exits_3(self, capsys, monkeypatch):
        bad = VerifyRow("t1_01", Method.HALVING, 1.0, 2.0, 1.0, 1e-4, False)
        monkeypatch.setattr(cli, "run_verify", lambda grid_points: ([bad], 1e-4))
        code, out, err = run_cli(capsys, "verify")
        assert code == 3
        assert out.splitlines()[0].endswith(" FAIL")
        assert "FAIL: 0/1" in err


@pytest.mark.skipif(shutil.which("unisearch") is None,
                    reason="console script not on PATH")
def test_console_script_smoke():
    proc = subprocess.run(["unisearch", "list", "--table", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert len(proc.stdout.splitlines()) == 3
