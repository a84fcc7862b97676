from __future__ import annotations

import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from tabinv.cli import app

runner = CliRunner()

FIG_SQUARE: str = "1 2 8 / 4 5 6 / 3 7 9"


class TestShapeCommands:
    def test_count(self) -> None:
        result = runner.invoke(app, ["count", "3,3"])
        assert result.exit_code == 0
        assert result.output.strip() == "5"

    def test_count_with_hooks(self) -> None:
        result = runner.invoke(app, ["count", "3,3", "--hooks"])
        assert result.exit_code == 0
        assert result.output.splitlines() == ["4 3 2", "3 2 1", "5"]

    def test_total_and_max(self) -> None:
        assert runner.invoke(app, ["total", "2,2,2"]).output.strip() == "90"
        assert runner.invoke(app, ["max", "3,3,2,2"]).output.strip() == "13"

    def test_maxtab(self) -> None:
        result = runner.invoke(app, ["maxtab", "(3,3,2,2)"])
        assert result.exit_code == 0
        assert result.output.splitlines() == ["2 7 10", "1 8 9", "3 6", "4 5"]

    def test_stairsteps(self) -> None:
        result = runner.invoke(app, ["stairsteps", "4,3,2,2"])
        assert result.exit_code == 0
        assert result.output.splitlines() == [
            "E=(+1,-1,0,0) 5,2,2,2",
            "E=(+1,0,0,-1) 5,3,2,1",
            "E=(0,+1,0,-1) 4,4,2,1",
            "E=(0,0,+1,-1) 4,3,3,1",
        ]

    @pytest.mark.parametrize("shape", ["3,x", "", "3,4"])
    def test_bad_shape_is_usage_error(self, shape: str) -> None:
        assert runner.invoke(app, ["count", shape]).exit_code == 2


class TestDistributionCommand:
    def test_text(self) -> None:
        result = runner.invoke(app, ["distribution", "2,2"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0].split() == ["(2,2)"]
        assert [line.split() for line in lines[1:]] == [
            ["m=0", "2"],
            ["m=1", "3"],
            ["m=2", "1"],
            ["TOTAL", "6"],
        ]

    def test_json(self) -> None:
        result = runner.invoke(app, ["distribution", "2,2,2", "--format", "json"])
        assert result.exit_code == 0
        doc = json.loads(result.stdout)
        assert doc == {
            "counts": [5, 16, 25, 24, 14, 5, 1],
            "max_inversions": 6,
            "shape": [2, 2, 2],
            "total": 90,
        }

    def test_csv(self) -> None:
        result = runner.invoke(app, ["distribution", "1,1,1", "--format", "csv"])
        assert result.exit_code == 0
        assert result.output.splitlines() == ["i,count", "0,1", "1,2", "2,2", "3,1"]

    def test_format_from_environment(self) -> None:
        result = runner.invoke(app, ["distribution", "3,3"], env={"TABINV_FORMAT": "json"})
        assert result.exit_code == 0
        assert json.loads(result.stdout)["counts"] == [5, 9, 5, 1]

    def test_out_file(self, tmp_path: Path) -> None:
        target = tmp_path / "nested" / "dist.csv"
        result = runner.invoke(
            app, ["distribution", "2,2", "--format", "csv", "--out", str(target)]
        )
        assert result.exit_code == 0
        assert target.read_text(encoding="utf-8") == "i,count\n0,2\n1,3\n2,1\n"

    def test_workers(self) -> None:
        serial = runner.invoke(app, ["distribution", "3,2,1", "--format", "json"])
        parallel = runner.invoke(
            app, ["distribution", "3,2,1", "--format", "json", "--workers", "3"]
        )
        assert serial.exit_code == parallel.exit_code == 0
        assert serial.stdout == parallel.stdout

    def test_budget_exceeded(self) -> None:
        result = runner.invoke(app, ["distribution", "3,3,3", "--budget", "10"])
        assert result.exit_code == 1
        assert result.output.startswith("budget-exceeded:")

    @pytest.mark.parametrize(
        "args",
        [
            ["--workers", "0"],
            ["--budget", "0"],
            ["--format", "yaml"],
        ],
    )
    def test_bad_options(self, args: list[str]) -> None:
        assert runner.invoke(app, ["distribution", "2,2", *args]).exit_code == 2

    def test_betti(self) -> None:
        result = runner.invoke(app, ["betti", "2,2"])
        assert result.exit_code == 0
        assert result.output.splitlines() == ["b_0=1", "b_1=3", "b_2=2"]


class TestTableauCommands:
    def test_inversions(self) -> None:
        result = runner.invoke(app, ["inversions", FIG_SQUARE])
        assert result.exit_code == 0
        assert result.output.splitlines() == [
            "column 1: (3,4)",
            "column 2: (2,5)",
            "column 3: (6,8)",
            "n_inv=3",
        ]

    def test_standardize(self) -> None:
        result = runner.invoke(app, ["standardize", FIG_SQUARE])
        assert result.exit_code == 0
        assert result.output.strip() == "1 2 6 / 3 5 8 / 4 7 9"

    def test_not_row_standard(self) -> None:
        result = runner.invoke(app, ["inversions", "2 1 / 3 4"])
        assert result.exit_code == 1
        assert result.output.startswith("input-not-standard:")

    def test_unparseable_tableau(self) -> None:
        assert runner.invoke(app, ["standardize", "1 2 / 2 3"]).exit_code == 2

    def test_fiber(self) -> None:
        result = runner.invoke(app, ["fiber", "1 3 / 2 4"])
        assert result.exit_code == 0
        assert len(result.output.splitlines()) == 4

    def test_fiber_budget(self) -> None:
        result = runner.invoke(app, ["fiber", "1 / 2 / 3", "--budget", "5"])
        assert result.exit_code == 1
        assert result.output.startswith("budget-exceeded:")


class TestMapCommand:
    def test_forward(self) -> None:
        result = runner.invoke(app, ["map", "1 2 6 / 4 5 7 / 3 8 9"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "1 2 5 6 / 3 4 7 / 8 9"
        assert lines[1] == "shape: 4,3,2 (row 3 -> row 1)"
        assert lines[2] == "inversions: none"
        assert lines[3] == "inversion: column 1 (3,4), rows 2/3"
        assert lines[-1] == "added (1, 4), removed (3, 3)"

    def test_reverse_rectangle(self) -> None:
        result = runner.invoke(app, ["map", "1 2 4 6 / 3 7 9 / 5 8", "--direction", "phi2"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[:3] == ["3 4 6 / 1 2 7 / 5 8 9", "shape: 3,3,3", "inversions: 2:(2,4)"]

    def test_reverse_general(self) -> None:
        result = runner.invoke(
            app, ["map", "1 2 4 5 / 3 / 6", "--direction", "phi2", "--shape", "3,2,1"]
        )
        assert result.exit_code == 0
        assert result.output.splitlines()[:3] == [
            "3 4 5 / 1 2 / 6",
            "shape: 3,2,1",
            "inversions: 2:(2,4)",
        ]

    def test_reverse_shape_mismatch(self) -> None:
        result = runner.invoke(
            app, ["map", "1 2 3 / 4 5 6", "--direction", "phi2", "--shape", "2,2,2"]
        )
        assert result.exit_code == 1
        assert result.output.startswith("shape-mismatch:")

    def test_forward_needs_one_inversion(self) -> None:
        result = runner.invoke(app, ["map", "1 2 6 / 3 5 8 / 4 7 9"])
        assert result.exit_code == 1
        assert result.output.startswith("wrong-inversion-count:")

    def test_forward_needs_row_standard_input(self) -> None:
        result = runner.invoke(app, ["map", "3 1 / 2 4"])
        assert result.exit_code == 1
        assert result.output.startswith("input-not-standard:")

    def test_bad_direction(self) -> None:
        assert runner.invoke(app, ["map", "1 2", "--direction", "phi3"]).exit_code == 2


class TestFormulaCommand:
    @pytest.mark.parametrize(
        ("args", "expected"),
        [
            (["catalan", "5"], ["42"]),
            (["mahonian", "2"], ["1 2 2 1"]),
            (["compositions", "3", "2"], ["1+2", "2+1"]),
            (["two-row", "3"], ["5 9 5 1"]),
            (["m1", "3", "3"], ["8"]),
            (["m2", "3", "3"], ["35"]),
            (["threshold", "3", "2"], ["2"]),
        ],
    )
    def test_values(self, args: list[str], expected: list[str]) -> None:
        result = runner.invoke(app, ["formula", *args])
        assert result.exit_code == 0
        assert result.output.splitlines() == expected

    @pytest.mark.parametrize(
        "args",
        [["m2", "2", "3"], ["threshold", "1", "4"], ["two-row", "0"]],
    )
    def test_domain(self, args: list[str]) -> None:
        result = runner.invoke(app, ["formula", *args])
        assert result.exit_code == 2
        assert result.output.startswith("domain:")

    @pytest.mark.parametrize("args", [["catalan"], ["m1", "3"], ["fibonacci", "4"]])
    def test_usage(self, args: list[str]) -> None:
        result = runner.invoke(app, ["formula", *args])
        assert result.exit_code == 2
        assert result.output.startswith("usage:")


class TestVerifyCommand:
    def test_pass(self) -> None:
        result = runner.invoke(app, ["verify", "rect-i1", "--shape", "3,3"])
        assert result.exit_code == 0
        doc = json.loads(result.stdout)
        assert doc["claim"] == "rect-i1"
        assert doc["status"] == "pass"
        assert doc["evidence"][0]["hook"] == 9

    def test_sweep(self) -> None:
        result = runner.invoke(app, ["verify", "totals", "--max-n", "4"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["params"] == {"instances": 11, "max_n": 4}

    def test_out_of_hypothesis(self) -> None:
        result = runner.invoke(app, ["verify", "lemma", "--m", "4", "--i", "3"])
        assert result.exit_code == 2
        assert json.loads(result.stdout)["status"] == "out-of-hypothesis"

    @pytest.mark.parametrize(
        "args",
        [["m2", "--m", "2", "--n", "3"], ["two-row", "--n", "0"]],
    )
    def test_domain_error(self, args: list[str]) -> None:
        result = runner.invoke(app, ["verify", *args])
        assert result.exit_code == 2
        assert result.output.startswith("domain:")

    @pytest.mark.parametrize(
        "args",
        [["hook", "--max-n", "0"], ["lemma", "--max-n", "1"], ["rect-i1", "--max-n", "1"]],
    )
    def test_empty_sweep(self, args: list[str]) -> None:
        result = runner.invoke(app, ["verify", *args])
        assert result.exit_code == 2
        assert result.output.startswith(f"usage:{args[0]}:")

    def test_missing_parameters(self) -> None:
        result = runner.invoke(app, ["verify", "hook"])
        assert result.exit_code == 2
        assert result.output.startswith("usage:hook:")

    def test_unknown_claim(self) -> None:
        assert runner.invoke(app, ["verify", "riemann"]).exit_code == 2


class TestAppendixCommand:
    def test_single_table(self) -> None:
        result = runner.invoke(app, ["appendix", "--table", "2"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[2].split() == ["m=1", "16", "16", "m=0", "*"]
        assert lines[-1].split() == ["TOTAL", "90", "60"]

    def test_unknown_table(self) -> None:
        result = runner.invoke(app, ["appendix", "--table", "7"])
        assert result.exit_code == 2

    def test_json_document(self) -> None:
        result = runner.invoke(app, ["appendix", "--table", "2", "--format", "json"])
        assert result.exit_code == 0
        doc = json.loads(result.stdout)
        assert len(doc["tables"]) == 1
        assert doc["tables"][0]["stair_step"] == [3, 2, 1]

    def test_csv_header_once(self) -> None:
        result = runner.invoke(
            app, ["appendix", "--table", "3", "--format", "csv", "--workers", "2"]
        )
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "m,n,i,rectangle,stair_step,stair_step_i,agree"
        assert all(line.startswith("3,3,") for line in lines[1:])
