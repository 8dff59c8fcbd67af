"""CLI contracts: subcommands, formats, exit codes, shorthand flags."""

from __future__ import annotations

import csv
import io
import json

from pullback_parking.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- check -----------------------------------------------------------------


def test_check_accepts(capsys):
    code, out, _ = run(capsys, "check", "--prefs", "3,2,3,1", "--n", "5", "--k", "1", "--l", "2")
    assert code == 0
    assert "is-parking-function: true" in out
    assert "outcome: 4,2,1,3,0" in out


def test_check_rejects_with_failed_car(capsys):
    code, out, _ = run(capsys, "check", "--prefs", "3,2,2,1", "--n", "5", "--k", "1", "--l", "2")
    assert code == 1
    assert "is-parking-function: false" in out
    assert "failed-car: 4" in out


def test_check_trivial(capsys):
    code, out, _ = run(capsys, "check", "--prefs", "1", "--n", "1", "--k", "0", "--l", "0")
    assert code == 0


def test_check_json_traces(capsys):
    code, out, _ = run(
        capsys, "check", "--prefs", "3,2,3,1", "--n", "5", "--k", "1", "--l", "2",
        "--format", "json",
    )
    doc = json.loads(out)
    assert doc["is_parking_function"] is True
    assert doc["outcome"] == "4,2,1,3,0"
    assert doc["traces"][2] == {
        "car": 3,
        "preferred": 3,
        "backward_checked": [2],
        "forward_checked": [4],
        "parked_at": 4,
    }


def test_check_contained(capsys):
    code, out, _ = run(
        capsys, "check", "--prefs", "1,1", "--n", "2", "--k", "1", "--l", "1",
        "--contained", "--format", "json",
    )
    assert code == 1
    doc = json.loads(out)
    assert doc["status"] == "containment-violation"
    assert doc["failed_car"] == 2


def test_check_malformed_is_usage_error(capsys):
    code, _, err = run(capsys, "check", "--prefs", "9,2", "--n", "5", "--k", "1", "--l", "2")
    assert code == 2
    assert "error" in err
    code, _, _ = run(capsys, "check", "--prefs", "1,x", "--n", "5", "--k", "1", "--l", "2")
    assert code == 2


def test_check_csv(capsys):
    code, out, _ = run(
        capsys, "check", "--prefs", "3,2,2,1", "--n", "5", "--k", "1", "--l", "2",
        "--format", "csv",
    )
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["car", "preferred", "backward_checked", "forward_checked", "parked_at"]
    assert rows[4] == ["4", "1", "", "2;3", "FAIL"]


# --- count -----------------------------------------------------------------


def test_count_classical(capsys):
    code, out, _ = run(capsys, "count", "--m", "4", "--n", "4", "--k", "0", "--l", "3")
    assert code == 0
    assert out.strip() == "125"


def test_count_empty_instance(capsys):
    code, out, _ = run(capsys, "count", "--m", "0", "--n", "5", "--k", "1", "--l", "1")
    assert code == 0
    assert out.strip() == "1"


def test_count_all_methods_agree(capsys):
    code, out, _ = run(
        capsys, "count", "--m", "4", "--n", "5", "--k", "1", "--l", "2",
        "--method", "all", "--format", "json",
    )
    assert code == 0
    rows = json.loads(out)
    assert [row["method"] for row in rows] == ["brute", "perm", "recursive"]
    assert {row["count"] for row in rows} == {"536"}
    assert all(isinstance(row["count"], str) for row in rows)


def test_count_auto_picks_brute_then_recursive(capsys):
    _, out, _ = run(capsys, "count", "--m", "2", "--n", "2", "--k", "0", "--l", "1",
                    "--format", "json")
    assert json.loads(out)["method"] == "brute"
    _, out, _ = run(capsys, "count", "--m", "9", "--n", "9", "--k", "0", "--l", "8",
                    "--format", "json")
    doc = json.loads(out)
    assert doc["method"] == "recursive"
    assert doc["count"] == str(10**8)


def test_count_csv_column_order(capsys):
    _, out, _ = run(capsys, "count", "--m", "2", "--n", "3", "--k", "1", "--l", "1",
                    "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["m", "n", "k", "l", "count", "method"]
    assert rows[1][:5] == ["2", "3", "1", "1", "9"]


def test_count_ceiling_refusal(capsys):
    code, _, err = run(capsys, "count", "--m", "10", "--n", "10", "--k", "1", "--l", "1",
                       "--method", "brute", "--ceiling", "100")
    assert code == 2
    assert "ceiling" in err


def test_count_env_ceiling(capsys, monkeypatch):
    monkeypatch.setenv("PULLBACK_CEILING", "10")
    code, _, err = run(capsys, "count", "--m", "3", "--n", "3", "--k", "0", "--l", "2",
                       "--method", "brute")
    assert code == 2
    assert "PULLBACK_CEILING" in err


def test_count_parallel_brute(capsys):
    code, out, _ = run(capsys, "count", "--m", "4", "--n", "4", "--k", "1", "--l", "2",
                       "--method", "brute", "--jobs", "2")
    sequential = run(capsys, "count", "--m", "4", "--n", "4", "--k", "1", "--l", "2",
                     "--method", "brute")
    assert code == 0
    assert out == sequential[1]


# --- shorthand flags -------------------------------------------------------


def test_sugar_classical(capsys):
    _, out, _ = run(capsys, "count", "--m", "4", "--n", "4", "--classical")
    assert out.strip() == "125"


def test_sugar_naples_keeps_k(capsys):
    _, out, _ = run(capsys, "count", "--m", "3", "--n", "3", "--k", "1", "--naples")
    assert out.strip() == "24"


def test_sugar_vacillating(capsys):
    _, out, _ = run(capsys, "count", "--m", "3", "--n", "3", "--vacillating")
    assert out.strip() == "20"


def test_sugar_interval(capsys):
    _, out, _ = run(capsys, "count", "--m", "3", "--n", "3", "--interval", "1")
    assert out.strip() == "13"


def test_sugar_conflicts(capsys):
    code, _, err = run(capsys, "count", "--m", "3", "--n", "3", "--classical", "--k", "1")
    assert code == 2
    code, _, _ = run(capsys, "count", "--m", "3", "--n", "3", "--naples", "--l", "2")
    assert code == 2
    code, _, _ = run(capsys, "count", "--m", "3", "--n", "3", "--classical", "--vacillating")
    assert code == 2


def test_missing_k_l_is_usage_error(capsys):
    code, _, err = run(capsys, "count", "--m", "3", "--n", "3")
    assert code == 2
    assert "--k" in err


# --- table -----------------------------------------------------------------


def test_table_classical_column(capsys):
    code, out, _ = run(capsys, "table", "--n", "1..5", "--m", "n", "--classical",
                       "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["m", "n", "k", "l", "count", "method"]
    assert [row[4] for row in rows[1:]] == ["1", "3", "16", "125", "1296"]


def test_table_empty_range_header_only(capsys):
    code, out, _ = run(capsys, "table", "--n", "3..2", "--m", "n", "--classical",
                       "--format", "csv")
    assert code == 0
    assert out == "m,n,k,l,count,method\n"


def test_table_k_sweep_monotone(capsys):
    _, out, _ = run(capsys, "table", "--n", "4", "--m", "3", "--k", "0..n-1",
                    "--l", "1", "--format", "json")
    rows = json.loads(out)
    counts = [int(row["count"]) for row in rows]
    assert counts == sorted(counts)
    assert [row["k"] for row in rows] == [0, 1, 2, 3]


def test_table_rows_sorted_lexicographically(capsys):
    _, out, _ = run(capsys, "table", "--n", "2..3", "--m", "1..n", "--k", "0",
                    "--l", "n-1", "--format", "json")
    rows = json.loads(out)
    keys = [(row["m"], row["n"], row["k"], row["l"]) for row in rows]
    assert keys == sorted(keys)


def test_table_jobs_deterministic(capsys):
    args = ("table", "--n", "1..4", "--m", "n", "--k", "0..n-1", "--l", "n-1",
            "--format", "json")
    _, sequential, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--jobs", "2")
    assert sequential == parallel


def test_table_lf_line_endings(capsys):
    _, out, _ = run(capsys, "table", "--n", "1..3", "--m", "n", "--classical",
                    "--format", "csv")
    assert "\r" not in out


def test_table_bad_range_is_usage_error(capsys):
    code, _, _ = run(capsys, "table", "--n", "n", "--m", "1", "--k", "0", "--l", "0")
    assert code == 2
    code, _, _ = run(capsys, "table", "--n", "1..3", "--m", "q", "--k", "0", "--l", "0")
    assert code == 2


# --- outcomes --------------------------------------------------------------


def test_outcomes_single_car(capsys):
    code, out, _ = run(capsys, "outcomes", "--m", "1", "--n", "2", "--k", "0", "--l", "1")
    assert code == 0
    assert out.splitlines() == ["0,1 -> 1", "1,0 -> 1"]


def test_outcomes_fiber_sum_matches_count(capsys):
    _, out, _ = run(capsys, "outcomes", "--m", "3", "--n", "4", "--k", "1", "--l", "2",
                    "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    total = sum(int(row[1]) for row in rows[1:])
    _, count_out, _ = run(capsys, "count", "--m", "3", "--n", "4", "--k", "1", "--l", "2")
    assert total == int(count_out.strip())


def test_outcomes_with_oracle_agrees(capsys):
    _, out, _ = run(capsys, "outcomes", "--m", "2", "--n", "3", "--k", "1", "--l", "1",
                    "--with-oracle", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["outcome", "fiber", "oracle_fiber"]
    for row in rows[1:]:
        assert row[1] == row[2]


def test_outcomes_json_is_well_formed(capsys):
    _, out, _ = run(capsys, "outcomes", "--m", "2", "--n", "3", "--k", "0", "--l", "2",
                    "--format", "json")
    rows = json.loads(out)
    assert {row["outcome"] for row in rows} >= {"1,2,0", "0,1,2"}


def test_outcomes_guard(capsys):
    code, _, err = run(capsys, "outcomes", "--m", "9", "--n", "12", "--k", "1", "--l", "1",
                       "--ceiling", "1000")
    assert code == 2
    assert "ceiling" in err


# --- verify ----------------------------------------------------------------


def test_verify_small_grid_clean(capsys):
    code, out, err = run(capsys, "verify", "--max-n", "2")
    assert code == 0
    assert "verdict: PASS" in out
    assert "timing:" in err


def test_verify_default_grid_clean(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert "three-way grid: n <= 6, 441 cells" in out
    assert "verdict: PASS" in out


def test_verify_json_report(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    assert doc["disagreements"] == []
    assert len(doc["cells"]) == 9  # (1,1) plus 2*2*2 cells at n=2
    checks = {row["check"] for row in doc["identities"]}
    assert "weakly-increasing-sqrt2" in checks
    assert "contained-vs-enumeration" in checks


def test_verify_trivial_grid(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "1", "--format", "json")
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_verify_injected_fault_detected(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "3", "--inject-fault",
                       "--format", "json")
    assert code == 1
    doc = json.loads(out)
    assert doc["ok"] is False
    assert len(doc["disagreements"]) >= 1
    assert any("three-way mismatch" in line for line in doc["disagreements"])


def test_verify_fault_restores_correct_rule(capsys):
    run(capsys, "verify", "--max-n", "2", "--inject-fault")
    code, out, _ = run(capsys, "count", "--m", "3", "--n", "3", "--k", "1", "--l", "1",
                       "--method", "perm")
    assert code == 0
    assert out.strip() == "20"


def test_verify_jobs_deterministic_stdout(capsys):
    _, sequential, _ = run(capsys, "verify", "--max-n", "2", "--format", "json")
    _, parallel, _ = run(capsys, "verify", "--max-n", "2", "--format", "json",
                         "--jobs", "2")
    assert sequential == parallel


def test_verify_csv_cells(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "2", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["m", "n", "k", "l", "brute", "perm", "recursive", "agree"]
    assert all(row[7] == "true" for row in rows[1:])


def test_seedless_flag_accepted(capsys):
    code, out, _ = run(capsys, "count", "--m", "2", "--n", "2", "--k", "0", "--l", "1",
                       "--seedless")
    assert code == 0
    assert out.strip() == "3"
