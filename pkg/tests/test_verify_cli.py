"""Conjecture verification reports and the command-line interface."""

import json
import subprocess
import sys

import pytest

from blockinv.blocks import BlockParams
from blockinv.cli import _parse_grid_block, _parse_lemma_grid, main
from blockinv.verify import (
    ConjectureReport,
    Sourced,
    SweepGrid,
    check_conjecture,
    check_conjecture_gl,
    check_conjecture_sl,
    default_grids,
    emit_report,
    exit_code,
    summarize,
    sweep,
)


def test_check_conjecture_gl3_example():
    r = check_conjecture_gl(BlockParams.gl3(1, 1, 3))
    assert r.kB.value == 24 and r.kB.source == "exact"
    assert r.k0B.value == 9
    assert r.kD.value == 17
    assert r.kDprime.value == 9 and r.kDprime.source == "exact"
    assert r.c1 == "Verified" and r.c2 == "Verified"


def test_check_conjecture_gl2_equality_point():
    r = check_conjecture_gl(BlockParams.gl2_3mod4(2, 1))
    assert r.kB.value == 2 and r.kD.value == 2
    assert r.c2 == "Verified"  # equality 2 <= 1*2
    assert r.c1 == "Verified"


def test_check_conjecture_sl_small_case():
    r = check_conjecture_sl(1, 3)
    assert r.kB == Sourced(16, "exact")
    assert r.k0B == Sourced(6, "exact")
    assert r.kDprime == Sourced(3, "exact")
    assert r.lB_lower == 5
    assert r.kD.value == 9
    assert r.c1 == "Verified"  # 16 <= 6*3
    assert r.c2 == "Verified"  # 16 <= 5*9


def test_check_conjecture_sl_upper_bound_points():
    r = check_conjecture_sl(1, 6)
    assert r.kB == Sourced(117, "upper-bound")
    assert r.k0B.value == 18
    assert r.c1 == "Verified" and r.c2 == "Verified"
    r = check_conjecture_sl(2, 9)
    assert r.kB == Sourced(45687, "upper-bound")
    assert r.k0B == Sourced(18, "exact")
    assert r.c1 == "Verified" and r.c2 == "Verified"


def test_check_conjecture_sl_coprime_weight():
    r = check_conjecture_sl(1, 2)
    assert r.kB == Sourced(3, "exact")
    assert r.c1 == "Verified" and r.c2 == "Verified"


def test_check_conjecture_dispatch():
    r = check_conjecture((1, 3), mode="sl")
    assert r.mode == "sl"
    with pytest.raises(ValueError):
        check_conjecture(BlockParams.gl2_1mod4(2, 2), mode="sl")
    with pytest.raises(ValueError):
        check_conjecture(BlockParams.gl3(1, 1, 3), mode="nope")


def test_sweep_small_grid_all_verified():
    grid = SweepGrid(mode="gl", ell=3, a=(1,), d=(1,), w=tuple(range(1, 10)))
    reports = sweep(grid)
    assert len(reports) == 9
    assert all(r.c1 == "Verified" and r.c2 == "Verified" for r in reports)
    assert exit_code(reports) == 0


def test_sweep_workers_preserve_order():
    grid = SweepGrid(mode="gl", ell=3, a=(1, 2), d=(1,), w=tuple(range(1, 6)))
    assert sweep(grid, workers=4) == sweep(grid, workers=1)


def test_sweep_empty_grid():
    assert sweep(SweepGrid(mode="gl", ell=3, a=(), d=(1,), w=(1,))) == []


def test_emit_json_roundtrip():
    reports = sweep(SweepGrid(mode="sl", a=(1,), w=(3, 6)))
    payload = json.loads(emit_report(reports, "json"))
    assert payload["summary"]["points"] == 2
    assert payload["reports"][0]["kB"]["value"] == 16


def test_emit_csv_and_markdown():
    reports = sweep(SweepGrid(mode="gl", ell=2, case="3mod4", atilde=(3,), w=(1, 2, 4, 8)))
    csv_text = emit_report(reports, "csv").decode()
    assert csv_text.splitlines()[0].startswith("mode,ell,case,a,atilde")
    md = emit_report(reports, "markdown").decode()
    rows = [line.split("|") for line in md.splitlines()[2:]]
    kb_column = [int(row[8]) for row in rows]
    assert kb_column == [2, 12, 94, 2908]
    with pytest.raises(ValueError):
        emit_report(reports, "xml")


def test_markdown_reproduces_small_table():
    reports = sweep(SweepGrid(mode="gl", ell=2, case="3mod4", atilde=(2,), w=(1, 2, 3)))
    md = emit_report(reports, "markdown").decode()
    rows = [line.split("|") for line in md.splitlines()[2:]]
    assert [int(row[8]) for row in rows] == [2, 8, 16]


def test_exit_code_contract():
    verified = ConjectureReport(
        "gl", 3, "-", 1, None, 1, 3,
        Sourced(1, "exact"), Sourced(1, "exact"), 1,
        Sourced(1, "exact"), Sourced(1, "exact"), "Verified", "Verified")
    inconclusive = ConjectureReport(
        "gl", 3, "-", 1, None, 1, 3,
        Sourced(9, "exact"), Sourced(1, "exact"), 1,
        Sourced(1, "lower-bound"), Sourced(1, "lower-bound"),
        "Inconclusive", "Verified")
    violated = ConjectureReport(
        "gl", 3, "-", 1, None, 1, 3,
        Sourced(9, "exact"), Sourced(1, "exact"), 1,
        Sourced(1, "exact"), Sourced(1, "exact"), "Violated", "Verified")
    assert exit_code([verified]) == 0
    assert exit_code([verified, inconclusive]) == 2
    assert exit_code([verified, inconclusive, violated]) == 1
    assert summarize([verified, inconclusive])["inconclusive"] == 1


def test_default_grids_shape():
    grids = default_grids()
    assert len(grids) == 4
    total = sum(len(list(g.points())) for g in grids)
    assert total == 180 + 150 + 150 + 12


def test_parse_grid_block():
    grid = _parse_grid_block("mode=gl ell=3 a=1..3 d=1,2 w=1..30")
    assert grid.a == (1, 2, 3) and grid.d == (1, 2) and len(grid.w) == 30
    grid = _parse_grid_block("mode=sl a=1..2 w=3,6,9,12")
    assert grid.mode == "sl" and grid.w == (3, 6, 9, 12)
    with pytest.raises(ValueError):
        _parse_grid_block("bogus")
    with pytest.raises(ValueError):
        _parse_grid_block("q=5")


def test_parse_lemma_grid():
    assert _parse_lemma_grid("w=1..3 a=2") == {"w": [1, 2, 3], "a": [2]}
    assert _parse_lemma_grid(None) is None


def test_cli_compute_and_exit_codes(capsys):
    rc = main(["compute", "--ell", "3", "--a", "1", "--d", "1", "--w", "6", "--format", "csv"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "270" in out
    rc = main(["compute", "--mode", "sl", "--a", "1", "--w", "9", "--format", "json"])
    out = capsys.readouterr().out
    assert rc == 0
    payload = json.loads(out)
    assert payload["reports"][0]["kB"]["source"] == "upper-bound"


def test_cli_compute_ell2_cases(capsys):
    rc = main(["compute", "--ell", "2", "--case", "1mod4", "--a", "3", "--w", "2",
               "--format", "csv"])
    out = capsys.readouterr().out
    assert rc == 0 and ",48," in out
    rc = main(["compute", "--ell", "2", "--case", "3mod4", "--atilde", "3", "--w", "8",
               "--format", "csv"])
    out = capsys.readouterr().out
    assert rc == 0 and ",2908," in out


def test_cli_sweep_workers(capsys):
    rc = main(["sweep", "--grid", "mode=gl ell=3 a=1 d=1 w=1..6",
               "--workers", "3", "--format", "csv"])
    single = main(["sweep", "--grid", "mode=gl ell=3 a=1 d=1 w=1..6", "--format", "csv"])
    assert rc == single == 0
    outputs = capsys.readouterr().out
    half = len(outputs) // 2
    assert outputs[:half] == outputs[half:]


def test_cli_rejects_bad_arguments(capsys):
    assert main(["compute", "--ell", "2", "--w", "3"]) == 1
    assert main(["compute", "--mode", "sl", "--ell", "2", "--a", "1", "--w", "3"]) == 1
    assert main(["group", "--spec", "sd(12)", "--op", "order"]) == 1
    capsys.readouterr()


def test_cli_group_ops(capsys):
    assert main(["group", "--spec", "wr(c(3),3)", "--op", "order"]) == 0
    assert capsys.readouterr().out.strip() == "81"
    assert main(["group", "--spec", "wr(c(3),3)", "--op", "classes", "--brute"]) == 0
    assert capsys.readouterr().out.strip() == "17"
    assert main(["group", "--spec", "wr(c(3),3)", "--op", "derived-classes"]) == 0
    assert capsys.readouterr().out.strip() == "9"
    # derived subgroup beyond the cap: certified lower bound and exit 2
    assert main(["group", "--spec", "wr(wr(c(3),3),3)", "--op",
                 "derived-classes", "--cap", "100"]) == 2
    assert int(capsys.readouterr().out.strip()) <= 1017


def test_cli_bounds_single_lemma(capsys):
    rc = main(["bounds", "--lemma", "k3_bound", "--grid", "w=1..10"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "checked 10 instances" in out


def test_cli_bounds_expected_exception(capsys):
    rc = main(["bounds", "--lemma", "p3_growth", "--grid", "w=0..5"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "1 documented exceptions" in out


def test_cli_sweep_grid_file(tmp_path, capsys):
    grid_file = tmp_path / "grid.txt"
    grid_file.write_text(
        "# two blocks\n"
        "mode=gl ell=3 a=1 d=1 w=1..5\n"
        "mode=sl a=1 w=3,6\n"
    )
    rc = main(["sweep", "--grid", str(grid_file), "--format", "csv"])
    out = capsys.readouterr().out
    assert rc == 0
    assert len(out.splitlines()) == 1 + 5 + 2


def test_cli_sweep_subprocess_deterministic():
    cmd = [
        sys.executable, "-m", "blockinv.cli", "sweep",
        "--grid", "mode=gl ell=3 a=1..2 d=1,2 w=1..6", "--format", "json",
    ]
    first = subprocess.run(cmd, capture_output=True, check=True)
    second = subprocess.run(cmd, capture_output=True, check=True)
    assert first.stdout == second.stdout
    assert first.returncode == 0
