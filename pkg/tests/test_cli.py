import json
import subprocess
import sys

import pytest

from pslet.cli import run, table_report


def _json(capsys, argv):
    code = run(argv + ["--format", "json-lines"])
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line.strip()]


def test_solve_record(capsys):
    code, [rec] = _json(capsys, ["solve", "--alpha", "1", "--k", "1", "--l", "0"])
    assert code == 0
    assert round(float(rec["E_raw"]), 6) == 7.942405
    assert round(float(rec["E_pade"]), 6) == 7.942404
    assert rec["k"] == 1 and rec["D"] == 3
    assert float(rec["E_m1"]) == 0
    assert float(rec["max_residual"]) < 1e-35


def test_harmonic_solve(capsys):
    code, [rec] = _json(capsys, ["solve", "--k", "0", "--l", "0"])
    assert code == 0
    assert float(rec["E_raw"]) == pytest.approx(1.5, abs=1e-14)
    assert float(rec["E_pade"]) == pytest.approx(1.5, abs=1e-14)


def test_coupling_alias_and_doubling(capsys):
    _, [a] = _json(capsys, ["solve", "--g", "20", "--k", "0", "--l", "5", "--double-energy"])
    _, [b] = _json(capsys, ["solve", "--alpha", "10", "--k", "0", "--l", "5"])
    assert float(a["E_pade"]) == pytest.approx(2 * float(b["E_pade"]), rel=1e-14)
    assert round(float(a["E_pade"]), 11) == 65.96150003049


def test_lD_matches_l_dim(capsys):
    _, [a] = _json(capsys, ["solve", "--alpha", "1", "--k", "0", "--lD", "2"])
    _, [b] = _json(capsys, ["solve", "--alpha", "1", "--k", "0", "--l", "1", "--dim", "5"])
    assert a["E_pade"] == b["E_pade"]


def test_deterministic(capsys):
    argv = ["solve", "--alpha", "0.1", "--k", "2", "--l", "3", "--format", "tsv"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first


@pytest.mark.parametrize("argv", [
    ["solve", "--alpha", "1", "--g", "2", "--k", "0", "--l", "0"],
    ["solve", "--k", "0"],
    ["solve", "--k", "0", "--l", "0", "--lD", "0"],
    ["solve", "--k", "0", "--l", "0", "--pade", "5", "5"],
    ["solve", "--k", "0", "--l", "0", "--pade", "2", "2", "--pade-num", "3"],
    ["table", "--id", "9"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        run(argv)
    assert exc.value.code == 2


def test_domain_error_exit_code(capsys):
    # 2D, l=0, k large enough that lbar stays fine, but negative l_D below the 2D floor is rejected
    code = run(["solve", "--k", "0", "--lD", "-1"])
    assert code == 2
    assert "pslet:" in capsys.readouterr().err


def test_dump_tables(tmp_path, capsys):
    path = tmp_path / "tables.tsv"
    assert run(["solve", "--alpha", "1", "--k", "1", "--l", "0", "--dump-tables", str(path)]) == 0
    kinds = {line.split("\t")[0] for line in path.read_text().splitlines()}
    assert {"C", "D", "E", "residual"} <= kinds


def test_table_report_row():
    records, ok = table_report(3)
    assert ok
    assert all(r["status"] in ("ok", "ref") for r in records)


def test_table_two_cell(capsys):
    code, recs = _json(capsys, ["table", "--id", "2"])
    assert code == 0
    hit = [r for r in recs if r["coupling"] == "g=20" and r["k"] == 0 and r["l"] == 5 and r["column"] == "pade"]
    assert hit and hit[0]["computed"].startswith("65.96150003049")


def test_verify_single_and_fixtures(tmp_path, capsys):
    path = tmp_path / "fx.jsonl"
    code, [rec] = _json(capsys, ["verify", "--alpha", "1", "--k", "1", "--l", "0", "--emit-fixtures", str(path)])
    assert code == 0
    assert float(rec["rel_pade"]) < 1e-7
    fx = json.loads(path.read_text().splitlines()[0])
    assert float(fx["energy"]) == pytest.approx(7.94240398, abs=1e-8)


def test_spectrum_ladder(capsys):
    code, recs = _json(capsys, ["spectrum", "--alpha", "0.5", "--k-max", "0", "--l-max", "2", "--dims", "3", "5"])
    assert code == 0
    by = {(r["k"], r["l"], r["D"]): r for r in recs}
    assert by[(0, 2, 3)]["E_pade"] == by[(0, 1, 5)]["E_pade"]
    assert "(0,0,7)" in by[(0, 2, 3)]["ladder"]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "pslet", "solve", "--k", "0", "--l", "0", "--format", "tsv"],
                         capture_output=True, text=True, check=True)
    header, row = out.stdout.splitlines()[:2]
    assert "E_pade" in header.split("\t")
