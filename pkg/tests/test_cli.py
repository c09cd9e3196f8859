import json

import pytest

from hksym.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_series_csv(capsys):
    code, out = run(capsys, "series", "N0", "--format", "csv")
    assert code == 0
    lines = out.out.splitlines()
    assert lines[:4] == ["d,value", "-1,1/1", "0,24/1", "1,324/1"]


def test_series_json(capsys):
    code, out = run(capsys, "series", "Itilde", "--trunc", "10", "--format", "json")
    assert code == 0
    obj = json.loads(out.out)
    entries = {(e["d"], e["k"]): e["v"] for e in obj["coeffs"]}
    assert (1, 1) not in entries
    assert entries[(3, 1)] == "3465/1"
    assert all("/" in v for v in entries.values())


def test_series_text_with_pole(capsys):
    code, out = run(capsys, "series", "Wp", "--trunc", "2")
    assert code == 0
    assert "(1+y)^2" in out.out


def test_unknown_series(capsys):
    code, out = run(capsys, "series", "bogus")
    assert code == 2


def test_bad_flag(capsys):
    code, _ = run(capsys, "table", "gv1", "--max", "abc")
    assert code == 2
    code, _ = run(capsys, "series", "F", "--trunc", "1")
    assert code == 2


def test_table_gv1(capsys):
    code, out = run(capsys, "table", "gv1", "--max", "24")
    assert code == 0
    lines = out.out.splitlines()
    assert lines[0] == "| (β,β) | a | b |"
    assert len(lines) == 2 + 28
    assert "| 35/2 | 38376042111 | -65957272227/8 |" in lines


def test_table_gv2_zero_block(capsys):
    code, out = run(capsys, "table", "gv2", "--max", "0")
    assert code == 0
    rows = out.out.splitlines()[2:]
    assert len(rows) == 4 and all(r.endswith("| 0 |") for r in rows)


def test_table_needs_truncation(capsys):
    code, out = run(capsys, "table", "gv2", "--max", "79/2", "--trunc", "10")
    assert code == 2
    assert "TruncationTooSmall" in out.err


def test_table_fujiki(capsys):
    code, out = run(capsys, "table", "fujiki-hilb", "--max-n", "6")
    assert code == 0
    assert "| S^[6] | 10395 | 51030 | 122220 | 198300 | 266490 | 378420 | 1073720 |" in out.out


def test_table_to_file(capsys, tmp_path):
    path = tmp_path / "t.csv"
    code, out = run(capsys, "table", "gv1", "--max", "2", "--format", "csv", "--out", str(path))
    assert code == 0 and out.out == ""
    assert path.read_text(encoding="utf-8").splitlines()[4] == "0/1,6/1,1/1"


@pytest.mark.parametrize("suite", ["fano", "ramanujan", "tp2", "ercf", "anomaly"])
def test_check_suites(capsys, suite):
    code, out = run(capsys, "check", suite)
    assert code == 0
    assert json.loads(out.out)["pass"] is True


def test_check_all_with_tiny_truncation(capsys):
    code, out = run(capsys, "check", "all", "--trunc", "3")
    assert code == 1
    obj = json.loads(out.out)
    assert any("TruncationTooSmall" in r.get("error", "") for r in obj["results"])


def test_env_default(capsys, monkeypatch):
    monkeypatch.setenv("HKSYM_TRUNC", "4")
    code, out = run(capsys, "series", "N0", "--format", "json")
    assert json.loads(out.out)["trunc"] == 4


def test_output_independent_of_jobs(capsys):
    _, a = run(capsys, "check", "integrality-g2", "--jobs", "1")
    _, b = run(capsys, "check", "integrality-g2", "--jobs", "2")
    assert a.out == b.out
