import json
import subprocess
import sys

import pytest

from lexcm.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_oracle(capsys):
    code, out, _ = run(capsys, "classify", "--n", "5", "--u", "1,3", "--v", "3,4")
    doc = json.loads(out)
    assert code == 0
    assert doc["buchsbaum"] is True and doc["cm"] is False and doc["strict_cm_level"] == 1
    assert doc["method"] == "oracle" and doc["field"] == "2"


def test_classify_single_monomial_is_cm(capsys):
    code, out, _ = run(capsys, "classify", "--n", "4", "--u", "1,2", "--v", "1,2", "--mode", "fast")
    assert code == 0 and json.loads(out)["cm"] is True


def test_classify_both_reports_no_mismatch(capsys):
    code, out, _ = run(capsys, "classify", "--n", "6", "--u", "2,4", "--v", "4,5", "--mode", "both", "--field", "Q")
    doc = json.loads(out)
    assert code == 0 and doc["mismatches"] == []
    assert doc["oracle"]["strict_cm_level"] == doc["fast"]["strict_cm_level"] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--n", "4", "--u", "2,3", "--v", "1,2"],
        ["classify", "--n", "4", "--u", "1,x", "--v", "1,2"],
        ["classify", "--n", "4", "--u", "1,5", "--v", "1,2"],
        ["classify", "--n", "4", "--u", "1,2", "--v", "1,2,3"],
        ["classify", "--n", "4", "--u", "1,2", "--v", "3,4", "--field", "4"],
        ["classify", "--n", "4", "--u", "1,2"],
        ["sweep", "--d", "1"],
        ["verify-join", "--trials", "0"],
    ],
)
def test_invalid_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


@pytest.mark.parametrize(
    "n,u,v,facets",
    [
        (4, "1,3", "2,4", [[1, 2], [3, 4]]),
        (5, "1,3", "3,4", [[1, 2], [3, 5], [4, 5]]),
        (3, "1,2", "1,2", [[1, 3], [2, 3]]),
    ],
)
def test_show(capsys, n, u, v, facets):
    code, out, _ = run(capsys, "show", "--n", str(n), "--u", u, "--v", v)
    doc = json.loads(out)
    assert code == 0 and doc["facets"] == facets
    assert doc["minimal_nonfaces"][0] == [int(x) for x in u.split(",")]


def test_show_is_compact(capsys):
    _, out, _ = run(capsys, "show", "--n", "4", "--u", "1,3", "--v", "2,4")
    assert '"facets":[[1,2],[3,4]]' in out and " " not in out.strip()


def test_sweep_to_file(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, stdout, _ = run(capsys, "sweep", "--max-n", "5", "--out", str(out))
    assert code == 0
    assert out.read_text().startswith("n,d,u,v,i,")
    assert "disagreements=0" in stdout and "finding: join index" in stdout


def test_sweep_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run(capsys, "sweep", "--max-n", "5", "--d", "2-3", "--format", "json", "--out", str(p))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_stdout_keeps_report_clean(capsys):
    code, out, err = run(capsys, "sweep", "--max-n", "4", "--mode", "fast")
    assert code == 0 and out.startswith("n,d,u,v") and "sweep:" in err


def test_sweep_io_error_exits_3(tmp_path, capsys):
    code, _, err = run(capsys, "sweep", "--max-n", "4", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 3 and "cannot write" in err


def test_verify_join(capsys):
    code, out, _ = run(capsys, "verify-join", "--trials", "25", "--seed", "5")
    assert code == 0 and "failed=0" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lexcm", "show", "--n", "4", "--u", "1,3", "--v", "2,4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["f_vector"] == [1, 4, 2]
