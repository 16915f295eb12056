import json
import subprocess
import sys

import pytest

from aomoto.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


@pytest.fixture
def e1_file(tmp_path):
    p = tmp_path / "E1.json"
    p.write_text(json.dumps({"dim": 2, "hyperplanes": [[1, 0, 0], [0, 1, 0], [1, 1, 1]]}))
    return str(p)


@pytest.fixture
def e4_file(tmp_path):
    p = tmp_path / "E4.json"
    p.write_text(json.dumps({"dim": 2, "hyperplanes": [[1, 0, 0], [1, 0, 1], [0, 1, 0]]}))
    return str(p)


def test_dense_infinity_e4(capsys, e4_file):
    code, out, _ = run(capsys, "dense-infinity", e4_file)
    assert code == 0
    assert [f["support"] for f in out["dense_edges_at_infinity"]] == [["inf"], [1, 2, "inf"]]


def test_aomoto_f2(capsys, e1_file):
    code, out, _ = run(capsys, "aomoto", e1_file, "--ring", "F_2", "--lambda", "1,1,1")
    assert code == 0 and out["dims"] == [0, 0, 1]


def test_aomoto_over_z4_uses_certificate(capsys):
    code, out, _ = run(capsys, "aomoto", "E1", "--ring", "Z/4", "--lambda", "1,1,1")
    assert code == 0 and out["mode"] == "certificate" and out["dims"] == [0, 0, 1]


def test_certificate_level_one(capsys, e1_file):
    code, out, _ = run(capsys, "certificate", e1_file, "--ring", "Z/4", "--lambda", "1,1,1", "--level", "1")
    assert code == 0
    assert out["triangular"] is True and out["det_is_unit"] is True


def test_certificate_refusal_exit_code(capsys):
    code, out, _ = run(capsys, "certificate", "E4", "--ring", "F_3", "--lambda", "1,1,1")
    assert code == 1 and not out["ok"] and out["refusal"]


def test_local_command(capsys):
    code, out, _ = run(capsys, "local", "E1", "--ring", "Q", "--q-sqrt", "2,3,5")
    assert code == 0 and out["dims"] == [0, 0, 1] and out["hypothesis"]["ok"]


def test_local_command_cyclotomic(capsys):
    code, out, _ = run(capsys, "local", "E1", "--ring", "Q(zeta_6)", "--q-sqrt", '[[0,1],[0,1],[0,1]]')
    assert code == 0 and len(out["dims"]) == 3


def test_strata_and_chambers_and_poset(capsys):
    code, out, _ = run(capsys, "strata", "E1")
    assert code == 0 and out["strata"]["counts"]["bch"] == [1, 2, 1]
    code, out, _ = run(capsys, "chambers", "E1")
    assert out["count"] == 7 and out["bounded"] == 1
    code, out, _ = run(capsys, "poset", "E1")
    assert out["betti"] == [1, 3, 3] and out["chi"] == 1
    assert sum(1 for f in out["affine"] if f["dim"] == 0) == 3


def test_chamber_complex_command(capsys):
    code, out, _ = run(capsys, "chamber-complex", "E1", "--ring", "Q", "--lambda", "1,2,3")
    assert code == 0 and out["dims"] == [1, 3, 3]
    assert out["cohomology"]["dims"] == [0, 0, 1]


def test_verify_single_and_hypothesis_failure(capsys):
    code, out, _ = run(capsys, "verify", "E1")
    assert code == 0 and out["ok"]
    code, out, _ = run(capsys, "verify", "E4", "--ring", "F_3", "--lambda", "1,1,1")
    assert code == 1
    status = {c["name"]: c["status"] for c in out["checks"]}
    assert status["supplied_weights_unit_at_dense_infinity_edges"] == "fail"
    assert status["supplied_weights_vanishing_below_top_degree"] == "skipped"


def test_verify_builtin_corpus(capsys):
    code, out, _ = run(capsys, "verify", "--corpus", "builtin", "--timings")
    assert code == 0 and len(out["instances"]) == 4 and "seconds" in out


@pytest.mark.parametrize("argv", [
    ["bogus", "E1"],
    ["poset"],
    ["poset", "no-such-file.json"],
    ["aomoto", "E1"],
    ["aomoto", "E1", "--ring", "F_4", "--lambda", "1,1,1"],
    ["aomoto", "E1", "--ring", "F_2", "--lambda", "1,1"],
    ["aomoto", "E1", "--lambda", "1,1,1"],
    ["certificate", "E1", "--ring", "Z/4", "--lambda", "1,1,1", "--level", "5"],
    ["verify", "E1", "--corpus", "builtin"],
    ["local", "E1", "--ring", "Q", "--q-sqrt", "0,1,1"],
])
def test_usage_errors_exit_two(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv))
    assert exc.value.code == 2


def test_bad_files_exit_two(capsys, tmp_path):
    dup = tmp_path / "dup.json"
    dup.write_text(json.dumps({"dim": 2, "hyperplanes": [[1, 0, 0], [2, 0, 0]]}))
    code, _, err = run(capsys, "poset", str(dup))
    assert code == 2 and "hyperplanes 1 and 2" in err
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 1, "hyperplanes": [[1, "1/0"]]}))
    code, _, err = run(capsys, "poset", str(bad))
    assert code == 2 and "invalid rational" in err


def test_file_weights_used(capsys, tmp_path):
    p = tmp_path / "w.json"
    p.write_text(json.dumps({"dim": 2, "hyperplanes": [[1, 0, 0], [0, 1, 0], [1, 1, 1]], "ring": "F_2",
                             "lambda": [1, 1, 1]}))
    code, out, _ = run(capsys, "aomoto", str(p))
    assert code == 0 and out["dims"] == [0, 0, 1]


def test_seed_sources(capsys, monkeypatch):
    _, a, _ = run(capsys, "strata", "E1", "--seed", "3")
    monkeypatch.setenv("AOMOTO_SEED", "3")
    _, b, _ = run(capsys, "strata", "E1")
    assert a == b and a["flag"]["seed"] == 3
    monkeypatch.setenv("AOMOTO_SEED", "x")
    code, _, _ = run(capsys, "strata", "E1")
    assert code == 2


def test_reports_are_byte_identical(e1_file):
    cmd = [sys.executable, "-m", "aomoto.cli", "verify", e1_file, "--seed", "4"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and json.loads(a)["ok"]
