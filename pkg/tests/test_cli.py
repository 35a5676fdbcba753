import csv
import io
import json
import math
import subprocess
import sys

import pytest

from kcone.cli import main

DISK = '{"schema": 1, "kind": "cone", "kappa": 0, "R": 1, "sigma": {"kind": "circle"}}'
ANTIPODAL = (
    '{"schema": 1, "kind": "glued", "cone": {"kind": "cone", "kappa": 0, "R": 1, '
    '"sigma": {"kind": "circle"}}, "phi": {"kind": "antipodal_circle"}}'
)
TRIANGLE = '{"schema": 1, "kind": "polygon", "vertices": [[0, 0], [2, 0], [1, 1.7320508075688772]]}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_sn(capsys):
    code, out, _ = run(capsys, "sn", "--kappa", "1", "--t", "0,pi/2")
    assert code == 0
    r = rows(out)
    assert [float(x["value"]) for x in r] == [0.0, 1.0]
    assert list(r[0]) == ["kappa", "t", "value", "method", "error"]


def test_dist_cone(capsys):
    code, out, _ = run(capsys, "dist", "--space", DISK, "--from", "0.5,0", "--to", "0.5,pi")
    assert code == 0 and float(rows(out)[0]["distance"]) == pytest.approx(1.0)


def test_glued_dist_refines(capsys):
    code, out, _ = run(capsys, "glued-dist", "--space", ANTIPODAL, "--from", "0.9,0", "--to", "0.9,pi", "--eps", "0.2", "--refine", "3")
    assert code == 0
    r = rows(out)
    assert len(r) == 3
    for row in r:
        assert abs(float(row["distance"]) - 0.2) <= 3 * float(row["eps"])


def test_glued_dist_polygon(capsys):
    code, out, _ = run(capsys, "glued-dist", "--space", TRIANGLE, "--from", "1.5,0.8660254037844386", "--to", "0.5,0.8660254037844386", "--eps", "0.1")
    assert code == 0 and float(rows(out)[0]["distance"]) == pytest.approx(1.0, abs=0.2)


def test_glued_dist_needs_glued_space(capsys):
    code, _, err = run(capsys, "glued-dist", "--space", DISK, "--from", "0.5,0", "--to", "0.5,1")
    assert code == 2 and "glued" in err


def test_volume_exact_and_mc(capsys, tmp_path):
    code, out, _ = run(capsys, "volume", "--space", DISK, "--radii", "0.5,1")
    assert code == 0
    assert float(rows(out)[1]["volume"]) == pytest.approx(math.pi, abs=1e-9)
    spec = tmp_path / "disk.json"
    spec.write_text(DISK)
    dest = tmp_path / "out.csv"
    code, out, _ = run(capsys, "volume", "--space", f"@{spec}", "--radii", "0.5", "--method", "mc", "--samples", "20000", "--seed", "4", "--out", str(dest))
    assert code == 0 and out == ""
    r = rows(dest.read_text())[0]
    assert r["method"] == "mc" and r["samples"] == "20000"
    assert abs(float(r["volume"]) - math.pi / 4) <= 4 * float(r["error"])


def test_bg_report(capsys):
    code, out, _ = run(
        capsys, "bg-report", "--space", '{"schema": 1, "kind": "round_sphere"}', "--sigma", '{"schema": 1, "kind": "circle"}',
        "--kappa", "0", "--radii", "0,1,2", "--radii", "0.5,1,2",
    )
    assert code == 0
    r = rows(out)
    assert [x["note"] for x in r].count("empty_ball") == 1
    assert all(float(x["margin"]) >= 0 for x in r if x["method"] == "exact")


def test_bg_report_failure_exit(capsys):
    # a flat disk does not dominate the spherical model
    code, out, _ = run(capsys, "bg-report", "--space", DISK, "--sigma", '{"schema": 1, "kind": "circle"}', "--kappa", "1", "--radii", "0.2,0.5,1")
    assert code == 1


def test_tube_check(capsys):
    code, out, _ = run(capsys, "tube-check", "--spec", '{"schema": 1, "n": 2, "epsilon": 1, "gaps": [1]}', "--samples", "100000")
    assert code == 0
    r = {x["method"]: x for x in rows(out)}
    assert float(r["exact"]["value"]) == pytest.approx(4 * math.pi / 3 + math.sqrt(3) / 2, abs=1e-9)
    assert r["closed_form"]["agrees"] == "true" and r["mc"]["agrees"] == "true"
    code, out, _ = run(capsys, "tube-check", "--spec", '{"schema": 1, "n": 3, "epsilon": 0.5, "gaps": [0.1, 0.2]}', "--samples", "50000")
    assert code == 0 and rows(out)[1]["method"] == "expansion"


def test_tube_check_centers(capsys):
    spec = '{"schema": 1, "n": 2, "epsilon": 1, "centers": [[0, 0], [1.2, 0], [1.2, 1.2]]}'
    code, out, _ = run(capsys, "tube-check", "--spec", spec, "--samples", "20000")
    assert code == 0 and rows(out)[0]["note"] == "hypothesis_unverified"


@pytest.mark.parametrize(
    "argv",
    [
        ["dist", "--space", '{"schema": 1,', "--from", "0,0", "--to", "0,0"],
        ["dist", "--space", '{"kind": "circle"}', "--from", "0,0", "--to", "0,0"],
        ["tube-check", "--spec", '{"schema": 1, "n": 2, "epsilon": 1}'],
        ["tube-check", "--spec", '{"schema": 1, "n": 2, "epsilon": 1, "gaps": [1], "extra": 0}'],
        ["volume", "--space", "/nonexistent/space.json", "--radii", "1"],
        ["sn", "--kappa", "one", "--t", "1"],
    ],
)
def test_malformed_input_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("kcone:")


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sn", "--kappa", "1"])
    assert exc.value.code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["dist", "--space", '{"schema": 1, "kind": "cone", "kappa": 1, "R": 5, "sigma": {"kind": "circle"}}', "--from", "0,0", "--to", "0,0"],
        ["tube-check", "--spec", '{"schema": 1, "n": 2, "epsilon": 1, "gaps": [3]}'],
        ["dist", "--space", DISK, "--from", "2,0", "--to", "0.5,0"],
    ],
)
def test_domain_error_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3 and "domain error" in err


def test_lemma_suite_subset_json(capsys):
    code, out, _ = run(capsys, "lemma-suite", "--only", "spaceform", "--seed", "1")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["seed"] == 1
    assert all(c["name"].startswith("spaceform.") for c in doc["checks"])


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("KCONE_SEED", "5")
    _, out, _ = run(capsys, "lemma-suite", "--only", "spaceform.half")
    assert json.loads(out)["seed"] == 5
    monkeypatch.setenv("KCONE_SEED", "x")
    code, _, _ = run(capsys, "lemma-suite", "--only", "spaceform.half")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kcone", "sn", "--kappa", "0", "--t", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and "2.0,2.0" in proc.stdout
