import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from ortholog.cli import TOL_SCALE_ENV
from ortholog.matio import obj_to_matrix, parse_matrix

from cli_cases import CASES, INPUTS, golden_path, parse_output, run


def assert_close(got, want, path="$"):
    if isinstance(want, dict):
        assert isinstance(got, dict) and set(got) == set(want), path
        for k in want:
            assert_close(got[k], want[k], f"{path}.{k}")
    elif isinstance(want, list):
        assert isinstance(got, list) and len(got) == len(want), path
        for i, (g, w) in enumerate(zip(got, want)):
            assert_close(g, w, f"{path}[{i}]")
    elif isinstance(want, float):
        assert got == pytest.approx(want, abs=1e-12, rel=1e-12), path
    else:
        assert got == want, path


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, text = run(CASES[name])
    assert code == 0, text
    want = parse_output(name, golden_path(name).read_text())
    assert_close(parse_output(name, text), want)


@pytest.mark.parametrize("name", sorted(CASES))
def test_byte_identical_reruns(name):
    assert run(CASES[name]) == run(CASES[name])


def test_dist_value():
    code, text = run(["dist", "I2.json", "negI2.json"])
    assert code == 0
    assert json.loads(text)["distance"] == pytest.approx(math.pi * math.sqrt(2), abs=1e-15)


def test_pfaffian_value():
    assert json.loads(run(["pfaffian", "J4.json"])[1]) == {"pfaffian": 1.0}


def test_plog_two_points():
    out = json.loads(run(["plog", "negI2.json"])[1])
    assert out["structure"] == "TwoPoints"
    logs = [obj_to_matrix(L) for L in out["logs"]]
    E0 = np.array([[0.0, 1.0], [-1.0, 0.0]])
    np.testing.assert_allclose(logs[0], math.pi * E0)
    np.testing.assert_allclose(logs[1], -math.pi * E0)


def test_plog_pipes_into_exp():
    for name in ("negI4.json", "rot1.json", "quarter.json", "flip3.json"):
        R = parse_matrix((INPUTS / name).read_text())
        code, text = run(["plog", name])
        assert code == 0
        code, text = run(["exp", "-"], stdin_text=text)
        assert code == 0
        np.testing.assert_allclose(obj_to_matrix(json.loads(text)), R, atol=1e-12)


def test_csv_shape():
    header, rows = parse_output("x_csv", run(CASES["geodesic_csv"])[1])
    assert header == ["t", "m0_0", "m0_1", "m1_0", "m1_1"]
    assert len(rows) == 5
    assert rows[-1][0] == 2.0


def test_geodesic_format_flag():
    code, text = run(["geodesic", "I2.json", "quarter_log.json", "--format", "csv"])
    assert code == 0 and text.startswith("t,")
    code, text = run(["geodesic", "I2.json", "quarter_log.json"])
    out = json.loads(text)
    assert out["is_principal"] is False
    assert out["periodicity"]["kind"] == "Periodic"


def test_domain_error_exit_two():
    code, text = run(["dist", "I2.json", "flip3.json"])
    assert code == 2
    assert set(json.loads(text)["error"]) == {"code", "message"}
    code, text = run(["sample-aplog", "rot1.json", "--seed", "1"])
    assert code == 2
    assert json.loads(text)["error"]["code"] == "domain"
    code, text = run(["canon", "A2_5.json"])
    assert code == 2
    assert json.loads(text)["error"]["code"] == "precondition"


def test_io_error_exit_one(tmp_path):
    code, text = run(["exp", str(tmp_path / "missing.json")])
    assert code == 1 and json.loads(text)["error"]["code"] == "io"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _ = run(["exp", str(bad)])
    assert code == 1
    bad.write_text('{"n": 2, "data": [1, 2, 3]}')
    code, _ = run(["exp", str(bad)])
    assert code == 1


def test_seed_required():
    with pytest.raises(SystemExit):
        run(["sample-aplog", "negI4.json"])


def test_out_flag(tmp_path):
    target = tmp_path / "d.json"
    code, text = run(["diameter", "4", "--out", str(target)])
    assert code == 0 and text == ""
    assert json.loads(target.read_text())["diameter"] == pytest.approx(2 * math.pi)


def test_tolerance_flags_and_env(monkeypatch):
    code, text = run(["canon", "rot1.json", "--tol-orth", "1e-20"])
    assert code == 2
    monkeypatch.setenv(TOL_SCALE_ENV, "1e-12")
    code, _ = run(["canon", "rot1.json"])
    assert code == 2
    monkeypatch.setenv(TOL_SCALE_ENV, "1")
    code, _ = run(["canon", "rot1.json"])
    assert code == 0


def test_curvature_without_plane():
    out = json.loads(run(["curvature", "4"])[1])
    assert out == {"n": 4, "ricci_coeff": 0.5, "scalar": 3.0}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ortholog", "diameter", "2"],
        capture_output=True,
        text=True,
        env={**os.environ},
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["diameter"] == pytest.approx(math.pi * math.sqrt(2))
