import csv
import io
import json
import math
import os
import subprocess
import sys

import pytest

from glhs.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_moments_closed_form(capsys):
    code, out, err = run(capsys, "moments", "--t", "-1", "--n-max", "3", "--method", "closed-form")
    assert code == 0 and err == ""
    table = rows(out)
    assert table[0] == ["n", "m"]
    assert table[1] == ["0", "1"]
    # fields carry 17 significant digits; compare the parsed doubles
    assert float(table[2][1]) == 1.6487212707001282
    assert float(table[3][1]) == 5.43656365691809
    assert float(table[4][1]) == pytest.approx(5.5 * math.exp(1.5), rel=1e-15)
    assert table[4][1].startswith("24.649")


def test_moments_contour_matches(capsys):
    _, closed, _ = run(capsys, "moments", "--t", "-1", "--n-max", "3")
    code, contour, _ = run(capsys, "moments", "--t", "-1", "--n-max", "3", "--method", "contour")
    assert code == 0
    for a, b in zip(rows(closed)[1:], rows(contour)[1:]):
        assert float(b[1]) == pytest.approx(float(a[1]), rel=1e-10)


def test_moments_at_zero_are_ones(capsys):
    code, out, _ = run(capsys, "moments", "--t", "0", "--n-max", "5", "--method", "closed-form")
    assert code == 0
    assert [float(r[1]) for r in rows(out)[1:]] == [1.0] * 6


def test_moments_json_and_scientific_flags(capsys, tmp_path):
    path = tmp_path / "m.json"
    code, out, _ = run(
        capsys, "moments", "--t", "-1e0", "--n-max", "4e0", "--format", "json", "--output", str(path)
    )
    assert code == 0 and out == ""
    data = json.loads(path.read_text())
    assert data["method"] == "closed_form"
    assert [v["n"] for v in data["values"]] == [0, 1, 2, 3, 4]


def test_scientific_negative_t(capsys):
    code, out, _ = run(capsys, "support", "--t", "-1e-3")
    assert code == 0
    assert json.loads(out)["t"] == -1e-3


def test_moments_density_needs_negative_t(capsys):
    code, out, err = run(capsys, "moments", "--t", "0.5", "--n-max", "2", "--method", "density")
    assert code == 2 and out == ""
    assert "t must be negative" in err and len(err.strip().splitlines()) == 1


def test_support(capsys):
    code, out, _ = run(capsys, "support", "--t", "-1")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"t", "x_lo", "x_mid", "x_hi", "y_t", "a_t"}
    assert data["x_lo"] == pytest.approx(0.12487, abs=1e-5)
    assert data["x_hi"] == pytest.approx(8.0081, abs=1e-4)
    assert data["x_lo"] * data["x_hi"] == pytest.approx(1.0, abs=1e-12)


def test_curve(capsys):
    code, out, _ = run(capsys, "curve", "--t", "-1", "--samples", "64")
    assert code == 0
    table = rows(out)
    assert table[0] == ["y", "x_minus", "x_plus", "g_minus", "g_plus"]
    body = [[float(v) for v in r] for r in table[1:]]
    assert len(body) == 64
    g_minus = [r[3] for r in body]
    g_plus = [r[4] for r in body]
    assert all(a < b for a, b in zip(g_minus, g_minus[1:]))
    assert all(a > b for a, b in zip(g_plus, g_plus[1:]))
    assert all(r[1] <= -0.5 <= r[2] for r in body)


def test_density(capsys):
    code, out, _ = run(capsys, "density", "--t", "-0.01", "--points", "100")
    assert code == 0
    body = [[float(v) for v in r] for r in rows(out)[1:]]
    assert len(body) == 100
    lo, hi = body[0][0], body[-1][0]
    assert lo == pytest.approx(0.8187, abs=1e-4) and hi == pytest.approx(1.2215, abs=1e-4)
    assert all(lo <= x <= hi and rho >= 0 for x, rho in body)


def test_simulate_minimal(capsys):
    code, out, err = run(capsys, "simulate", "--t", "-1", "--dim", "2", "--steps", "1", "--reps", "1", "--seed", "7")
    assert code == 0
    data = json.loads(out)
    assert data["result"]["eigenvalue_range"][0] >= 0
    assert "wall time" in err


def test_simulate_csv_and_histogram(capsys, tmp_path):
    hist = tmp_path / "h.csv"
    code, out, _ = run(
        capsys, "simulate", "--t", "-1", "--dim", "4", "--reps", "3", "--format", "csv",
        "--histogram-output", str(hist),
    )
    assert code == 0
    assert rows(out)[0] == ["n", "mean", "stderr", "limit", "z", "within_allowance"]
    counts = [int(r[2]) for r in rows(hist.read_text())[1:]]
    assert sum(counts) == 12


def test_simulate_d256(capsys):
    code, out, _ = run(capsys, "simulate", "--t", "-1", "--dim", "256", "--reps", "50", "--seed", "42")
    assert code == 0
    report = json.loads(out)["report"]
    for r in report["rows"]:
        assert abs(r["z"]) <= 3 or abs(r["mean"] - r["limit"]) <= 3 * r["stderr"] + 2 / 256
        assert r["within_allowance"]


def test_simulate_twice_byte_identical():
    cmd = [sys.executable, "-m", "glhs", "simulate", "--t", "-1", "--dim", "8", "--reps", "4", "--seed", "1"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and len(a) > 0


@pytest.mark.parametrize("t", ["-1", "-4"])
def test_validate_passes(capsys, t):
    code, out, _ = run(capsys, "validate", "--t", t)
    assert code == 0
    assert "FAIL" not in out
    assert out.strip().endswith("all checks passed")


def test_validate_rejects_positive_t(capsys):
    code, out, err = run(capsys, "validate", "--t", "1")
    assert code == 2
    assert "t must be negative" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["moments", "--t", "-1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["moments", "--t", "-1", "--n-max", "2.5"])
    assert exc.value.code == 2


def test_console_script_module_entry():
    env = dict(os.environ)
    res = subprocess.run(
        [sys.executable, "-m", "glhs", "support", "--t", "-2"], capture_output=True, env=env, check=True
    )
    assert json.loads(res.stdout)["t"] == -2.0
