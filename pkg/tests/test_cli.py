import csv
import io
import json

import numpy as np
import pytest

from kicked_ising.cli import main, parse_angle


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_angle():
    assert parse_angle("pi/4") == pytest.approx(np.pi / 4)
    assert parse_angle("pi/4+0.02") == pytest.approx(np.pi / 4 + 0.02)
    assert parse_angle("-0.5") == -0.5
    assert parse_angle("2*pi") == pytest.approx(2 * np.pi)
    for bad in ("__import__('os')", "pi**2", "x", ""):
        with pytest.raises(ValueError):
            parse_angle(bad)


def test_simulate_csv(capsys):
    code, out, _ = run(capsys, "simulate", "--n", "5", "--state", "plus-y", "--steps", "6", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "linear_entropy", "concurrence"]
    assert len(rows) == 8
    assert float(rows[2][1]) == pytest.approx(0.5, abs=1e-12)


def test_simulate_json_single_qubit(capsys):
    code, out, _ = run(capsys, "simulate", "--n", "1", "--steps", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1
    assert all(r["concurrence"] is None for r in data["rows"])


def test_simulate_is_deterministic(capsys):
    argv = ["simulate", "--n", "9", "--tau", "0.3", "--theta", "1.0", "--phi", "0.2", "--steps", "20"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_simulate_to_file(tmp_path, capsys):
    path = tmp_path / "out.csv"
    code, out, _ = run(capsys, "simulate", "--n", "3", "--steps", "2", "--format", "csv", "-o", str(path))
    assert code == 0 and out == ""
    assert path.read_text().startswith("n,linear_entropy,concurrence")


def test_spectrum_grid_check(capsys):
    code, out, _ = run(capsys, "spectrum", "--n", "8", "--check-pi4-grid")
    assert code == 0
    assert json.loads(out)["schema"] == 1
    code, _, err = run(capsys, "spectrum", "--n", "8", "--tau", "0.5", "--check-pi4-grid")
    assert code == 2
    assert err


def test_periodicity(capsys):
    code, out, _ = run(capsys, "periodicity", "--n", "7", "--n-max", "40", "--max-period", "40")
    assert code == 0
    data = json.loads(out)
    assert data["operator_period"] == 12
    assert data["entropy_period"] == 6


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--n-list", "5,6")
    assert code == 0


def test_sweep_jsonl(capsys):
    code, out, _ = run(
        capsys, "sweep", "--n-list", "6,7", "--tau-list", "pi/4,1.0",
        "--n-max", "30", "--max-period", "30", "--workers", "1",
    )
    assert code == 0
    lines = [json.loads(l) for l in out.strip().splitlines()]
    assert [(r["n_qubits"], r["operator_period"]) for r in lines] == [
        (6, 8), (6, None), (7, 12), (7, None),
    ]


def test_oracle_check(capsys):
    code, out, _ = run(capsys, "oracle-check", "--n", "5", "--steps", "8", "--random", "2")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["simulate"],
        ["simulate", "--n", "0"],
        ["simulate", "--n", "3", "--tau", "os.system"],
        ["sweep", "--n-list", "3,-1"],
        ["bogus"],
    ],
)
def test_usage_errors_exit_1(argv, capsys):
    assert main(argv) == 1
