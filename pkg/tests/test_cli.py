import json
import math
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given, strategies as st

from conical_shock import derive_parameters, solve_direct
from conical_shock.cli import EXIT_DOMAIN, EXIT_IO, EXIT_OK, EXIT_REGIME, main
from conical_shock.output import direct_document, to_csv, to_json

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = Path(__file__).resolve().parent / "golden"
SCHEMA = json.loads((ROOT / "docs" / "direct_solution.schema.json").read_text())

sys.path.insert(0, str(ROOT / "scripts"))
from regen_golden import CASES  # noqa: E402


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_bytes(name, tmp_path):
    out = tmp_path / name
    assert main(CASES[name] + ["--out", str(out)]) == EXIT_OK
    assert out.read_bytes() == (GOLDEN / name).read_bytes()


def test_direct_json_valid_against_schema(tmp_path):
    out = tmp_path / "sol.json"
    assert main(["direct", "--theta0", "20", "--epsilon", "0.01", "--E0", "1", "--out", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, SCHEMA)
    assert doc["theta0_deg"] == 20.0
    assert abs(doc["grid"][-1]["theta"] - math.radians(20.0)) < 1e-8


def test_direct_json_round_trip():
    sol = solve_direct(math.radians(25.0), derive_parameters(0.03))
    doc = direct_document(sol)
    back = json.loads(to_json(doc))
    assert back == doc
    for a, b in zip(doc["grid"], back["grid"]):
        for k in a:
            assert a[k].hex() == b[k].hex()


@given(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=20))
def test_float_serialization_is_exact(xs):
    assert json.loads(to_json({"x": xs}))["x"] == xs
    rows = [{"v": x} for x in xs]
    lines = to_csv(rows, ["v"]).split("\n")
    assert [float(s) for s in lines[1:-1]] == xs


def test_csv_layout(capsys):
    assert main(["sweep", "--theta0", "20", "--eps", "0.04,0.02"]) == EXIT_OK
    text = capsys.readouterr().out
    assert "\r" not in text and text.endswith("\n")
    lines = text.splitlines()
    assert lines[0] == "epsilon,beta_deg,gap_deg,bound_A23_deg,p_surface,newtonian_sin2"
    assert len(lines) == 3


def test_sweep_gap_column_decreasing():
    rows = (GOLDEN / "sweep_t20.csv").read_text().splitlines()[1:]
    assert len(rows) == 4
    gaps = [float(r.split(",")[2]) for r in rows]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_chaplygin_reports(capsys):
    assert main(["chaplygin", "--M0", "2", "--theta0", "30"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "beta0 = 30.000000 deg" in out
    assert "attached discontinuity independent of cone" in out
    assert main(["chaplygin", "--M0", "4", "--theta0", "30"]) == EXIT_OK
    assert "W_C = 0.187500" in capsys.readouterr().out


def test_chaplygin_attached_regime_exit(capsys):
    assert main(["chaplygin", "--M0", "1.5", "--theta0", "30"]) == EXIT_REGIME
    cap = capsys.readouterr()
    assert "beta0 = 41.810315 deg" in cap.out
    assert "RegimeError" in cap.err


def test_exit_domain(capsys):
    assert main(["direct", "--theta0", "95", "--epsilon", "0.01"]) == EXIT_DOMAIN


def test_exit_regime_names_regime(capsys):
    assert main(["direct", "--theta0", "20", "--epsilon", "5"]) == EXIT_REGIME
    err = capsys.readouterr().err
    assert "NoBracket" in err and "regime" in err


def test_exit_io(tmp_path):
    target = tmp_path / "missing" / "sol.json"
    assert main(["chaplygin", "--M0", "4", "--theta0", "30", "--out", str(target)]) == EXIT_IO
    assert not target.parent.exists()


def test_bad_arguments_exit_two():
    with pytest.raises(SystemExit) as info:
        main(["direct", "--theta0", "20"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["sweep", "--theta0", "20", "--eps", "0.02,-0.01"])
    assert info.value.code == 2


def test_inverse_with_oracle(capsys):
    assert main(["inverse", "--beta", "30", "--epsilon", "0.01", "--seed-oracle"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["oracle"]["discrepancy_rad"] < 1e-7
    assert doc["grid"][-1]["u"] == 0.0


def test_measures_csv(capsys):
    assert main(["measures", "--theta0", "20", "--eps", "0.04,0.02"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "family,psi,epsilon,pairing_eps,pairing_limit,gap,rel_gap"
    # 10 families x 5 test functions x 2 epsilons
    assert len(lines) == 1 + 100


def test_atomic_write_leaves_no_temp_files(tmp_path):
    out = tmp_path / "c.txt"
    assert main(["chaplygin", "--M0", "4", "--theta0", "30", "--out", str(out)]) == EXIT_OK
    assert [p.name for p in tmp_path.iterdir()] == ["c.txt"]


def test_module_entry_and_logging(tmp_path):
    env = dict(os.environ, CONICAL_SHOCK_LOG="info")
    out = tmp_path / "s.json"
    proc = subprocess.run(
        [sys.executable, "-m", "conical_shock", "direct", "--theta0", "20", "--epsilon", "0.02", "--out", str(out)],
        capture_output=True, text=True, env=env, check=False,
    )
    assert proc.returncode == 0
    assert "INFO" in proc.stderr
    jsonschema.validate(json.loads(out.read_text()), SCHEMA)
