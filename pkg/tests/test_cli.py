import json
import math
import subprocess
import sys

import pytest

from wignerqpi import cli
from wignerqpi.scaling import ConventionUnresolved, resolve_conventions
from wignerqpi.spectra import disk_eigenvalue, spectrum


def run_json(*argv):
    code, out, err = cli.run(list(argv))
    assert code == 0, err
    return json.loads(out)


def write_state(tmp_path, doc, name="state.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def test_spectrum_json_round_trip():
    rec = run_json("spectrum", "--region", "disk", "--radius", "1.5", "--nmax", "6")
    sp = spectrum("disk", 1.5, 6)
    assert [row[1] for row in rec["payload"]["rows"]] == sp.values.tolist()
    assert [row[2] for row in rec["payload"]["rows"]] == sp.errors.tolist()
    assert rec["payload_sha256"] == cli.payload_hash(rec["payload"])
    assert rec["tolerances"] == {"abs_tol": 1e-10, "rel_tol": 1e-10, "max_subdivisions": 2000}
    assert "generated_at" not in rec


def test_spectrum_csv_format():
    code, out, _ = cli.run(["spectrum", "--region", "circle", "--radius", "1", "--nmax", "2", "--format", "csv"])
    assert code == 0
    assert out == "n,value,error_estimate\n0,0.735758882343,0\n1,0.735758882343,0\n2,-0.735758882343,0\n"


def test_timestamp_outside_hashed_payload():
    a = run_json("spectrum", "--region", "circle", "--radius", "1", "--nmax", "3", "--timestamp")
    b = run_json("spectrum", "--region", "circle", "--radius", "1", "--nmax", "3")
    assert "generated_at" in a
    assert a["payload_sha256"] == b["payload_sha256"]


def test_tolerance_flags_are_recorded():
    rec = run_json("spectrum", "--region", "disk", "--radius", "1", "--nmax", "1", "--abs-tol", "1e-8", "--rel-tol", "1e-9")
    assert rec["tolerances"]["abs_tol"] == 1e-8
    assert rec["tolerances"]["rel_tol"] == 1e-9


def test_bounds_record():
    rec = run_json("bounds", "--region", "disk", "--radius", "1", "--nmax", "200")
    pay = rec["payload"]
    assert (pay["arg_lower"], pay["arg_upper"]) == (1, 0)
    assert pay["lower"] == pytest.approx(1 - 3 / math.e, abs=1e-12)
    assert pay["certified"] is False


def test_qpi_fock_weights(tmp_path):
    rec = run_json("qpi", "--region", "disk", "--radius", "1", "--state", write_state(tmp_path, {"fock_weights": [1]}))
    assert rec["payload"]["spectral"] == pytest.approx(0.6321205588285577, abs=1e-12)
    rec = run_json("qpi", "--region", "disk", "--radius", "1", "--state", write_state(tmp_path, {"fock_weights": [0.5, 0.5]}))
    assert rec["payload"]["spectral"] == pytest.approx(0.26424111765711533, abs=1e-12)
    assert "oracle" not in rec["payload"]


def test_qpi_hermite_reports_both_routes(tmp_path):
    rec = run_json("qpi", "--region", "disk", "--radius", "1", "--state", write_state(tmp_path, {"hermite_coeffs": [1, 0]}))
    pay = rec["payload"]
    assert pay["spectral"] == pytest.approx(1 - 1 / math.e, abs=1e-12)
    assert pay["oracle"] == pytest.approx(pay["spectral"], abs=1e-10)
    assert pay["discrepancy"] < 1e-6
    assert pay["oracle_error_estimate"] >= 0


def test_qpi_hermite_on_circle_has_no_oracle(tmp_path):
    rec = run_json("qpi", "--region", "circle", "--radius", "1", "--state", write_state(tmp_path, {"hermite_coeffs": [0.6, 0.8]}))
    assert rec["payload"]["oracle"] is None
    assert rec["payload"]["spectral"] == pytest.approx(0.36 * 0.7357588823428847 + 0.64 * 0.7357588823428847)


@pytest.mark.parametrize(
    "doc",
    [
        {"fock_weights": [0.5, 0.6]},
        {"fock_weights": [1.2, -0.2]},
        {"hermite_coeffs": [1, 1]},
        {"fock_weights": [1], "hermite_coeffs": [1]},
        {},
        {"fock_weights": [1], "extra": 3},
        {"fock_weights": "1"},
        {"fock_weights": []},
        {"hermite_coeffs": [True]},
        [1, 0],
        "not json {",
    ],
)
def test_malformed_state_file(tmp_path, doc):
    path = write_state(tmp_path, doc if isinstance(doc, str) else json.dumps(doc))
    code, out, err = cli.run(["qpi", "--region", "disk", "--radius", "1", "--state", path])
    assert code == cli.EXIT_USAGE
    assert out == "" and err.startswith("error:")


def test_missing_state_file(tmp_path):
    code, _, err = cli.run(["qpi", "--region", "disk", "--radius", "1", "--state", str(tmp_path / "nope.json")])
    assert code == cli.EXIT_USAGE


def test_state_tolerance_1e9(tmp_path):
    rec = run_json("qpi", "--region", "circle", "--radius", "1", "--state", write_state(tmp_path, {"fock_weights": [0.5, 0.5 + 5e-10]}))
    assert math.isfinite(rec["payload"]["spectral"])


def test_scale_check_record():
    rec = run_json("scale-check", "--radius", "1", "--xi", "2", "--mmax", "4")
    pay = rec["payload"]
    assert pay["columns"] == ["m", "direct", "series", "discrepancy", "truncation", "tail_estimate"]
    assert all(row[3] < 1e-7 for row in pay["rows"])
    assert rec["conventions_hash"] == resolve_conventions().hash
    assert pay["conventions"]["direction"] == "inverted"


def test_scale_check_disk():
    rec = run_json("scale-check", "--region", "disk", "--radius", "0.5", "--xi", "0.5", "--mmax", "3")
    for m, direct, series, disc, _, _ in rec["payload"]["rows"]:
        assert direct == pytest.approx(disk_eigenvalue(m, 0.25), abs=1e-12)
        assert disc < 1e-7


@pytest.mark.parametrize(
    "argv",
    [
        ["scale-check", "--radius", "1", "--xi", "1"],
        ["scale-check", "--radius", "1", "--xi", "-2"],
        ["scale-check", "--radius", "1", "--xi", "2", "--mmax", "5", "--trunc", "3"],
        ["spectrum", "--region", "disk", "--radius", "0", "--nmax", "3"],
        ["spectrum", "--region", "disk", "--radius", "1", "--nmax", "-1"],
        ["bounds", "--region", "disk", "--radius", "1", "--nmax", "0"],
        ["spectrum", "--region", "square", "--radius", "1", "--nmax", "3"],
        ["spectrum", "--region", "disk"],
        ["wigner-grid"],
        ["wigner-grid", "--fock", "0", "--step", "0"],
        ["spectrum", "--region", "disk", "--radius", "1", "--nmax", "1", "--abs-tol", "-1"],
    ],
)
def test_usage_errors(argv):
    code, _, _ = cli.run(argv)
    assert code == cli.EXIT_USAGE


def test_tolerance_not_reached_exit_code():
    code, out, err = cli.run(
        ["spectrum", "--region", "disk", "--radius", "6", "--nmax", "40", "--max-subdivisions", "1", "--abs-tol", "1e-15", "--rel-tol", "1e-15"]
    )
    assert code == cli.EXIT_TOLERANCE
    assert out == "" and "error estimate" in err


def test_unresolved_conventions_exit_code(monkeypatch):
    def fail(*a, **k):
        raise ConventionUnresolved("no candidate passed")

    monkeypatch.setattr(cli, "resolve_conventions", fail)
    code, _, err = cli.run(["scale-check", "--radius", "1", "--xi", "2"])
    assert code == cli.EXIT_CONVENTION
    assert "no candidate" in err


def test_wigner_grid_csv_and_summary():
    code, out, err = cli.run(["wigner-grid", "--fock", "1", "--q-range", "-1", "1", "--p-range", "0", "0", "--step", "1"])
    assert code == 0
    assert out.splitlines() == ["q,p,W", "-1,0,0.117099663049", "0,0,-0.318309886184", "1,0,0.117099663049"]
    assert "within_bound=true" in err


def test_wigner_grid_json_from_state_file(tmp_path):
    path = write_state(tmp_path, {"hermite_coeffs": [0.6, 0.8]})
    rec = run_json("wigner-grid", "--state", path, "--step", "0.5", "--q-range", "-2", "2", "--p-range", "-2", "2", "--format", "json")
    summary = rec["payload"]["summary"]
    assert summary["within_bound"] is True
    assert -1 / math.pi <= summary["min"] <= summary["max"] <= 1 / math.pi
    assert len(rec["payload"]["rows"]) == 81


def test_conventions_command(tmp_path):
    target = tmp_path / "CONVENTIONS.txt"
    code, out, _ = cli.run(["conventions", "--write", str(target)])
    assert code == 0
    assert target.read_text() == out == resolve_conventions().report()


def _subprocess(*argv):
    return subprocess.run([sys.executable, "-m", "wignerqpi", *argv], capture_output=True)


def test_subprocess_determinism():
    argv = ("bounds", "--region", "circle", "--radius", "2", "--nmax", "50")
    first, second = _subprocess(*argv), _subprocess(*argv)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    assert b"\r" not in first.stdout


def test_subprocess_exit_codes():
    assert _subprocess("scale-check", "--radius", "1", "--xi", "1").returncode == 2
    assert _subprocess("frobnicate").returncode == 2


def test_version_flag():
    res = _subprocess("--version")
    assert res.returncode == 0 and res.stdout.strip().endswith(b"0.1.0")
