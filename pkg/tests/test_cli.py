"""End-to-end CLI runs: outputs, formats, determinism, and exit codes."""
import json
import math
import subprocess
import sys

import pytest

from qboson.cli import main

ANHARMONIC = {
    "bosons": 1, "qubits_per_boson": 3, "radius": 2.0,
    "potential": [{"coeff": 1.0, "exponents": [2]}, {"coeff": 1.0, "exponents": [4]}],
}
FOCK_DOUBLE_WELL = {
    "bosons": 1, "qubits_per_boson": 2, "basis": "fock",
    "potential": [{"coeff": 1.0, "exponents": [0]}, {"coeff": 2.0, "exponents": [1]},
                  {"coeff": 3.0, "exponents": [2]}, {"coeff": 2.0, "exponents": [3]},
                  {"coeff": 1.0, "exponents": [4]}],
}


@pytest.fixture
def spec_file(tmp_path):
    def write(doc, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)
    return write


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


class TestTable1:
    def test_small_range_csv(self, capsys):
        code, out = run_cli(["table1", "--q-max", "5"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "Q,Lambda,n_pauli_x,n_pauli_p,formula,match"
        assert lines[5].split(",") == ["5", "32", "80", "80", "80", "True"]

    def test_json_format(self, capsys):
        code, out = run_cli(["table1", "--q-max", "3", "--format", "json"], capsys)
        rows = json.loads(out)["rows"]
        assert [r["n_pauli_x"] for r in rows] == [1, 4, 12]
        assert all(r["match"] for r in rows)

    def test_deterministic_output(self, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for p in paths:
            assert main(["table1", "--q-max", "4", "--out", str(p)]) == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestCount:
    def test_coordinate_raw_counts(self, spec_file, capsys):
        path = spec_file({**ANHARMONIC, "potential": [{"coeff": 1.0, "exponents": [4]}]})
        code, out = run_cli(["count", path], capsys)
        assert code == 0
        row = out.strip().splitlines()[1].split(",")
        assert row[0] == "3" and row[4] == "81"  # raw = Q^4

    def test_fock_sweep_increasing(self, spec_file, capsys):
        path = spec_file(FOCK_DOUBLE_WELL)
        code, out = run_cli(["count", path, "--q-min", "2", "--q-max", "6",
                             "--format", "json"], capsys)
        assert code == 0
        ns = [r["n_pauli"] for r in json.loads(out)["rows"]]
        assert ns == sorted(ns) and len(set(ns)) == len(ns)
        assert ns[0] == 9

    def test_malformed_spec_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code = main(["count", str(bad)])
        assert code == 2
        assert "line" in capsys.readouterr().err

    def test_missing_file_exit_2(self, capsys):
        assert main(["count", "/nonexistent/spec.json"]) == 2


class TestFit:
    def test_exact_series(self, tmp_path, capsys):
        csv_path = tmp_path / "series.csv"
        rows = ["Q,n_pauli"] + [f"{q},{q * 2 ** (q - 1)}" for q in range(6, 15)]
        csv_path.write_text("\n".join(rows) + "\n")
        code, out = run_cli(["fit", str(csv_path), "--format", "json"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["a"] == pytest.approx(math.log(2), rel=1e-9)
        assert doc["residual_rms"] < 1e-12

    def test_count_output_feeds_fit(self, spec_file, tmp_path, capsys):
        path = spec_file(FOCK_DOUBLE_WELL)
        series_path = tmp_path / "series.csv"
        assert main(["count", path, "--q-min", "2", "--q-max", "6",
                     "--out", str(series_path)]) == 0
        code, out = run_cli(["fit", str(series_path), "--format", "json"], capsys)
        assert code == 0
        assert json.loads(out)["rows_fitted"] == 5

    def test_too_few_rows_exit_2(self, tmp_path, capsys):
        csv_path = tmp_path / "short.csv"
        csv_path.write_text("Q,n_pauli\n2,4\n3,12\n4,32\n")
        assert main(["fit", str(csv_path)]) == 2


class TestTrotter:
    def test_report_and_circuit_file(self, spec_file, tmp_path, capsys):
        path = spec_file(ANHARMONIC)
        circ_path = tmp_path / "circuit.txt"
        code, out = run_cli(["trotter", path, "--time", "1.0", "--steps", "4",
                             "--circuit-out", str(circ_path), "--format", "json"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["steps"] == 4
        assert set(doc["layers"]) == {"potential", "qft", "kinetic", "inverse_qft"}
        text = circ_path.read_text()
        assert text.startswith("# circuit n_qubits=3")

    def test_verify_prints_halving_ratio(self, spec_file, capsys):
        path = spec_file(ANHARMONIC)
        code, out = run_cli(["trotter", path, "--time", "1.0", "--steps", "16",
                             "--verify", "--format", "json"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert 0.4 <= doc["halving_ratio"] <= 0.6
        assert doc["trotter_error"] < doc["trotter_error_half_steps"]

    def test_verify_tol_exit_4(self, spec_file, capsys):
        path = spec_file(ANHARMONIC)
        code = main(["trotter", path, "--time", "1.0", "--steps", "4",
                     "--verify", "--tol", "1e-12"])
        assert code == 4

    def test_fock_spec_rejected(self, spec_file, capsys):
        path = spec_file(FOCK_DOUBLE_WELL)
        code = main(["trotter", path, "--time", "1.0", "--steps", "2"])
        assert code == 2  # no radius, coordinate pathway unavailable


class TestBlockenc:
    def test_report(self, spec_file, capsys):
        path = spec_file(ANHARMONIC)
        code, out = run_cli(["blockenc", path, "--format", "json"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["ancilla_count"] == 3
        assert doc["terms_potential"] + doc["terms_kinetic"] == doc["n_terms"]
        assert doc["lambda"] > 0

    def test_verify_passes(self, spec_file, capsys):
        path = spec_file(ANHARMONIC)
        code, out = run_cli(["blockenc", path, "--verify", "--format", "json"], capsys)
        assert code == 0
        assert json.loads(out)["verify_error"] < 1e-10

    def test_verify_fail_exit_4(self, spec_file, capsys):
        path = spec_file(ANHARMONIC)
        assert main(["blockenc", path, "--verify", "--tol", "1e-18"]) == 4


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run([sys.executable, "-m", "qboson.cli", "table1", "--q-max", "2"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.splitlines()[1].startswith("1,2,1,1,1,True")

    def test_usage_error_exit_2(self):
        proc = subprocess.run([sys.executable, "-m", "qboson.cli", "trotter"],
                              capture_output=True, text=True)
        assert proc.returncode == 2
