import json
import subprocess

import numpy as np
import pytest

from numrad.cli import format_matrix, main, parse_matrix_text
from numrad.io import MatrixFileError, load_matrix, matrix_from_document, save_matrix

from conftest import random_complex, shift_matrix


@pytest.fixture
def shift_file(tmp_path):
    path = tmp_path / "shift4.json"
    save_matrix(path, shift_matrix(4))
    return str(path)


@pytest.fixture
def nilpotent_22_file(tmp_path):
    path = tmp_path / "a22.json"
    save_matrix(path, np.array([[0.0, 2.2], [0.0, 0.0]]))
    return str(path)


class TestMatrixFile:
    def test_round_trip(self, tmp_path, rng):
        A = random_complex(rng, 3, 5)
        path = tmp_path / "m.json"
        save_matrix(path, A)
        assert np.array_equal(load_matrix(path), A)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"version": "1", "dim_rows": 2,\n  broken')
        with pytest.raises(MatrixFileError, match=r"line \d+, column \d+"):
            load_matrix(path)

    def test_wrong_entry_count(self):
        with pytest.raises(MatrixFileError, match="expected 4 entries"):
            matrix_from_document(
                {"version": "1", "dim_rows": 2, "dim_cols": 2, "entries": [[1, 0]]}
            )

    def test_bad_entry_shape(self):
        with pytest.raises(MatrixFileError, match="entry 1"):
            matrix_from_document(
                {"version": "1", "dim_rows": 1, "dim_cols": 2, "entries": [[1, 0], [1]]}
            )

    def test_bad_version(self):
        with pytest.raises(MatrixFileError, match="version"):
            matrix_from_document({"version": "2", "dim_rows": 1, "dim_cols": 1, "entries": [[1, 0]]})

    def test_text_round_trip(self, rng):
        A = random_complex(rng, 3)
        B = parse_matrix_text(format_matrix(A))
        assert np.abs(A - B).max() <= 1e-11


class TestRadiusCommand:
    def test_golden_shift(self, shift_file, capsys):
        assert main(["radius", shift_file]) == 0
        out = capsys.readouterr().out
        value = float(out.splitlines()[0].split("=")[1])
        assert 0.8090169 <= value <= 0.8090170

    def test_json_format(self, shift_file, capsys):
        assert main(["radius", shift_file, "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert set(doc) == {"radius", "norm", "argmax_angle"}
        assert abs(doc["norm"] - 1.0) <= 1e-9

    def test_missing_file(self, capsys):
        assert main(["radius", "/nonexistent.json"]) == 2


class TestRangeCommand:
    def test_csv_output(self, tmp_path, shift_file, capsys):
        out = tmp_path / "pts.csv"
        assert main(["range", shift_file, "--samples", "32", "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "re,im"
        assert len(lines) == 33
        pts = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
        radius = np.hypot(pts[:, 0], pts[:, 1]).max()
        assert radius <= 0.8090170 + 1e-6


class TestCertifyCommand:
    def test_refutation_exit_code(self, nilpotent_22_file, capsys):
        code = main(["certify", nilpotent_22_file, "--theorem", "2", "--n", "8"])
        assert code == 1
        out = capsys.readouterr().out
        assert "refuted at n" in out

    def test_pass_exit_code(self, tmp_path, capsys):
        path = tmp_path / "half.json"
        save_matrix(path, 0.5 * np.eye(2))
        assert main(["certify", str(path), "--theorem", "1", "--n", "4"]) == 0

    def test_json_schema(self, tmp_path, capsys):
        path = tmp_path / "half.json"
        save_matrix(path, 0.5 * np.eye(2))
        main(["certify", str(path), "--theorem", "2", "--n", "3", "--format", "json"])
        doc = json.loads(capsys.readouterr().out)
        assert doc["overall"] is True and doc["refuting_n"] is None
        for row in doc["rows"]:
            assert set(row) == {"claim", "n", "min_eigenvalue", "verdict", "tolerance"}

    def test_boundary_case_passes(self, tmp_path, capsys):
        path = tmp_path / "b.json"
        save_matrix(path, np.array([[0.0, 2.0], [0.0, 0.0]]))
        assert main(["certify", str(path), "--theorem", "2", "--n", "8", "--cap", "12"]) == 0


class TestAndoCommand:
    def test_writes_witness_files(self, tmp_path, capsys):
        path = tmp_path / "a.json"
        save_matrix(path, np.array([[0.0, 1.6], [0.0, 0.0]]))  # radius 0.8
        prefix = str(tmp_path / "out")
        assert main(["ando", str(path), "--out-prefix", prefix]) == 0
        H = load_matrix(f"{prefix}.H.json")
        X = load_matrix(f"{prefix}.X.json")
        Y = load_matrix(f"{prefix}.Y.json")
        assert H.shape == (2, 2) and X.shape == (4, 2) and Y.shape == (4, 2)
        residuals = json.loads((tmp_path / "out.residuals.json").read_text())
        assert residuals["compression"] <= 1e-7

    def test_radius_above_one_exits_1(self, tmp_path, capsys):
        path = tmp_path / "big.json"
        save_matrix(path, np.array([[0.0, 3.0], [0.0, 0.0]]))
        assert main(["ando", str(path), "--out-prefix", str(tmp_path / "x")]) == 1


class TestDilateCommand:
    def test_writes_unitary(self, tmp_path, shift_file, capsys):
        out = tmp_path / "u.json"
        assert main(["dilate", shift_file, "--horizon", "3", "--out", str(out)]) == 0
        U = load_matrix(out)
        assert U.shape == (16, 16)
        assert np.linalg.norm(U.conj().T @ U - np.eye(16)) <= 1e-8

    def test_expansion_exits_1(self, tmp_path, capsys):
        path = tmp_path / "e.json"
        save_matrix(path, 2.0 * np.eye(2))
        assert main(["dilate", str(path), "--horizon", "2", "--out", str(tmp_path / "u.json")]) == 1


class TestVonNeumannCommand:
    def test_holds(self, shift_file, capsys):
        assert main(["vonneumann", shift_file, "--poly", "0,0,1"]) == 0
        out = capsys.readouterr().out
        assert "inequality holds: True" in out

    def test_complex_coefficients(self, shift_file, capsys):
        assert main(["vonneumann", shift_file, "--poly", "1+2j,0.5,0,1j"]) == 0

    def test_bad_poly(self, shift_file, capsys):
        assert main(["vonneumann", shift_file, "--poly", "1,x"]) == 2


class TestSweepCommand:
    def test_clean_sweep(self, capsys):
        code = main(
            ["sweep", "--seed", "5", "--count", "4", "--dim", "3",
             "--target", "radius=0.9", "--n-max", "5", "--no-ando"]
        )
        assert code == 0
        assert "disagreements: 0" in capsys.readouterr().out

    def test_bad_target(self, capsys):
        assert main(["sweep", "--seed", "1", "--count", "1", "--dim", "2", "--target", "x=1"]) == 2

    def test_json_output(self, capsys):
        code = main(
            ["sweep", "--seed", "5", "--count", "2", "--dim", "2",
             "--target", "norm=0.5", "--n-max", "3", "--no-ando", "--format", "json"]
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["disagreements"] == 0
        assert len(doc["rows"]) == 2


class TestGoldenCommand:
    def test_exit_zero(self, capsys):
        assert main(["golden"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
        assert "0.809016994" in out


class TestToleranceEnv:
    def test_env_override(self, tmp_path, capsys, monkeypatch):
        # a slightly indefinite matrix passes under a loose tolerance
        path = tmp_path / "m.json"
        save_matrix(path, (1.0 + 1e-7) * np.eye(2))
        monkeypatch.setenv("NUMRAD_TOL", "1e-3")
        assert main(["certify", str(path), "--theorem", "1", "--n", "2", "--cap", "2"]) == 0
        monkeypatch.setenv("NUMRAD_TOL", "1e-12")
        assert main(["certify", str(path), "--theorem", "1", "--n", "2", "--cap", "2"]) == 1

    def test_flag_wins(self, tmp_path, capsys, monkeypatch):
        path = tmp_path / "m.json"
        save_matrix(path, (1.0 + 1e-7) * np.eye(2))
        monkeypatch.setenv("NUMRAD_TOL", "1e-12")
        assert main(["certify", str(path), "--theorem", "1", "--n", "2", "--cap", "2",
                     "--tol", "1e-3"]) == 0


class TestConsoleEntryPoint:
    def test_subprocess_help(self):
        proc = subprocess.run(["numrad", "--help"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert "certify" in proc.stdout

    def test_usage_error_exit_2(self):
        proc = subprocess.run(["numrad", "certify"], capture_output=True, text=True)
        assert proc.returncode == 2

    def test_pure_python_backend_selectable(self):
        proc = subprocess.run(
            ["numrad", "golden"],
            capture_output=True, text=True,
            env={"PATH": "/usr/bin:/usr/local/bin", "NUMRAD_PURE_PYTHON": "1"},
        )
        assert proc.returncode == 0
