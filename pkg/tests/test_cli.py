import json
import re

import pytest

import ringvac.rotation
from ringvac.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def extract(out: str, name: str) -> float:
    m = re.search(rf"^{name} = (\S+)", out, re.MULTILINE)
    assert m, f"{name} not found in output:\n{out}"
    return float(m.group(1))


class TestSpectrumCommand:
    def test_rest_free_integers(self, capsys):
        code, out, _ = run_cli(capsys, "spectrum", "--beta", "0", "--lambda", "0",
                               "--alpha-max", "2.5")
        assert code == 0
        alphas = re.findall(r"alpha_\d+ = (\S+)", out)
        assert [float(a) for a in alphas] == pytest.approx([1.0, 1.0, 2.0, 2.0], abs=1e-9)

    def test_doppler_window(self, capsys):
        code, out, _ = run_cli(capsys, "spectrum", "--beta", "0.5", "--lambda", "0",
                               "--alpha-max", "2")
        assert code == 0
        alphas = [float(a) for a in re.findall(r"alpha_\d+ = (\S+)", out)]
        assert alphas == pytest.approx([0.5, 1.0, 1.5, 1.5, 2.0], abs=1e-9)

    def test_check_mode(self, capsys):
        code, out, _ = run_cli(capsys, "spectrum", "--beta", "0", "--lambda", "2",
                               "--alpha-max", "1.2", "--check")
        assert code == 0
        first = float(re.search(r"alpha_01 = (\S+)", out).group(1))
        assert 0.38 < first < 0.39
        assert "check passed" in out

    def test_every_line_has_unit(self, capsys):
        _, out, _ = run_cli(capsys, "spectrum", "--beta", "0.3", "--lambda", "5",
                            "--alpha-max", "2")
        for line in out.splitlines():
            if line.startswith("alpha_"):
                assert "+-" in line and "(omega R / c)" in line

    def test_dirichlet_coupling(self, capsys):
        code, out, _ = run_cli(capsys, "spectrum", "--beta", "0.5", "--lambda", "inf",
                               "--alpha-max", "1")
        assert code == 0
        alphas = [float(a) for a in re.findall(r"alpha_\d+ = (\S+)", out)]
        assert alphas == pytest.approx([0.375, 0.75], abs=0)


class TestEnergyCommand:
    def test_free_limit(self, capsys):
        code, out, _ = run_cli(capsys, "energy", "--beta", "0", "--lambda", "0")
        assert code == 0
        assert extract(out, "field_energy") == pytest.approx(-1 / 12, abs=1e-7)

    def test_strong_coupling(self, capsys):
        code, out, _ = run_cli(capsys, "energy", "--beta", "0.5", "--lambda", "1e6")
        assert code == 0
        assert extract(out, "field_energy") == pytest.approx(-0.015625, abs=1e-4)

    def test_stationary_frame(self, capsys):
        code, out, _ = run_cli(capsys, "energy", "--beta", "0.5", "--lambda", "0",
                               "--inertia", "2", "--frame", "stationary")
        assert code == 0
        assert extract(out, "stationary_energy") == pytest.approx(1 / 6, abs=1e-7)
        assert extract(out, "ell_total") == pytest.approx(1.0, abs=1e-7)

    def test_units_and_errors_on_every_value(self, capsys):
        _, out, _ = run_cli(capsys, "energy", "--beta", "0.2", "--lambda", "3",
                            "--inertia", "1", "--frame", "stationary")
        value_lines = [l for l in out.splitlines() if not l.startswith("#")]
        assert len(value_lines) == 6
        for line in value_lines:
            assert "+-" in line
            assert "(hbar" in line

    def test_domain_error_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "energy", "--beta", "1.2", "--lambda", "1")
        assert code == 2
        assert "error" in err

    def test_negative_coupling_rejected(self, capsys):
        code, _, err = run_cli(capsys, "energy", "--beta", "0", "--lambda", "-3")
        assert code == 2
        assert "lambda" in err


class TestSweepCommand:
    def test_csv_golden_shape(self, capsys, tmp_path):
        out_file = tmp_path / "table.csv"
        code, _, _ = run_cli(capsys, "sweep", "--quantity", "ellzp",
                             "--beta-grid", "0:0.9:4", "--lambda-list", "0.5,2",
                             "--out", str(out_file))
        assert code == 0
        lines = out_file.read_text().splitlines()
        header = [l for l in lines if l.startswith("#")]
        data = [l for l in lines if l and not l.startswith("#") and not l.startswith("beta")]
        assert any("quantity: ellzp (hbar)" in l for l in header)
        assert any("tolerance" in l for l in header)
        assert len(data) == 8
        for row in data:
            assert len(row.split(",")) == 4

    def test_csv_row_order_lexicographic(self, capsys, tmp_path):
        out_file = tmp_path / "t.csv"
        run_cli(capsys, "sweep", "--quantity", "ellzp", "--beta-grid", "0.5,0",
                "--lambda-list", "2,0.5", "--out", str(out_file))
        rows = [l.split(",") for l in out_file.read_text().splitlines()
                if l and not l.startswith(("#", "beta"))]
        keys = [(float(r[1]), float(r[0])) for r in rows]
        assert keys == sorted(keys)

    def test_determinism_byte_identical(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["sweep", "--quantity", "energy", "--beta-grid", "0,0.4",
                "--lambda-list", "1,inf"]
        run_cli(capsys, *args, "--out", str(a))
        run_cli(capsys, *args, "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_jobs_same_bytes(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["sweep", "--quantity", "izp", "--beta-grid", "0:0.6:3",
                "--lambda-list", "2"]
        run_cli(capsys, *args, "--out", str(a))
        run_cli(capsys, *args, "--jobs", "3", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_json_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--quantity", "izp",
                               "--beta-grid", "0,0.5", "--lambda-list", "2,inf",
                               "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["quantity"] == "izp"
        assert doc["unit"] == "hbar R / c"
        assert doc["lambda_list"] == [2.0, "inf"]
        assert len(doc["rows"]) == 4
        inf_rows = [r for r in doc["rows"] if r["lambda_hat"] == "inf"]
        assert all(r["value"] == -1 / 24 for r in inf_rows)

    def test_env_tolerance_echoed(self, capsys, monkeypatch):
        monkeypatch.setenv("RINGVAC_TOL", "1e-7")
        code, out, _ = run_cli(capsys, "sweep", "--quantity", "ellzp",
                               "--beta-grid", "0.3", "--lambda-list", "2")
        assert code == 0
        assert "tolerance: 1.000000e-07 (RINGVAC_TOL)" in out

    def test_flag_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("RINGVAC_TOL", "1e-7")
        _, out, _ = run_cli(capsys, "sweep", "--quantity", "ellzp",
                            "--beta-grid", "0.3", "--lambda-list", "2",
                            "--tol", "1e-5")
        assert "tolerance: 1.000000e-05 (flag)" in out

    def test_plot_renders_png(self, capsys, tmp_path):
        png = tmp_path / "fig.png"
        code, _, _ = run_cli(capsys, "sweep", "--quantity", "izp",
                             "--beta-grid", "0:0.8:3", "--lambda-list", "2,inf",
                             "--plot", str(png), "--out", str(tmp_path / "t.csv"))
        assert code == 0
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_strong_coupling_rows_flat(self, capsys, tmp_path):
        out_file = tmp_path / "izp.csv"
        run_cli(capsys, "sweep", "--quantity", "izp", "--beta-grid", "0:0.95:5",
                "--lambda-list", "1e6", "--out", str(out_file))
        rows = [l.split(",") for l in out_file.read_text().splitlines()
                if l and not l.startswith(("#", "beta"))]
        for r in rows:
            assert float(r[2]) == pytest.approx(-1 / 24, abs=1e-3)

    def test_ellzp_zero_at_rest(self, capsys):
        _, out, _ = run_cli(capsys, "sweep", "--quantity", "ellzp",
                            "--beta-grid", "0", "--lambda-list", "0.5,2,10")
        rows = [l.split(",") for l in out.splitlines()
                if l and not l.startswith(("#", "beta"))]
        assert all(float(r[2]) == 0.0 for r in rows)

    def test_bad_quantity_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--quantity", "bogus"])
        assert exc.value.code == 2

    def test_bad_grid_spec(self, capsys):
        code, _, err = run_cli(capsys, "sweep", "--beta-grid", "0:1", "--lambda-list", "2")
        assert code == 2
        assert "grid" in err


class TestVerifyCommand:
    def test_fast_level_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--level", "fast")
        assert code == 0
        assert "10/10 checks passed" in out
        assert "FAIL" not in out

    def test_full_level_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--level", "full")
        assert code == 0
        assert "14/14 checks passed" in out

    def test_injected_sign_bug_is_caught(self, capsys, monkeypatch):
        # negative control: flip the angular-momentum integrand and the
        # energy-derivative consistency oracle must fail
        true_integrand = ringvac.rotation.ell_zp_integrand
        monkeypatch.setattr(ringvac.rotation, "ell_zp_integrand",
                            lambda x, p: -true_integrand(x, p))
        code, out, _ = run_cli(capsys, "verify", "--level", "fast")
        assert code == 3
        assert re.search(r"\[FAIL\] ell_energy_consistency", out)

    def test_scaling_bug_is_caught(self, capsys, monkeypatch):
        true_integrand = ringvac.rotation.ell_zp_integrand
        monkeypatch.setattr(ringvac.rotation, "ell_zp_integrand",
                            lambda x, p: 1.01 * true_integrand(x, p))
        code, out, _ = run_cli(capsys, "verify", "--level", "fast")
        assert code == 3


class TestTransformCommand:
    def test_zero_momentum_is_rest(self, capsys):
        code, out, _ = run_cli(capsys, "transform", "--ell", "0", "--lambda", "5",
                               "--inertia", "1")
        assert code == 0
        assert extract(out, "beta") == pytest.approx(0.0, abs=1e-9)
        assert "ground_state_nonrotating = yes" in out

    def test_strong_coupling_halfbeta(self, capsys):
        code, out, _ = run_cli(capsys, "transform", "--ell", "0.479166",
                               "--lambda", "1e6", "--inertia", "1")
        assert code == 0
        assert extract(out, "beta") == pytest.approx(0.5, abs=1e-5)

    def test_dirichlet_closed_form(self, capsys):
        want = 0.5 * (1 - 1 / 24)
        code, out, _ = run_cli(capsys, "transform", "--ell", str(want),
                               "--lambda", "inf", "--inertia", "1")
        assert code == 0
        assert extract(out, "beta") == pytest.approx(0.5, abs=1e-10)

    def test_out_of_range_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "transform", "--ell", "10", "--lambda", "1",
                               "--inertia", "1")
        assert code == 2
        assert "attainable" in err

    def test_model_violation_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "transform", "--ell", "0.001", "--lambda", "2",
                               "--inertia", "0.034")
        assert code == 4
        assert "monotone" in err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
