import json

import pytest

from cantarray import cli
from cantarray.kernel import band_edge_gammas
from cantarray.quadrature import QuadratureError

PRESET = "jap1-calibrated"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def stdout_manifest(err):
    line = [l for l in err.splitlines() if l.startswith("manifest: ")][-1]
    return json.loads(line[len("manifest: "):])


def test_modes_stdout(capsys):
    code, out, err = run(capsys, "modes", "--preset", PRESET)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,beta,omega_rad_s,freq_hz"
    assert len(lines) == 5
    first = lines[1].split(",")
    assert first[0] == "1"
    assert float(first[1]) == pytest.approx(4.7300407449, abs=1e-9)
    m = stdout_manifest(err)
    assert m["subcommand"] == "modes" and m["rows"] == 4


def test_modes_without_geometry_has_nan_frequencies(capsys):
    code, out, _ = run(capsys, "modes")
    assert code == 0
    assert "nan" in out.splitlines()[1]


def test_missing_config_file_is_exit_2(capsys):
    code, _, err = run(capsys, "spectrum", "--config", "no/such/conf.json")
    assert code == 2
    assert "no/such/conf.json" in err


def test_unknown_preset_is_exit_2(capsys):
    code, _, err = run(capsys, "modes", "--preset", "zork")
    assert code == 2
    assert "zork" in err


def test_config_and_preset_together_rejected(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"geometry": {"preset": PRESET}}))
    code, _, err = run(capsys, "spectrum", "--config", str(p),
                       "--preset", PRESET)
    assert code == 2
    assert "not both" in err


def test_spectrum_csv_schema_and_normalization(capsys):
    code, out, err = run(capsys, "spectrum", "--preset", PRESET,
                         "--n-max", "2", "--k-max", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == ("n,k,gamma,omega_rad_s,freq_hz,omega_normalized,"
                        "band_edge_lower,band_edge_upper,valid")
    rows = [l.split(",") for l in lines[1:]]
    assert len(rows) == 4
    first = {c: v for c, v in zip(lines[0].split(","), rows[0])}
    assert first["n"] == "1" and first["k"] == "1"
    assert float(first["omega_normalized"]) == 1.0
    assert first["valid"] == "true"
    # frozen regression for the calibrated preset
    assert float(first["gamma"]) == pytest.approx(0.18760324063691297,
                                                  rel=1e-12)
    m = stdout_manifest(err)
    assert m["config_sha256"] == ("0b087a9e656bce67dfde805f1cb3950a8d"
                                  "218d397509895560cbcccdc96c6d16")


def test_spectrum_json_format(capsys):
    code, out, _ = run(capsys, "spectrum", "--preset", PRESET,
                       "--format", "json", "--n-max", "1", "--k-max", "2")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"columns", "rows"}
    assert len(data["rows"]) == 2
    assert data["rows"][0][data["columns"].index("valid")] is True


def test_output_files_are_byte_identical_across_runs(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        code, _, _ = run(capsys, "spectrum", "--preset", PRESET,
                         "--output", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes().endswith(b"\n")
    assert b"\r" not in a.read_bytes()


def test_manifest_sidecar_schema(capsys, tmp_path):
    out_path = tmp_path / "levels.csv"
    code, _, _ = run(capsys, "spectrum", "--preset", PRESET,
                     "--output", str(out_path))
    assert code == 0
    sidecar = tmp_path / "levels.csv.manifest.json"
    assert sidecar.exists()
    m = json.loads(sidecar.read_text())
    assert set(m) == {"cantarray_version", "subcommand", "config_sha256",
                      "format", "rows", "wall_time_s", "warnings", "output"}
    assert m["output"] == "levels.csv"
    assert m["format"] == "csv"
    assert m["rows"] == len(out_path.read_text().strip().splitlines()) - 1
    # preset geometry is fitted, and the manifest must say so
    assert any("calibrated" in w for w in m["warnings"])


def test_sweep_rows(capsys):
    code, out, _ = run(capsys, "sweep", "--preset", PRESET, "--param", "nu",
                       "--from", "0", "--to", "40", "--points", "3",
                       "--n-max", "1", "--k-max", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "param,value,n,k,gamma,omega_rad_s"
    assert len(lines) == 4
    assert lines[1].startswith("nu,0,")


def test_galerkin_table(capsys):
    code, out, _ = run(capsys, "galerkin", "--preset", PRESET,
                       "--basis-size", "4", "--alpha-max", "1e6")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("alpha,omega_rad_s,dominant_n,participation_1")
    assert lines[0].endswith("participation_4")
    assert len(lines) >= 3


def test_nonlinear_coeffs_rejects_csv(capsys):
    code, _, err = run(capsys, "nonlinear", "coeffs", "--preset", PRESET)
    assert code == 2
    assert "JSON only" in err


def test_nonlinear_coeffs_payload(capsys):
    code, out, _ = run(capsys, "nonlinear", "coeffs", "--preset", PRESET,
                       "--format", "json", "--f1", "1.0", "--f2", "1.0")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"provenance", "selection", "beam_integrals",
                         "cantilever_integrals", "effective_params"}
    eff = data["effective_params"]
    assert eff["mass1_kg"] == pytest.approx(1.74e-14, rel=0.01)
    assert eff["drive_per_force"] == pytest.approx(-4.44e-6, rel=0.01)
    assert len(data["cantilever_integrals"]["mass_overlap"]) == 2
    prov = data["provenance"]
    assert prov["preset"] == PRESET
    assert prov["calibrated"] is True
    assert prov["overlap_quadrature_rtol"] == 1e-9


def test_nonlinear_response_table(capsys, tmp_path):
    cfg = {
        "geometry": {"preset": PRESET},
        "nonlinear": {"c_y": 1e-6, "c_eta": 1e-6, "f1": 1e-9, "f2": 1e-9,
                      "sigma1": {"from": -1e3, "to": 1e3, "points": 3},
                      "sigma2": 0.0},
    }
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg))
    code, out, _ = run(capsys, "nonlinear", "response", "--config", str(p))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "sigma1,sigma2,a1,a2,theta1,theta2,branch,stable_flag"
    assert len(lines) >= 4  # one state per detuning at least
    for line in lines[1:]:
        cells = line.split(",")
        assert cells[-1] == "unknown"
        assert len(cells[-2]) == 2 and set(cells[-2]) <= set("+-0")
        assert float(cells[2]) > 0 and float(cells[3]) > 0


def test_solver_failure_is_exit_3(capsys, monkeypatch):
    def boom(_grid):
        raise QuadratureError("synthetic quadrature breakdown")
    monkeypatch.setattr(cli, "shear_kernel", boom)
    code, _, err = run(capsys, "kernel", "--points", "5")
    assert code == 3
    assert "solver error" in err


def test_modes_shape_table(capsys):
    code, out, _ = run(capsys, "modes", "--n-max", "3", "--samples", "11")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "u,phi_1,phi_2,phi_3"
    assert len(lines) == 12
    first = [float(x) for x in lines[1].split(",")]
    last = [float(x) for x in lines[-1].split(",")]
    # clamped-clamped shapes vanish at both ends
    assert first[0] == 0.0 and last[0] == 1.0
    assert all(abs(v) < 1e-9 for v in first[1:] + last[1:])


def test_kernel_shape_table(capsys):
    code, out, _ = run(capsys, "kernel", "--shape", "1.2", "--points", "21")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "v,chi"
    assert len(lines) == 22
    first = [float(x) for x in lines[1].split(",")]
    assert first == [0.0, 0.0]  # rigid clamp rides the base
    tip = float(lines[-1].split(",")[1])
    assert tip != 0.0


def test_kernel_shape_at_band_edge_is_exit_3(capsys):
    edge = band_edge_gammas(1)[0]
    code, _, err = run(capsys, "kernel", "--shape", "%.17g" % edge)
    assert code == 3
    assert "solver error" in err


def test_sweep_epsilon(capsys, tmp_path):
    cfg = {
        "geometry": {"preset": PRESET},
        "profile": {"kind": "alternating", "length1": 5e-6, "length2": 4e-6,
                    "width1": 2e-7, "width2": 2e-7, "count1": 20,
                    "count2": 20},
    }
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg))
    code, out, _ = run(capsys, "sweep", "--config", str(p),
                       "--param", "epsilon", "--from", "0.6", "--to", "1.0",
                       "--points", "3", "--n-max", "2", "--k-max", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "param,value,n,k,gamma,omega_rad_s"
    assert all(line.startswith("epsilon,") for line in lines[1:])
    values = {line.split(",")[1] for line in lines[1:]}
    assert len(values) == 3


def test_sweep_epsilon_needs_alternating_profile(capsys):
    code, _, err = run(capsys, "sweep", "--preset", PRESET,
                       "--param", "epsilon", "--from", "0.5", "--to", "1.0",
                       "--points", "2")
    assert code == 2
    assert "alternating" in err


def test_kernel_drops_samples_on_band_edges(capsys):
    edge = band_edge_gammas(1)[0]
    # 3 points over [0, 2*edge] puts the middle sample exactly on the pole
    code, out, err = run(capsys, "kernel",
                         "--gamma-max", "%.17g" % (2 * edge),
                         "--points", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3  # header + two surviving samples
    m = stdout_manifest(err)
    assert m["rows"] == 2
    assert any("pole window" in w for w in m["warnings"])
    assert "warning:" in err
