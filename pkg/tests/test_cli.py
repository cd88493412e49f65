import json

import numpy as np
import pytest

from weberbeams.cli import (
    CSV_HEADER,
    count_nodes,
    main,
    mirror_asymmetry,
    pgm_bytes,
    symmetric_axis,
)
from weberbeams.config import ConfigError, RunConfig, load_config


def read_csv(path):
    lines = path.read_text().splitlines()
    return lines[0], np.array([[float(x) for x in l.split(",")] for l in lines[1:]])


def test_smoke_grid(tmp_path, capsys):
    out = tmp_path / "f.csv"
    assert main(["field-map", "--grid-n", "4", "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == CSV_HEADER
    assert rows.shape == (16, 11)
    # y-outer, x-inner
    assert np.all(rows[:4, 1] == rows[0, 1]) and np.all(np.diff(rows[:4, 0]) > 0)


def test_field_map_symmetry_and_pgm(tmp_path, capsys):
    out, img = tmp_path / "f.csv", tmp_path / "f.pgm"
    rc = main(["field-map", "--parity", "odd", "--a", "-2", "--kz-ratio", "0.995", "--amp-te", "1,0",
               "--grid-n", "32", "--out", str(out), "--pgm", str(img), "--json"])
    assert rc == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["mirror_asymmetry"] <= 1e-10
    assert summary["x_axis_nodes"]["stable"]
    _, rows = read_csv(out)
    I = rows[:, 8].reshape(32, 32)
    assert mirror_asymmetry(I) <= 1e-10
    data = img.read_bytes()
    assert data.startswith(b"P5\n32 32\n255\n") and len(data) == len(b"P5\n32 32\n255\n") + 1024


def test_csv_is_deterministic_across_threads(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["field-map", "--grid-n", "24", "--out", str(a), "--threads", "1"])
    main(["field-map", "--grid-n", "24", "--out", str(b), "--threads", "3"])
    assert a.read_bytes() == b.read_bytes()


def test_uv_plane(tmp_path):
    out = tmp_path / "uv.csv"
    assert main(["field-map", "--grid-n", "16", "--plane", "uv", "--out", str(out)]) == 0
    _, rows = read_csv(out)
    assert rows.shape == (256, 11)


def test_zero_amplitudes_rejected(capsys):
    assert main(["field-map", "--amp-te", "0,0", "--amp-tm", "0,0"]) == 2
    assert "both be zero" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "nonsense"],
    ["field-map", "--kz-ratio", "1.2"],
    ["field-map", "--extent", "-1"],
    ["field-map", "--amp-te", "1"],
    ["teleport"],
    ["field-map", "--config", "/nonexistent/cfg.json"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2


def test_unwritable_output(capsys):
    assert main(["field-map", "--grid-n", "4", "--out", "/nonexistent/dir/f.csv"]) == 2


def test_verify_ode_suite(tmp_path, capsys):
    report = tmp_path / "r.json"
    assert main(["verify", "--suite", "ode", "--a", "0", "--out", str(report)]) == 0
    doc = json.loads(report.read_text())
    assert doc["passed"] and doc["suites"][0]["name"] == "ode"
    assert doc["suites"][0]["tol"] == 1e-8
    assert doc["config"]["a"] == 0.0 and doc["version"]
    assert "runtime" not in doc["suites"][0]


def test_verify_json_stdout_and_timings(capsys):
    assert main(["verify", "--suite", "specfun,parity-reflection", "--json", "--timings"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [s["name"] for s in doc["suites"]] == ["specfun", "parity-reflection"]
    assert all("runtime" in s for s in doc["suites"])


def test_verify_failure_exit_code(monkeypatch, capsys):
    from weberbeams import verification

    def broken(cfg, rng):
        raise RuntimeError("boom")

    monkeypatch.setitem(verification._RUNNERS, "ode", broken)
    assert main(["verify", "--suite", "ode"]) == 1
    assert "boom" in capsys.readouterr().out


def test_constants_command(capsys):
    assert main(["constants", "--windows", "10,20", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["rows"]) == 2
    assert abs(doc["rows"][-1]["Sz_over_E"]) <= 1e-10
    assert doc["rows"][1]["deltas"]["cPz_over_E"] is not None


def test_photon_command(capsys):
    assert main(["photon", "--kz-ratio", "0.995", "--a", "-2", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["constants"]["A_value"] == pytest.approx(-0.1997498, abs=1e-7)
    assert doc["energy_spacing"] == 1.0
    assert doc["states"]["fock"]["energy"] == 1.0


def test_photon_zero_kz_not_allowed_by_config(capsys):
    # configurations require 0 < kz_over_k < 1
    assert main(["photon", "--kz-ratio", "0"]) == 2


def test_config_file(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({
        "mode": {"parity": "even", "a": 1.5, "kz_over_k": 0.9},
        "polarization": {"amp_TE": [0, 0], "amp_TM": [1, 0.5]},
        "grid": {"n": 20, "extent": 5},
        "window": {"n_u": 40},
        "scan": {"extents": [5, 10]},
    }))
    c = load_config(str(cfg), {"a": -1.0})
    assert (c.parity, c.a, c.kz_over_k, c.grid_n, c.amp_tm) == ("even", -1.0, 0.9, 20, (1.0, 0.5))
    assert c.integration_window().n_u == 40
    assert c.polarization().family == "TM"


@pytest.mark.parametrize("doc", [
    {"bogus": {}},
    {"mode": {"color": "red"}},
    {"grid": {"n": 3.5}},
    {"window": {"n_u": 4}},
    {"window": {"depth": 4}},
    [1, 2],
])
def test_config_rejections(tmp_path, doc):
    p = tmp_path / "c.json"
    p.write_text(json.dumps(doc))
    with pytest.raises(ConfigError):
        load_config(str(p))


def test_small_grid_flagged():
    assert RunConfig(grid_n=4).validate().small_grid
    assert not RunConfig().validate().small_grid


def test_helpers():
    g = symmetric_axis(7, 3.0)
    assert np.all(g == -g[::-1]) and g[3] == 0
    assert count_nodes(np.array([1, 0.5, 0.0, 0.5, 1, 0.9, 1])) == 1
    assert count_nodes(np.cos(np.linspace(0, 4 * np.pi, 400)) ** 2) == 4
    assert pgm_bytes(np.zeros((2, 3))).endswith(bytes(6))
