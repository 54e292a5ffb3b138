"""Command-line interface, verification suites and mesh export."""
from __future__ import annotations

import json
import subprocess
import sys

import jsonschema
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zmc_minkowski.cli import main, schema
from zmc_minkowski.errors import ConfigError
from zmc_minkowski.export import read_csv, read_obj, sample_target, triangles
from zmc_minkowski.suite import SUITES, ExclusionError, Grid, fit_grid, resolve_target, run_checks


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ------------------------------------------------------------------ verify

@pytest.mark.parametrize("argv", [
    ("--target", "enneper_spacelike", "--suite", "zmc,first-form,twist"),
    ("--target", "family:spacelike,a=1,A=1,B=3", "--suite", "codazzi"),
])
def test_verify_examples_pass(capsys, argv):
    code, out, _ = run(capsys, "verify", *argv, "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["pass"] is True and doc["exit_status"] == 0
    assert all(c["max_residual"] <= c["tolerance"] for c in doc["checks"])


def test_verify_text_report(capsys):
    code, out, _ = run(capsys, "verify", "--target", "enneper_timelike", "--suite", "zmc")
    assert code == 0
    assert out.splitlines()[-1] == "overall: PASS"


def test_verify_failing_tolerance_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "--target", "enneper_spacelike", "--suite", "zmc", "--tol", "zmc=0")
    assert code == 1
    assert "FAIL" in out


def test_verify_writes_report(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "--target", "elliptic_catenoid", "--suite", "catenoid-symmetry",
                     "--seed", "7", "--output", str(path))
    doc = json.loads(path.read_text())
    assert code == 0
    assert doc["environment"]["seed"] == 7
    assert doc["checks"][0]["name"] == "catenoid-symmetry"


@pytest.mark.parametrize("argv,code", [
    (("verify", "--target", "no_such_surface", "--suite", "zmc"), 2),
    (("verify", "--target", "es:2,-1", "--suite", "twist"), 2),
    (("verify", "--target", "enneper_spacelike", "--suite", "bogus"), 2),
    (("verify", "--target", "enneper_spacelike"), 2),
    (("verify", "--target", "enneper_spacelike", "--suite", "zmc", "--tol", "zmc"), 2),
    (("export", "--target", "enneper_spacelike", "--grid", "1,2,3"), 2),
])
def test_configuration_errors(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err.startswith("zmc: error:")


def test_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "export", "--target", "es:2,-1", "--grid", "0.2,0.6,-1,1,3,3",
                       "--output", str(tmp_path / "missing" / "x.obj"))
    assert code == 3
    assert "I/O error" in err


# ------------------------------------------------------------------ export

def test_obj_counts(tmp_path, capsys):
    path = tmp_path / "es.obj"
    code, _, _ = run(capsys, "export", "--target", "es:2,-1", "--grid", "0.2,0.6,-1,1,5,7", "--format", "obj",
                     "--output", str(path))
    assert code == 0
    verts, faces = read_obj(path)
    assert verts.shape == (35, 3)
    assert faces.shape == (2 * 4 * 6, 3)
    assert faces.min() == 1 and faces.max() == 35


def test_two_by_two_mesh():
    np.testing.assert_array_equal(triangles(2, 2), [[1, 3, 2], [2, 3, 4]])


@given(st.integers(2, 9), st.integers(2, 9))
@settings(max_examples=30)
def test_triangles_cover_grid(nu, nv):
    t = triangles(nu, nv)
    assert t.shape == (2 * (nu - 1) * (nv - 1), 3)
    assert set(np.unique(t)) == set(range(1, nu * nv + 1))


def test_csv_round_trip_is_exact(tmp_path, capsys):
    path = tmp_path / "ent.csv"
    run(capsys, "export", "--target", "enneper_timelike", "--grid", "0.1,0.5,-0.7,0.9,4,6", "--format", "csv",
        "--output", str(path))
    s = read_csv(path)
    ref = sample_target(resolve_target("enneper_timelike"), Grid.parse("0.1,0.5,-0.7,0.9,4,6"))
    np.testing.assert_array_equal(s.points, ref.points)
    np.testing.assert_array_equal(s.u, ref.u)
    np.testing.assert_array_equal(s.v, ref.v)


def test_straddling_grid_refused(tmp_path, capsys):
    path = tmp_path / "x.obj"
    code, _, err = run(capsys, "export", "--target", "enneper_spacelike", "--grid=-0.5,0.5,-1,1,5,5",
                       "--output", str(path))
    assert code == 4
    assert '"exclusion"' in err
    assert not path.exists()


def test_default_grid_shrinks_with_warning(capsys):
    code, out, err = run(capsys, "export", "--target", "es:2,-1", "--format", "csv")
    assert code == 0
    assert "zmc: warning:" in err
    assert out.startswith("u,v,x1,x2,x3\n")


@pytest.mark.parametrize("fmt", ["json", "csv", "obj"])
def test_output_deterministic(tmp_path, capsys, fmt):
    paths = [tmp_path / f"a.{fmt}", tmp_path / f"b.{fmt}"]
    for p, threads in zip(paths, ("1", "3")):
        run(capsys, "export", "--target", "family:timelike_I,a=1,A=2,B=3", "--grid=-0.3,0.3,-0.5,0.5,6,5",
            "--format", fmt, "--output", str(p), "--threads", threads)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_config_file(tmp_path, capsys):
    out = tmp_path / "mesh.json"
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"target": {"type": "family", "kind": "spacelike", "a": 1, "A": 1, "B": 3},
                               "grid": {"u_min": 0.1, "u_max": 0.3, "v_min": -0.2, "v_max": 0.2, "nu": 3, "nv": 4},
                               "output": {"path": str(out), "format": "json"}}))
    code, _, _ = run(capsys, "export", "--config", str(cfg))
    doc = json.loads(out.read_text())
    assert code == 0
    assert np.asarray(doc["points"]).shape == (3, 4, 3)
    assert doc["metadata"]["domain"]["nu"] == 3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"target": "enneper_spacelike", "colour": "red"}))
    assert run(capsys, "export", "--config", str(bad))[0] == 2


# ------------------------------------------------------------------ list, eval, bjorling, weierstrass

def test_list_json_validates(capsys):
    code, out, _ = run(capsys, "list", "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("list"))
    assert code == 0
    assert "enneper_timelike_2" in [s["id"] for s in doc["named_surfaces"]]
    assert {s["name"] for s in doc["suites"]} == set(SUITES)
    assert len(doc["suites"]) == 12


def test_eval_point(capsys):
    code, out, _ = run(capsys, "eval", "--target", "enneper_spacelike", "--u", "0.6931471805599453", "--v", "0",
                       "--json")
    doc = json.loads(out)
    assert code == 0
    np.testing.assert_allclose(doc["X"], [14 / 3, 0, -4], atol=1e-13)
    assert doc["first_form"]["E"] == pytest.approx(36.0)
    assert doc["K"] == pytest.approx(4 / 81)


def test_bjorling_command(capsys):
    code, out, _ = run(capsys, "bjorling", "--data", "spacelike,a=1,A=1,B=3", "--json")
    doc = json.loads(out)
    assert code == 0
    assert [c["name"] for c in doc["checks"]] == ["frame", "bjorling", "zmc"]


def test_weierstrass_command(capsys):
    code, out, _ = run(capsys, "weierstrass", "--target", "es:2,2")
    doc = json.loads(out)
    assert code == 0
    np.testing.assert_allclose(doc["real_period"], [0, np.pi, 0], atol=1e-15)
    np.testing.assert_allclose(doc["surface_translation"], [0, 2 * np.pi, 0], atol=1e-15)
    np.testing.assert_allclose(doc["loop_period"], doc["real_period"], atol=1e-8)
    assert [e["k"] for e in doc["ends"]] == [5, 1]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "zmc_minkowski.cli", "verify", "--target", "timelike_catenoid",
                        "--suite", "zmc,catenoid-symmetry"], capture_output=True, text=True)
    assert r.returncode == 0
    assert "overall: PASS" in r.stdout


# ------------------------------------------------------------------ library layer

def test_fit_grid_policy():
    g = Grid.parse("-1,2,-1,1,11,11")
    with pytest.raises(ExclusionError):
        fit_grid(g, (0.0,), margin=0.01, refuse=True)
    shrunk, msgs = fit_grid(g, (0.0,), margin=0.01)
    assert shrunk.u_min == pytest.approx(0.01) and shrunk.u_max == 2.0
    assert msgs
    same, msgs = fit_grid(g, (5.0,), margin=0.01)
    assert same == g and not msgs


@pytest.mark.parametrize("text", ["1,0,0,1,3,3", "0,1,0,1,1,3", "0,1,0,1,3"])
def test_grid_validation(text):
    with pytest.raises(ConfigError):
        Grid.parse(text)


def test_run_checks_in_threads():
    t = resolve_target("family:timelike_II,a=1,A=2,B=3")
    one = run_checks(t, Grid.parse("0.2,0.6,-0.5,0.5,21,21"), ["zmc", "first-form", "twist"], threads=1)
    many = run_checks(t, Grid.parse("0.2,0.6,-0.5,0.5,21,21"), ["zmc", "first-form", "twist"], threads=3)
    assert [c.max_residual for c in one.checks] == [c.max_residual for c in many.checks]
    assert one.passed
