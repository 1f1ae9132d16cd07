"""CLI behavior: output schemas, determinism, exit codes."""

import csv
import json
import math

import numpy as np
import pytest

from prepotential.cli import main
from prepotential.scenario import bundled_scenario_path

REST = str(bundled_scenario_path("rest_charge"))
UNIFORM = str(bundled_scenario_path("uniform_charge"))


@pytest.fixture(scope="module")
def grid_runs(tmp_path_factory):
    """Two independent field-grid runs of the bundled rest-charge scenario."""
    d = tmp_path_factory.mktemp("grids")
    out1, out2 = d / "a.csv", d / "b.csv"
    code1 = main(["field-grid", "--scenario", REST, "--out", str(out1)])
    code2 = main(["field-grid", "--scenario", REST, "--out", str(out2)])
    return code1, code2, out1.read_bytes(), out2.read_bytes()


class TestFieldGrid:
    def test_exit_zero(self, grid_runs):
        assert grid_runs[0] == 0 and grid_runs[1] == 0

    def test_byte_identical_reruns(self, grid_runs):
        assert grid_runs[2] == grid_runs[3]

    def test_header_and_row_count(self, grid_runs):
        lines = grid_runs[2].decode().splitlines()
        assert lines[0] == ("x0,x1,x2,x3,S_re,S_im,E1,E2,E3,B1,B2,B3,"
                            "wave_residual,laplacian_residual,masked")
        assert len(lines) == 1 + 11 * 11 * 11

    def test_masked_cells_flagged_not_dropped(self, grid_runs):
        rows = list(csv.DictReader(grid_runs[2].decode().splitlines()))
        masked = [r for r in rows if r["masked"] == "1"]
        # the grid sweeps across x1 = x2 = 0, which is the singular axis
        assert len(masked) == 11
        for r in masked:
            assert float(r["x1"]) == 0.0 and float(r["x2"]) == 0.0
            assert r["S_re"] == "nan"

    def test_floats_roundtrip_17_digits(self, grid_runs):
        rows = list(csv.DictReader(grid_runs[2].decode().splitlines()))
        r = next(r for r in rows if r["masked"] == "0")
        v = float(r["E1"])
        assert format(v, ".17g") == r["E1"]

    def test_rest_charge_dataset_magnetic_part_negligible(self, grid_runs):
        rows = list(csv.DictReader(grid_runs[2].decode().splitlines()))
        emax = bmax = 0.0
        for r in rows:
            if r["masked"] == "1":
                continue
            emax = max(emax, *(abs(float(r[k])) for k in ("E1", "E2", "E3")))
            bmax = max(bmax, *(abs(float(r[k])) for k in ("B1", "B2", "B3")))
        assert bmax < 1e-8 * emax

    def test_json_format(self, tmp_path):
        out = tmp_path / "grid.json"
        sc = {
            "version": 1,
            "charges": [{"q": 1.0, "line": {"kind": "rest", "position": [0, 0, 0]}}],
            "grid": {"time": 0.0, "origin": [0.5, 0.5, 0.5],
                     "axes": [[1, 0, 0]], "extents": [1.0], "resolution": [4]},
        }
        scen = tmp_path / "sc.json"
        scen.write_text(json.dumps(sc))
        assert main(["field-grid", "--scenario", str(scen),
                     "--format", "json", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["schema_version"] == 1
        assert doc["kind"] == "field-grid"
        assert len(doc["records"]) == 4

    def test_grid_section_required(self, tmp_path):
        scen = tmp_path / "nogrid.json"
        scen.write_text(json.dumps({
            "version": 1,
            "charges": [{"q": 1.0, "line": {"kind": "rest", "position": [0, 0, 0]}}],
        }))
        assert main(["field-grid", "--scenario", str(scen)]) == 2

    def test_uniform_motion_dataset_b_is_v_cross_e(self, tmp_path):
        out = tmp_path / "u.csv"
        assert main(["field-grid", "--scenario", UNIFORM, "--out", str(out)]) == 0
        rows = list(csv.DictReader(out.read_text().splitlines()))
        v = np.array([0.0, 0.0, 0.5])
        worst = 0.0
        for r in rows:
            if r["masked"] == "1":
                continue
            E = np.array([float(r["E1"]), float(r["E2"]), float(r["E3"])])
            B = np.array([float(r["B1"]), float(r["B2"]), float(r["B3"])])
            if np.linalg.norm(E) < 1e-3:
                continue
            worst = max(worst, np.abs(B - np.cross(v, E)).max() / np.linalg.norm(E))
        assert worst < 1e-4


class TestExitCodes:
    def test_missing_scenario_file(self):
        assert main(["field-grid", "--scenario", "/nonexistent/path.json"]) == 2

    def test_invalid_json(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{ broken")
        assert main(["field-grid", "--scenario", str(p)]) == 2

    def test_empty_grid_rejected(self, tmp_path):
        p = tmp_path / "empty.json"
        p.write_text(json.dumps({
            "version": 1,
            "charges": [{"q": 1.0, "line": {"kind": "rest", "position": [0, 0, 0]}}],
            "grid": {"time": 0, "origin": [0, 0, 0], "axes": [[1, 0, 0]],
                     "extents": [1.0], "resolution": [0]},
        }))
        assert main(["field-grid", "--scenario", str(p)]) == 2

    def test_unknown_check_name(self):
        assert main(["verify", "--checks", "bogus-check"]) == 2

    def test_bad_usage(self):
        assert main(["field-grid"]) == 2  # --scenario is required

    def test_verification_failure_exits_one(self, tmp_path):
        out = tmp_path / "v.csv"
        code = main(["verify", "--checks", "matrix-relations",
                     "--tolerance-scale", "1e-20", "--out", str(out)])
        assert code == 1

    def test_loop_through_axis_exits_three(self, tmp_path):
        scen = tmp_path / "axis_loop.json"
        scen.write_text(json.dumps({
            "version": 1,
            "charges": [{"q": 1.0, "line": {"kind": "rest", "position": [0, 0, 0]}}],
            "loops": [{"kind": "points", "closed": True, "events": [
                [0.0, 1.0, 0.0, 0.5], [0.0, 0.0, 0.0, 0.5], [0.0, 0.0, 1.0, 0.5],
            ]}],
        }))
        out = tmp_path / "l.csv"
        assert main(["loop-phase", "--scenario", str(scen), "--out", str(out)]) == 3
        rows = out.read_text().splitlines()
        assert len(rows) == 2
        assert "ERROR" in rows[1]


class TestVerifyCommand:
    def test_selected_checks_pass(self, tmp_path, capsys):
        out = tmp_path / "verify.csv"
        code = main(["verify", "--checks", "matrix-relations,claim1-covariance",
                     "--out", str(out)])
        assert code == 0
        rows = list(csv.DictReader(out.read_text().splitlines()))
        assert [r["check"] for r in rows] == ["matrix-relations", "claim1-covariance"]
        assert all(r["passed"] == "1" for r in rows)

    def test_csv_quoting_of_detail_field(self, tmp_path):
        out = tmp_path / "rel.csv"
        assert main(["relations-dump", "--out", str(out)]) == 0
        rows = list(csv.reader(out.read_text().splitlines()))
        assert rows[0] == ["relation", "max_deviation", "tolerance", "passed"]
        names = [r[0] for r in rows[1:]]
        assert "commutator [sigma,sigma] = -eps sigma" in names
        assert all(r[3] == "1" for r in rows[1:])

    def test_bundled_scenario_checks_pass(self, tmp_path):
        # rest_charge bundles matrix-relations, rest-charge-field and a
        # loop-phase family driven by its own loop list
        out = tmp_path / "bundled.csv"
        assert main(["verify", "--scenario", REST, "--out", str(out)]) == 0
        rows = list(csv.DictReader(out.read_text().splitlines()))
        assert [r["check"] for r in rows] == [
            "matrix-relations", "rest-charge-field", "loop-phase",
        ]
        assert all(r["passed"] == "1" for r in rows)

    def test_scenario_checks_drive_default_selection(self, tmp_path):
        scen = tmp_path / "checks.json"
        scen.write_text(json.dumps({
            "version": 1,
            "charges": [{"q": 1.0, "line": {"kind": "rest", "position": [0, 0, 0]}}],
            "checks": ["matrix-relations"],
        }))
        out = tmp_path / "v.csv"
        assert main(["verify", "--scenario", str(scen), "--out", str(out)]) == 0
        rows = list(csv.DictReader(out.read_text().splitlines()))
        assert [r["check"] for r in rows] == ["matrix-relations"]


class TestLoopPhaseCommand:
    def test_bundled_loops_table(self, tmp_path):
        out = tmp_path / "loops.csv"
        assert main(["loop-phase", "--scenario", REST, "--out", str(out)]) == 0
        rows = list(csv.DictReader(out.read_text().splitlines()))
        assert [int(r["winding"]) for r in rows] == [-1, 0, 2]
        for r in rows:
            turns = float(r["delta_S_im"]) / (2 * math.pi)
            assert abs(turns - int(r["winding"])) < 1e-8
            assert r["status"] == "ok"

    def test_empty_loop_list(self, tmp_path):
        out = tmp_path / "empty.csv"
        assert main(["loop-phase", "--scenario", UNIFORM, "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 1  # header only
