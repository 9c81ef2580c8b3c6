import json

import numpy as np
import pytest

from cstarmech.cli import main
from cstarmech.serialization import matrix_to_json

from conftest import SX, SY


def write_cfg(tmp_path, cfg, name="config.json"):
    p = tmp_path / name
    p.write_text(json.dumps(cfg))
    return p


def run(tmp_path, command, cfg, seed=None, jobs=None, outname="out"):
    cfg_path = write_cfg(tmp_path, cfg, name=f"{command}_{outname}.json")
    out = tmp_path / outname
    argv = [command, "--config", str(cfg_path), "--out", str(out)]
    if seed is not None:
        argv += ["--seed", str(seed)]
    if jobs is not None:
        argv += ["--jobs", str(jobs)]
    return main(argv), out


def pure_state_cfg():
    return {
        "generators": [matrix_to_json(SX), matrix_to_json(SY)],
        "state": {"density": matrix_to_json(np.diag([1.0, 0.0]))},
    }


class TestUncertainty:
    def test_clean_run(self, tmp_path):
        code, out = run(
            tmp_path, "uncertainty",
            {"dim": 3, "samples": 50, "include_commuting": True}, seed=11,
        )
        assert code == 0
        summary = json.loads((out / "summary.json").read_text())
        assert summary["violations"] == 0
        assert (out / "uncertainty.csv").exists()
        assert (out / "manifest.json").exists()

    def test_jobs_match_serial(self, tmp_path):
        cfg = {"dim": 2, "samples": 32}
        code1, out1 = run(tmp_path, "uncertainty", cfg, seed=5, outname="serial")
        code2, out2 = run(tmp_path, "uncertainty", cfg, seed=5, jobs=4, outname="par")
        assert code1 == code2 == 0
        assert (out1 / "uncertainty.csv").read_bytes() == (
            out2 / "uncertainty.csv"
        ).read_bytes()

    def test_bad_dim_is_config_error(self, tmp_path):
        code, _ = run(tmp_path, "uncertainty", {"dim": 1})
        assert code == 2


class TestGns:
    def test_pure_state(self, tmp_path):
        code, out = run(tmp_path, "gns", pure_state_cfg())
        assert code == 0
        verdicts = json.loads((out / "verdicts.json").read_text())
        assert verdicts["hilbert_dim"] == 2
        assert verdicts["irreducible"] and verdicts["pure"]
        assert verdicts["reconstruction_max_error"] <= 1e-9

    def test_tracial_state(self, tmp_path):
        cfg = pure_state_cfg()
        cfg["state"]["density"] = matrix_to_json(np.eye(2) / 2)
        code, out = run(tmp_path, "gns", cfg)
        assert code == 0
        verdicts = json.loads((out / "verdicts.json").read_text())
        assert verdicts["hilbert_dim"] == 4
        assert not verdicts["irreducible"] and not verdicts["pure"]

    def test_missing_state_is_config_error(self, tmp_path):
        code, _ = run(tmp_path, "gns", {"generators": [matrix_to_json(SX)]})
        assert code == 2

    def test_malformed_matrix_is_config_error(self, tmp_path):
        cfg = pure_state_cfg()
        cfg["generators"][0] = [[1.0, 0.0]]
        code, _ = run(tmp_path, "gns", cfg)
        assert code == 2


class TestWeyl:
    def test_clock_shift_and_grid(self, tmp_path):
        code, out = run(tmp_path, "weyl", {"n": 16, "grid": {"N": 64, "L": 8.0}})
        assert code == 0
        rep = json.loads((out / "weyl_report.json").read_text())
        assert rep["clock_shift"]["relation_residual"] <= 1e-12 * 16
        assert rep["grid"]["relation_residual"] <= 1e-10

    def test_empty_config_is_config_error(self, tmp_path):
        code, _ = run(tmp_path, "weyl", {})
        assert code == 2


class TestEvolve:
    CFG = {
        "grid": {"N": 256, "L": 20.0},
        "potential": {"name": "harmonic", "params": {"omega": 1.0}},
        "dt": 1e-3,
        "t_final": 0.5,
        "initial": {"x0": 1.0, "sigma": 0.7071067811865476},
    }

    def test_run_and_outputs(self, tmp_path):
        code, out = run(tmp_path, "evolve", self.CFG)
        assert code == 0
        summary = json.loads((out / "evolve_summary.json").read_text())
        assert summary["norm_drift"] <= 1e-8
        assert summary["energy_drift_rel"] <= 1e-6
        header = (out / "trajectory.csv").read_text().split("\n", 1)[0]
        assert header == "t,x_mean,p_mean,energy,norm"

    def test_unknown_potential_is_config_error(self, tmp_path):
        cfg = dict(self.CFG, potential={"name": "linear"})
        code, _ = run(tmp_path, "evolve", cfg)
        assert code == 2


class TestSpectrum:
    def test_grid_harmonic_with_expectation(self, tmp_path):
        cfg = {
            "kind": "grid",
            "grid": {"N": 512, "L": 20.0},
            "potential": {"name": "harmonic"},
            "k": 4,
            "expect": {"values": [0.5, 1.5, 2.5, 3.5], "tol": 1e-4},
        }
        code, out = run(tmp_path, "spectrum", cfg)
        assert code == 0
        check = json.loads((out / "spectrum_check.json").read_text())
        assert check["ok"] and check["max_error"] <= 1e-4

    def test_radial_hydrogen(self, tmp_path):
        cfg = {
            "kind": "radial",
            "r_max": 120.0,
            "M": 2400,
            "k": 2,
            "expect": {"values": [-0.5, -0.125], "tol": 0.01, "relative": True},
        }
        code, out = run(tmp_path, "spectrum", cfg)
        assert code == 0
        vals = json.loads((out / "spectrum.json").read_text())["eigenvalues"]
        assert len(vals) == 2 and vals[0] < vals[1] < 0

    def test_failed_expectation_exits_1(self, tmp_path):
        cfg = {
            "kind": "grid",
            "grid": {"N": 128, "L": 16.0},
            "potential": {"name": "harmonic"},
            "k": 2,
            "expect": {"values": [0.4, 1.4], "tol": 1e-6},
        }
        code, _ = run(tmp_path, "spectrum", cfg)
        assert code == 1

    def test_unknown_kind_is_config_error(self, tmp_path):
        code, _ = run(tmp_path, "spectrum", {"kind": "lattice"})
        assert code == 2


class TestClassical:
    def test_run(self, tmp_path):
        cfg = {"points": 20, "dt": 1e-2, "steps": 500}
        code, out = run(tmp_path, "classical", cfg, seed=3)
        assert code == 0
        summary = json.loads((out / "classical_summary.json").read_text())
        assert summary["max_bracket_error"] <= 1e-6
        assert summary["energy_drift"] < 1e-4
        assert (out / "bracket_table.csv").exists()
        assert (out / "harmonic_trajectory.csv").exists()


class TestHarness:
    def test_missing_config_file(self, tmp_path):
        code = main(
            ["weyl", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path / "o")]
        )
        assert code == 2

    def test_invalid_json(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        code = main(["weyl", "--config", str(p), "--out", str(tmp_path / "o")])
        assert code == 2

    def test_bad_jobs(self, tmp_path):
        cfg_path = write_cfg(tmp_path, {"n": 4})
        code = main(
            ["weyl", "--config", str(cfg_path), "--out", str(tmp_path / "o"),
             "--jobs", "0"]
        )
        assert code == 2

    def test_manifest_contents(self, tmp_path):
        code, out = run(tmp_path, "weyl", {"n": 4})
        assert code == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["command"] == "weyl"
        assert manifest["exit_code"] == 0
        assert len(manifest["config_sha256"]) == 64

    def test_sidecar_metadata(self, tmp_path):
        code, out = run(tmp_path, "weyl", {"n": 4})
        assert code == 0
        meta = json.loads((out / "weyl_report.json.meta.json").read_text())
        assert "tolerances" in meta and "config_sha256" in meta

    def test_rerun_is_deterministic(self, tmp_path):
        cfg = {"dim": 2, "samples": 25}
        _, out1 = run(tmp_path, "uncertainty", cfg, seed=9, outname="r1")
        _, out2 = run(tmp_path, "uncertainty", cfg, seed=9, outname="r2")
        for name in ("uncertainty.csv", "summary.json"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_seed_changes_samples(self, tmp_path):
        cfg = {"dim": 2, "samples": 25}
        _, out1 = run(tmp_path, "uncertainty", cfg, seed=1, outname="s1")
        _, out2 = run(tmp_path, "uncertainty", cfg, seed=2, outname="s2")
        assert (out1 / "uncertainty.csv").read_text() != (
            out2 / "uncertainty.csv"
        ).read_text()
