import json

import numpy as np
import pytest

from rqcx import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    lines = [ln for ln in text.strip().splitlines() if ln]
    assert lines[0].startswith("# ")
    columns = lines[0][2:].split(",")
    rows = [dict(zip(columns, ln.split(","))) for ln in lines[1:]]
    return columns, rows


class TestMeasures:
    def test_bell_family(self, capsys):
        code, out, _ = run_cli(capsys, "measures", "--state", "werner", "--param", "1")
        assert code == 0
        _, rows = parse_csv(out)
        assert float(rows[0]["concurrence"]) == pytest.approx(1.0)
        assert float(rows[0]["laqc"]) == pytest.approx(1.0)

    def test_json_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "measures", "--state", "mnms", "--param", "0.5", "--format", "json"
        )
        assert code == 0
        data = json.loads(out)
        assert data[0]["laqc"] == pytest.approx(0.18872187554086717)

    def test_missing_param_is_input_error(self, capsys):
        code, _, err = run_cli(capsys, "measures", "--state", "werner")
        assert code == 1
        assert "param" in err


class TestStateFiles:
    def make_file(self, tmp_path, doc):
        path = tmp_path / "state.json"
        path.write_text(json.dumps(doc))
        return str(path)

    def test_abcdrs_document(self, capsys, tmp_path):
        path = self.make_file(tmp_path, {"abcdrs": [0.5, 0.0, 0.0, 0.5, 0.5, 0.0]})
        code, out, _ = run_cli(capsys, "measures", "--state", "file", "--state-file", path)
        assert code == 0
        _, rows = parse_csv(out)
        assert float(rows[0]["concurrence"]) == pytest.approx(1.0)

    def test_bloch_document(self, capsys, tmp_path):
        doc = {"bloch": {"t30": 0.0, "t03": 0.0, "t11": -0.5, "t22": -0.5, "t33": -0.5}}
        code, out, _ = run_cli(
            capsys, "measures", "--state", "file", "--state-file", self.make_file(tmp_path, doc)
        )
        assert code == 0
        _, rows = parse_csv(out)
        assert float(rows[0]["laqc"]) == pytest.approx(0.18872187554086717)

    def test_matrix_document(self, capsys, tmp_path):
        mat = [[[0.25, 0.0] if i == j else [0.0, 0.0] for j in range(4)] for i in range(4)]
        code, out, _ = run_cli(
            capsys,
            "measures",
            "--state",
            "file",
            "--state-file",
            self.make_file(tmp_path, {"matrix": mat}),
        )
        assert code == 0
        _, rows = parse_csv(out)
        assert float(rows[0]["cs"]) == pytest.approx(0.0, abs=1e-12)

    def test_two_keys_rejected(self, capsys, tmp_path):
        doc = {"abcdrs": [0.25] * 4 + [0, 0], "bloch": {}}
        code, _, err = run_cli(
            capsys, "measures", "--state", "file", "--state-file", self.make_file(tmp_path, doc)
        )
        assert code == 1
        assert "exactly one" in err

    def test_validate_reports_violations(self, capsys, tmp_path):
        path = self.make_file(tmp_path, {"abcdrs": [0.5, 0.0, 0.0, 0.5, 0.6, 0.0]})
        code, out, _ = run_cli(capsys, "validate", "--state", "file", "--state-file", path)
        assert code == 0
        _, rows = parse_csv(out)
        assert rows[0]["check"] == "valid" and rows[0]["ok"] == "0"
        assert any(r["check"] == "r_coherence_bound" for r in rows)

    def test_validate_accepts_good_state(self, capsys):
        code, out, _ = run_cli(capsys, "validate", "--state", "werner", "--param", "0.5")
        assert code == 0
        _, rows = parse_csv(out)
        assert rows[0]["ok"] == "1" and len(rows) == 1


class TestEvolveAndEvents:
    def test_evolve_csv_round_trip(self, capsys, tmp_path):
        out_path = tmp_path / "traj.csv"
        code, _, _ = run_cli(
            capsys,
            "evolve",
            "--state", "werner", "--param", "0.8",
            "--noise", "rtn", "--a-over-gamma", "4",
            "--tmax", "1.0", "--steps", "50",
            "--out", str(out_path),
        )
        assert code == 0
        columns, rows = parse_csv(out_path.read_text())
        assert columns == ["t", "lambda", "concurrence", "laqc", "qs", "cs"]
        assert len(rows) == 50
        # bit-exact round trip of the emitted decimals
        from rqcx.dynamics import trajectory
        from rqcx.families import FamilySpec, make_state
        from rqcx.noise import Rtn

        ref = trajectory(make_state(FamilySpec("werner", 0.8)), Rtn(4.0), np.linspace(0, 1, 50))
        for row, r in zip(rows, ref):
            assert float(row["lambda"]) == r.lam
            assert float(row["laqc"]) == r.laqc

    def test_events_first_death(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "events",
            "--state", "werner", "--param", "1",
            "--noise", "rtn", "--a-over-gamma", "4", "--tmax", "3",
        )
        assert code == 0
        _, rows = parse_csv(out)
        deaths = [r for r in rows if r["kind"] == "sudden_death"]
        assert float(deaths[0]["t"]) == pytest.approx(0.21369, abs=1e-4)

    def test_revival_threshold_flag(self, capsys):
        args = [
            "events",
            "--state", "werner", "--param", "1",
            "--noise", "rtn", "--a-over-gamma", "4", "--tmax", "3",
        ]
        _, out_low, _ = run_cli(capsys, *args, "--revival-threshold", "1e-6")
        _, out_high, _ = run_cli(capsys, *args, "--revival-threshold", "0.05")
        n_low = sum(1 for r in parse_csv(out_low)[1] if r["kind"] == "revival_peak")
        n_high = sum(1 for r in parse_csv(out_high)[1] if r["kind"] == "revival_peak")
        assert n_low > n_high


class TestSurfaceOracleCrossover:
    def test_surface_shape_and_order(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "surface",
            "--state", "mnms",
            "--param-grid", "0:1:4", "--time-grid", "0:1:3",
            "--noise", "rtn", "--a-over-gamma", "4",
        )
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) == 12
        # row-major: param varies slowest
        assert [float(r["param"]) for r in rows[:3]] == [0.0, 0.0, 0.0]
        assert float(rows[0]["value"]) >= -1e-12

    def test_oracle_subcommand(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "oracle",
            "--state", "werner", "--param", "0.5",
            "--grid", "16", "--refine", "3",
        )
        assert code == 0
        _, rows = parse_csv(out)
        by_measure = {r["measure"]: r for r in rows}
        assert set(by_measure) == {"laqc", "qs", "cs"}
        assert float(by_measure["laqc"]["abs_error"]) < 2e-3

    def test_crossover_value(self, capsys):
        code, out, _ = run_cli(capsys, "crossover")
        assert code == 0
        _, rows = parse_csv(out)
        assert float(rows[0]["z_star"]) == pytest.approx(0.421499471, abs=1e-6)


class TestConfigAndErrors:
    def test_config_file_with_flag_override(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"state": "werner", "param": 0.5, "format": "json"}))
        code, out, _ = run_cli(capsys, "measures", "--config", str(cfg))
        assert code == 0
        assert json.loads(out)[0]["concurrence"] == pytest.approx(0.25)
        # explicit flag beats the file
        code, out, _ = run_cli(capsys, "measures", "--config", str(cfg), "--param", "1")
        assert json.loads(out)[0]["concurrence"] == pytest.approx(1.0)

    def test_unknown_config_key_rejected(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"stat": "werner"}))
        code, _, err = run_cli(capsys, "measures", "--config", str(cfg))
        assert code == 1

    def test_unknown_flag_exits_one(self, capsys):
        code, _, err = run_cli(capsys, "measures", "--bogus")
        assert code == 1
        assert "usage" in err

    def test_unknown_subcommand_exits_one(self, capsys):
        code, _, _ = run_cli(capsys, "transmogrify")
        assert code == 1

    def test_overdamped_rtn_is_input_error(self, capsys):
        code, _, err = run_cli(
            capsys,
            "evolve",
            "--state", "werner", "--param", "0.5",
            "--noise", "rtn", "--a-over-gamma", "0.2",
        )
        assert code == 1
        assert "RTN" in err

    def test_bad_grid_string(self, capsys):
        code, _, _ = run_cli(
            capsys, "surface", "--state", "mnms", "--param-grid", "nope",
            "--noise", "moun",
        )
        assert code == 1
