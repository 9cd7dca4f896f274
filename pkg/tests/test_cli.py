"""Tests for the command line interface."""
import json
from pathlib import Path

import pytest

from ecocorridor.cli import EXIT_INFEASIBLE, EXIT_OK, EXIT_VALIDATION, main

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"


@pytest.fixture()
def tiny_config(tmp_path):
    payload = {
        "corridor": {
            "exit_buffer_m": 200,
            "signals": {"time_to_red_first_s": 15, "time_to_red_second_s": 15},
        },
        "vehicle": {"regen_enabled": False},
        "grid": {"time_budget_mode": "buffered", "time_buffer_frac": 0.03},
        "sweep": {"timings_s": [15], "spacings_m": [400]},
    }
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps(payload))
    return path


def test_run_command(tiny_config, tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["run", "--config", str(tiny_config), "--out", str(out)])
    assert code == EXIT_OK
    assert "reduction" in capsys.readouterr().out
    assert list(out.glob("*_eco.csv")) and list(out.glob("*.svg"))


def test_run_with_overrides(tiny_config, tmp_path, capsys):
    out = tmp_path / "out"
    code = main([
        "run", "--config", str(tiny_config),
        "--timing", "0", "15", "--spacing", "600", "--out", str(out),
    ])
    assert code == EXIT_OK
    assert (out / "timing_0_15_s600_eco.csv").exists()


def test_sweep_command(tiny_config, tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["sweep", "--config", str(tiny_config), "--out", str(out)])
    assert code == EXIT_OK
    assert (out / "table2.csv").exists()
    assert "cells: 1" in capsys.readouterr().out


def test_advisory_command(tmp_path, capsys):
    out = tmp_path / "out"
    code = main([
        "advisory", "--config", str(CONFIG_DIR / "field_test.json"),
        "--out", str(out),
    ])
    assert code == EXIT_OK
    assert (out / "advisory_advised.csv").exists()
    assert "recommendations issued" in capsys.readouterr().out


def test_verify_command(capsys):
    code = main(["verify", "--cases", "3", "--seed", "1"])
    assert code == EXIT_OK
    assert "matches enumeration" in capsys.readouterr().out


def test_bad_config_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"corridor": {"spacing_m": -1}}))
    code = main(["run", "--config", str(bad)])
    assert code == EXIT_VALIDATION
    assert "configuration error" in capsys.readouterr().err


def test_infeasible_exits_3(tmp_path, capsys):
    # with almost no braking authority the entering vehicle cannot stop
    # for a light that is red on arrival, so no feasible plan exists
    payload = {
        "corridor": {"signals": {"time_to_red_first_s": 0,
                                 "time_to_red_second_s": 0}},
        "grid": {"accel_max_m_s2": 0.01, "decel_min_m_s2": -0.01},
    }
    path = tmp_path / "hard.json"
    path.write_text(json.dumps(payload))
    code = main(["run", "--config", str(path)])
    assert code == EXIT_INFEASIBLE
    assert "infeasible" in capsys.readouterr().err


def test_out_env_var(tiny_config, tmp_path, monkeypatch, capsys):
    out = tmp_path / "envout"
    monkeypatch.setenv("ECOCORRIDOR_OUT", str(out))
    code = main(["run", "--config", str(tiny_config)])
    assert code == EXIT_OK
    assert list(out.glob("*_eco.csv"))
