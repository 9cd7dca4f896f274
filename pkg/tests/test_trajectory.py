"""Trajectory container and validation tests."""
import numpy as np
import pytest

from ecocorridor.trajectory import (
    CSV_HEADER,
    TrajectoryValidationError,
    from_samples,
)


def _uniform(v=10.0, n=5, dt=1.0):
    t = np.arange(n) * dt
    return from_samples(t, v * t, np.full(n, v))


def test_valid_trajectory_passes():
    _uniform().validate()


def test_time_must_increase():
    traj = from_samples([0.0, 1.0, 1.0], [0.0, 10.0, 20.0], [10.0, 10.0, 10.0])
    with pytest.raises(TrajectoryValidationError):
        traj.validate()


def test_negative_speed_rejected():
    traj = from_samples([0.0, 1.0], [0.0, 5.0], [10.0, -1.0])
    with pytest.raises(TrajectoryValidationError):
        traj.validate()


def test_position_decrease_rejected():
    traj = from_samples([0.0, 1.0], [10.0, 0.0], [5.0, 5.0])
    with pytest.raises(TrajectoryValidationError):
        traj.validate()


def test_distance_speed_consistency():
    # says 10 m/s but covers 20 m in 1 s
    traj = from_samples([0.0, 1.0], [0.0, 20.0], [10.0, 10.0])
    with pytest.raises(TrajectoryValidationError):
        traj.validate()


def test_quantized_clock_widens_tolerance():
    # 16.5 m/s over 10 m takes 0.606 s; a 0.25 s clock may book it at 0.5 s
    t = [0.0, 0.5, 1.0]
    x = [0.0, 10.0, 20.0]
    v = [16.5, 16.5, 16.5]
    strict = from_samples(t, x, v)
    with pytest.raises(TrajectoryValidationError):
        strict.validate()
    binned = from_samples(t, x, v, time_quantization_s=0.25)
    binned.validate()


def test_crossing_time_interpolates():
    traj = _uniform(v=10.0)
    assert traj.crossing_time(25.0) == pytest.approx(2.5)
    assert traj.crossing_time(0.0) == pytest.approx(0.0)
    assert traj.crossing_time(1e9) is None


def test_trip_time():
    assert _uniform(n=5, dt=2.0).trip_time_s == pytest.approx(8.0)


def test_csv_round_trip(tmp_path):
    traj = _uniform()
    path = tmp_path / "traj.csv"
    traj.to_csv(path)
    rows = path.read_text().strip().splitlines()
    assert rows[0].split(",") == CSV_HEADER
    assert len(rows) == len(traj) + 1
    first = [float(s) for s in rows[1].split(",")]
    assert first[0] == pytest.approx(traj.t[0])
    assert first[2] == pytest.approx(traj.v[0])
