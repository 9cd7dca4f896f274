"""Rule-based regular-driver simulation tests."""
import numpy as np
import pytest

from ecocorridor.baseline import RegularDriverRules, simulate_regular
from ecocorridor.corridor import Phase, make_corridor, phase_at
from ecocorridor.powertrain import VehicleParams


def test_all_green_is_constant_speed():
    # both lights red only long after the vehicle has left the zone
    c = make_corridor(500.0, 500.0, red_s=30.0, green_s=1000.0)
    traj = simulate_regular(c, VehicleParams())
    assert np.allclose(traj.v, c.speed_limit_m_s)
    assert traj.trip_time_s == pytest.approx(c.length_m / c.speed_limit_m_s, rel=0.01)
    assert not traj.emergency_stop


def test_stops_at_red_and_departs_on_green():
    c = make_corridor(15.0, 15.0, spacing_m=400.0)
    traj = simulate_regular(c, VehicleParams())
    # the second light (x=500) is red on [15, 45); the driver must wait
    t_cross = traj.crossing_time(500.0)
    assert t_cross >= 45.0
    assert phase_at(c.signals[1], t_cross) is Phase.GREEN
    # a full stop happened somewhere before the line
    assert traj.v.min() == pytest.approx(0.0, abs=1e-9)
    traj.validate()


def test_acceleration_bounds_respected():
    c = make_corridor(15.0, 15.0, spacing_m=400.0)
    rules = RegularDriverRules()
    traj = simulate_regular(c, VehicleParams(), rules)
    dv = np.diff(traj.v)
    dt = np.diff(traj.t)
    a = dv / dt
    assert a.max() <= rules.accel_max_m_s2 + 1e-6
    assert a.min() >= rules.decel_min_m_s2 - 1e-6


def test_braking_starts_within_sight_distance():
    c = make_corridor(15.0, 15.0, spacing_m=400.0)
    traj = simulate_regular(c, VehicleParams())
    # at full speed before the stop line comes into 75 m view
    k = int(np.searchsorted(traj.x, 500.0 - 80.0))
    assert traj.v[k] == pytest.approx(c.speed_limit_m_s, abs=1e-6)


def test_never_crosses_on_red():
    for x, y in ((-30.0, 0.0), (0.0, -15.0), (15.0, -30.0)):
        c = make_corridor(x, y, spacing_m=200.0)
        traj = simulate_regular(c, VehicleParams())
        for sig in c.signals:
            t_cross = traj.crossing_time(sig.stop_line_m)
            assert phase_at(sig, t_cross) is Phase.GREEN


def test_invalid_rules_rejected():
    with pytest.raises(ValueError):
        RegularDriverRules(sight_distance_m=0.0)
    with pytest.raises(ValueError):
        RegularDriverRules(decel_min_m_s2=1.0)
    with pytest.raises(ValueError):
        RegularDriverRules(timestep_s=0.0)
