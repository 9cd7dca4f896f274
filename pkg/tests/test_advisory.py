"""Rule-based speed advisory and driver-following tests."""
import pytest

from ecocorridor.advisory import (
    IDEAL_DRIVER,
    AdvisoryConfig,
    DriverFollowingModel,
    recommend,
    simulate_advised_driver,
)
from ecocorridor.corridor import Phase, make_corridor, phase_at
from ecocorridor.powertrain import VehicleParams


def test_green_wave_recommends_limit():
    c = make_corridor(500.0, 500.0, red_s=30.0, green_s=1000.0)
    cfg = AdvisoryConfig()
    adv = recommend(0.0, cfg.speed_limit_m_s, 0.0, c, cfg)
    assert adv.target_speed_m_s == pytest.approx(cfg.speed_limit_m_s)


def test_red_ahead_recommends_slowdown():
    # light 1 red on [0, 30): pace the approach to arrive at the onset
    c = make_corridor(0.0, 0.0, spacing_m=400.0)
    cfg = AdvisoryConfig()
    adv = recommend(0.0, cfg.speed_limit_m_s, 0.0, c, cfg)
    assert cfg.min_cruise_m_s <= adv.target_speed_m_s < cfg.speed_limit_m_s
    # 100 m to cover in the 30 s wait
    assert adv.target_speed_m_s == pytest.approx(100.0 / 30.0, abs=2.0)


def test_target_never_below_floor():
    c = make_corridor(0.0, -29.0, spacing_m=200.0)
    cfg = AdvisoryConfig()
    adv = recommend(0.0, cfg.speed_limit_m_s, 0.0, c, cfg)
    assert adv.target_speed_m_s >= cfg.min_cruise_m_s


def test_past_both_lights_recommends_limit():
    c = make_corridor(0.0, 0.0, spacing_m=400.0)
    cfg = AdvisoryConfig()
    adv = recommend(550.0, 10.0, 40.0, c, cfg)
    assert adv.target_speed_m_s == pytest.approx(cfg.speed_limit_m_s)


def test_advised_driver_never_crosses_red():
    for x, y in ((0.0, 0.0), (-15.0, 15.0), (15.0, -30.0)):
        c = make_corridor(x, y, spacing_m=400.0)
        traj = simulate_advised_driver(c, VehicleParams())
        traj.validate()
        for sig in c.signals:
            t_cross = traj.crossing_time(sig.stop_line_m)
            assert phase_at(sig, t_cross) is Phase.GREEN


def test_advisory_log_populated():
    c = make_corridor(15.0, 15.0, spacing_m=400.0)
    log = []
    simulate_advised_driver(c, VehicleParams(), log=log)
    assert len(log) > 10
    t0 = log[0][0]
    t1 = log[1][0]
    assert t1 - t0 == pytest.approx(1.0)  # default 1 Hz updates


def test_ideal_driver_tracks_faster_than_sluggish():
    c = make_corridor(0.0, 0.0, spacing_m=400.0)
    ideal = simulate_advised_driver(c, VehicleParams(), IDEAL_DRIVER)
    sluggish = simulate_advised_driver(
        c, VehicleParams(), DriverFollowingModel(speed_tracking_time_constant_s=6.0)
    )
    # both feasible; the ideal driver settles to the advised speed sooner
    ideal.validate()
    sluggish.validate()
    assert ideal.trip_time_s <= sluggish.trip_time_s + 5.0


def test_invalid_parameters_rejected():
    with pytest.raises(ValueError):
        AdvisoryConfig(update_rate_hz=0.0)
    with pytest.raises(ValueError):
        AdvisoryConfig(min_cruise_m_s=30.0)
    with pytest.raises(ValueError):
        DriverFollowingModel(reaction_delay_s=-1.0)
