"""Rule-based speed advisory and an imperfect driver-following model."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .baseline import RegularDriverRules, _visible_red_light, stopping_acceleration
from .corridor import Corridor, Phase, SignalSchedule, next_green_onset, next_red_onset, phase_at
from .powertrain import VehicleParams
from .trajectory import Trajectory, from_samples

_MAX_SIM_TIME_S = 3600.0


class Action(Enum):
    ACCELERATE = "accelerate"
    CRUISE = "cruise"
    BRAKE = "brake"


@dataclass(frozen=True)
class Advisory:
    target_speed_m_s: float
    action: Action


@dataclass(frozen=True)
class AdvisoryConfig:
    speed_limit_m_s: float = 24.583
    update_rate_hz: float = 1.0
    min_cruise_m_s: float = 4.5
    accel_m_s2: float = 2.0  # assumed when judging whether a window is makeable
    lookahead_lights: int = 2

    def __post_init__(self) -> None:
        if self.update_rate_hz <= 0.0:
            raise ValueError("update rate must be > 0")
        if not 0.0 < self.min_cruise_m_s < self.speed_limit_m_s:
            raise ValueError("need 0 < min_cruise < speed_limit")
        if self.accel_m_s2 <= 0.0:
            raise ValueError("accel must be > 0")


@dataclass(frozen=True)
class DriverFollowingModel:
    reaction_delay_s: float = 1.0
    speed_tracking_time_constant_s: float = 2.0
    low_speed_drift_m_s: float = 0.5
    drift_below_m_s: float = 10.0

    def __post_init__(self) -> None:
        if self.reaction_delay_s < 0.0:
            raise ValueError("reaction delay must be >= 0")
        if self.speed_tracking_time_constant_s <= 0.0:
            raise ValueError("tracking time constant must be > 0")


IDEAL_DRIVER = DriverFollowingModel(
    reaction_delay_s=0.0, speed_tracking_time_constant_s=1e-6, low_speed_drift_m_s=0.0
)


def _min_travel_time(d: float, v: float, cfg: AdvisoryConfig) -> float:
    """Quickest time to cover d starting at v: accelerate, then cruise."""
    limit, a = cfg.speed_limit_m_s, cfg.accel_m_s2
    v = min(max(v, 0.0), limit)
    d_accel = (limit * limit - v * v) / (2.0 * a)
    if d_accel >= d:
        return (math.sqrt(v * v + 2.0 * a * d) - v) / a
    return (limit - v) / a + (d - d_accel) / limit


def _light_target(
    sig: SignalSchedule, d: float, v: float, t: float, cfg: AdvisoryConfig
) -> tuple[float, float]:
    """(cruise target, floor to still make the green window) for one light."""
    limit = cfg.speed_limit_m_s
    if phase_at(sig, t) is Phase.GREEN:
        remaining_green = next_red_onset(sig, t) - t
        if _min_travel_time(d, v, cfg) <= remaining_green:
            floor = d / remaining_green if remaining_green > 0 else limit
            return limit, floor
        t_on = next_green_onset(sig, next_red_onset(sig, t))
    else:
        t_on = next_green_onset(sig, t)
    target = d / (t_on - t) if t_on > t else limit
    floor = d / (t_on + sig.green_s - t)
    return target, floor


def recommend(
    x: float, v: float, t: float, c: Corridor, cfg: AdvisoryConfig
) -> Advisory:
    """Target cruising speed to pass the upcoming lights on green.

    The nearest unpassed light sets the primary target (arrive at the next
    green onset, or keep the limit if the current green window is makeable);
    the rule is re-applied to the second light from the projected arrival
    state, and the slower of the two wins as long as it still makes the
    first light's window.
    """
    limit = cfg.speed_limit_m_s
    unpassed = [s for s in c.signals if x < s.stop_line_m - 1e-9]
    if not unpassed:
        target = limit
    else:
        first = unpassed[0]
        d1 = first.stop_line_m - x
        target1, floor1 = _light_target(first, d1, v, t, cfg)
        target = target1
        if len(unpassed) > 1 and cfg.lookahead_lights >= 2:
            second = unpassed[1]
            v_plan = min(max(target1, cfg.min_cruise_m_s), limit)
            t1 = t + d1 / v_plan
            d2 = second.stop_line_m - first.stop_line_m
            target2, _ = _light_target(second, d2, v_plan, t1, cfg)
            # slowing for the second light must not forfeit the first window
            target = max(min(target1, target2), floor1)
    target = min(max(target, cfg.min_cruise_m_s), limit)
    if target < v - 0.25:
        action = Action.BRAKE
    elif target > v + 0.25:
        action = Action.ACCELERATE
    else:
        action = Action.CRUISE
    return Advisory(target, action)


def simulate_advised_driver(
    c: Corridor,
    v: VehicleParams,
    d: DriverFollowingModel | None = None,
    cfg: AdvisoryConfig | None = None,
    rules: RegularDriverRules | None = None,
    log: list | None = None,
) -> Trajectory:
    """Closed-loop simulation of a driver following the advisory.

    The driver tracks the reaction-delayed recommendation with first-order
    dynamics plus a low-speed drift bias; the regular-driver stopping rule
    overrides the advisory whenever a red stop line is within sight, so the
    vehicle never crosses on red.
    """
    d = d or DriverFollowingModel()
    cfg = cfg or AdvisoryConfig(speed_limit_m_s=c.speed_limit_m_s)
    rules = rules or RegularDriverRules()
    dt = rules.timestep_s
    limit = c.speed_limit_m_s
    length = c.length_m
    update_dt = 1.0 / cfg.update_rate_hz

    t, x, speed = 0.0, 0.0, limit
    ts, xs, vs, accs = [t], [x], [speed], []
    issued: list[tuple[float, float]] = []  # (time issued, target)
    next_update = 0.0
    emergency = False

    while x < length:
        if t > _MAX_SIM_TIME_S:
            raise RuntimeError("advised-driver simulation did not terminate")
        if t >= next_update - 1e-9:
            adv = recommend(x, speed, t, c, cfg)
            issued.append((t, adv.target_speed_m_s))
            if log is not None:
                log.append((t, x, speed, adv.action.value, adv.target_speed_m_s))
            next_update += update_dt

        target = limit
        for t_issue, tgt in issued:
            if t_issue <= t - d.reaction_delay_s + 1e-9:
                target = tgt
        if target < d.drift_below_m_s:
            target = target + d.low_speed_drift_m_s

        seen = _visible_red_light(c, x, t, rules.sight_distance_m)
        holding = stopping = False
        if seen is not None:
            idx, gap = seen
            # unlike the regular driver, the advised one knows the signal
            # schedule: approach a visible red at the pace that reaches the
            # stop line exactly as it turns green; when that pace is a
            # crawl, stopping and waiting is cheaper than inching forward
            onset = next_green_onset(c.signals[idx], t)
            if speed <= 0.25 and gap <= 1.0:
                holding = True
            else:
                # aim half a second past the onset: the discrete dynamics
                # track the pace imperfectly, and reaching the line even a
                # fraction early would force a full stop
                pace = gap / max(onset + 0.5 - t, dt)
                if pace < 2.0:
                    stopping = True
                else:
                    target = min(target, pace)

        # floor the tracking time constant at the simulation step so a
        # highly responsive driver settles on the target instead of
        # overshooting it every step and chattering between full throttle
        # and full brake
        a = (target - speed) / max(d.speed_tracking_time_constant_s, dt)
        a = min(max(a, rules.decel_min_m_s2), rules.accel_max_m_s2)
        if holding:
            a = -speed / dt
        elif stopping:
            a = min(a, stopping_acceleration(speed, seen[1], rules))

        v_new = min(max(speed + a * dt, 0.0), limit)
        x_new = x + v_new * dt

        if seen is not None and not holding:
            line = c.signals[seen[0]].stop_line_m
            if x_new >= line - 1e-9 and phase_at(c.signals[seen[0]], t + dt) is Phase.RED:
                if v_new > 0.05:
                    emergency = True
                x_new = line
                v_new = 0.0
                a = (v_new - speed) / dt

        accs.append(a)
        t += dt
        x, speed = x_new, v_new
        ts.append(t)
        xs.append(x)
        vs.append(speed)

    if xs[-1] > length and len(xs) > 1 and xs[-1] > xs[-2]:
        w = (length - xs[-2]) / (xs[-1] - xs[-2])
        ts[-1] = ts[-2] + w * (ts[-1] - ts[-2])
        xs[-1] = length
    accs.append(0.0)

    traj = from_samples(ts, xs, vs, accs)
    traj.emergency_stop = emergency
    return traj
