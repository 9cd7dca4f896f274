"""Rule-based regular driver: the reference trajectory and trip-time budget."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .corridor import Corridor, Phase, phase_at
from .powertrain import VehicleParams
from .trajectory import Trajectory, from_samples

_MAX_SIM_TIME_S = 3600.0


@dataclass(frozen=True)
class RegularDriverRules:
    sight_distance_m: float = 75.0
    accel_max_m_s2: float = 2.0
    decel_min_m_s2: float = -4.0
    timestep_s: float = 0.1

    def __post_init__(self) -> None:
        if self.sight_distance_m <= 0.0:
            raise ValueError("sight distance must be > 0")
        if not (self.accel_max_m_s2 > 0.0 > self.decel_min_m_s2):
            raise ValueError("need accel_max > 0 > decel_min")
        if self.timestep_s <= 0.0:
            raise ValueError("timestep must be > 0")


def _visible_red_light(c: Corridor, x: float, t: float, sight_m: float):
    """Nearest downstream stop line that is currently Red and within sight."""
    for idx, sig in enumerate(c.signals):
        d = sig.stop_line_m - x
        if d < -1e-9:
            continue
        if d <= sight_m and phase_at(sig, t) is Phase.RED:
            return idx, d
        return None  # nearest unpassed light is either green or out of sight
    return None


def stopping_acceleration(v: float, gap_m: float, rules: RegularDriverRules) -> float:
    """Constant-rate deceleration that stops exactly at the line, clamped."""
    if gap_m <= 0.0:
        return rules.decel_min_m_s2
    return max(-v * v / (2.0 * gap_m), rules.decel_min_m_s2)


def simulate_regular(
    c: Corridor, v: VehicleParams, r: RegularDriverRules | None = None
) -> Trajectory:
    """Closed-loop regular-driver simulation.

    Enters at the speed limit at t=0. Brakes at v^2/(2d) toward a red light
    seen within the sight distance, holds at the line until green, otherwise
    accelerates at the maximum rate toward the speed limit. Semi-implicit
    integration; never crosses a stop line on Red (an emergency clamp pins
    the vehicle at the line if the comfort-limited deceleration falls short,
    flagged on the trajectory).
    """
    r = r or RegularDriverRules()
    dt = r.timestep_s
    limit = c.speed_limit_m_s
    length = c.length_m

    t = 0.0
    x = 0.0
    speed = limit
    ts, xs, vs, accs = [t], [x], [speed], []
    emergency = False

    while x < length:
        if t > _MAX_SIM_TIME_S:
            raise RuntimeError("regular-driver simulation did not terminate")
        seen = _visible_red_light(c, x, t, r.sight_distance_m)
        holding = False
        if seen is not None:
            idx, gap = seen
            if speed <= 0.25 and gap <= 1.0:
                # crawl has effectively converged; stand until green
                a = -speed / dt
                holding = True
            else:
                a = stopping_acceleration(speed, gap, r)
        else:
            a = min(r.accel_max_m_s2, (limit - speed) / dt) if speed < limit else 0.0
            a = max(a, 0.0)

        v_new = max(speed + a * dt, 0.0)
        v_new = min(v_new, limit)
        x_new = x + v_new * dt

        if seen is not None and not holding:
            line = c.signals[seen[0]].stop_line_m
            if x_new >= line - 1e-9 and phase_at(c.signals[seen[0]], t + dt) is Phase.RED:
                # comfort braking was insufficient; pin at the line
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

    # redo the overshooting step as a partial step ending exactly at the
    # corridor end, keeping the constant-acceleration kinematics intact
    if xs[-1] > length and len(xs) > 1 and xs[-1] > xs[-2]:
        rem = length - xs[-2]
        v0, a = vs[-2], accs[-1]
        disc = v0 * v0 + 2.0 * a * rem
        if abs(a) > 1e-12 and disc >= 0.0:
            dt_p = (math.sqrt(disc) - v0) / a
        else:
            dt_p = rem / max(v0, 1e-9)
        ts[-1] = ts[-2] + dt_p
        xs[-1] = length
        vs[-1] = min(max(v0 + a * dt_p, 0.0), limit)
    accs.append(0.0)

    traj = from_samples(ts, xs, vs, accs)
    traj.emergency_stop = emergency
    return traj
