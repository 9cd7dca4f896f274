"""Longitudinal EV power model and segment energy integration."""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class VehicleParams:
    """Road-load and efficiency-chain parameters of the simulated EV."""

    mass_kg: float = 1611.0
    rolling_c1: float = 0.0065
    rolling_c2: float = 4.92e-5  # s/m
    frontal_area_m2: float = 2.22
    drag_coeff: float = 0.23
    air_density_kg_m3: float = 1.2
    gravity_m_s2: float = 9.81
    eff_trans: float = 0.8536
    eff_motor: float = 0.90
    eff_inverter: float = 0.95
    regen_enabled: bool = True
    regen_power_cap_w: float = 60e3

    def __post_init__(self) -> None:
        for name in ("eff_trans", "eff_motor", "eff_inverter"):
            e = getattr(self, name)
            if not 0.0 < e <= 1.0:
                raise ValueError(f"{name} must be in (0, 1], got {e}")
        for name in ("mass_kg", "frontal_area_m2", "air_density_kg_m3", "gravity_m_s2"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        if self.rolling_c1 < 0.0 or self.rolling_c2 < 0.0:
            raise ValueError("rolling coefficients must be >= 0")
        if self.regen_power_cap_w < 0.0:
            raise ValueError("regen_power_cap_w must be >= 0")

    @property
    def eff_chain(self) -> float:
        return self.eff_trans * self.eff_motor * self.eff_inverter


@dataclass(frozen=True)
class KinematicSegment:
    """Constant-acceleration distance step used for energy integration."""

    v_start_m_s: float
    v_end_m_s: float
    length_m: float
    grade: float = 0.0

    def __post_init__(self) -> None:
        if self.v_start_m_s < 0.0 or self.v_end_m_s < 0.0:
            raise ValueError("segment speeds must be >= 0")
        if self.length_m <= 0.0:
            raise ValueError("segment length must be > 0")


class ZeroDurationSegmentError(ValueError):
    """Both endpoint speeds are zero: the segment has no finite duration."""


def wheel_power(v: float, a: float, grade: float, p: VehicleParams) -> float:
    """Tractive power at the wheels (signed, W)."""
    theta = math.atan(grade)
    m, g = p.mass_kg, p.gravity_m_s2
    force = (
        m * a
        + m * g * math.sin(theta)
        + (p.rolling_c1 + p.rolling_c2 * v) * m * g * math.cos(theta)
        + 0.5 * p.air_density_kg_m3 * p.frontal_area_m2 * p.drag_coeff * v * v
    )
    return force * v


def power_demand(v: float, a: float, grade: float, p: VehicleParams) -> float:
    """Battery-side power demand (W).

    Positive wheel power is divided by the efficiency chain; negative wheel
    power is recuperated through the same chain multiplicatively, limited by
    the regen power cap (the excess is dissipated by friction brakes), or
    discarded entirely when regen is disabled.
    """
    if v < 0.0:
        raise ValueError("speed must be >= 0")
    p_w = wheel_power(v, a, grade, p)
    if p_w >= 0.0:
        return p_w / p.eff_chain
    if not p.regen_enabled:
        return 0.0
    return max(p_w * p.eff_chain, -p.regen_power_cap_w)


def segment_energy(seg: KinematicSegment, p: VehicleParams) -> tuple[float, float, float]:
    """Return (duration s, battery energy J, mean battery power W) for a segment.

    Acceleration is implied by the endpoint speeds over the segment length;
    power is evaluated at the midpoint speed, which is exact for constant
    speed and second-order accurate otherwise.
    """
    v0, v1, dx = seg.v_start_m_s, seg.v_end_m_s, seg.length_m
    if v0 + v1 <= 0.0:
        raise ZeroDurationSegmentError(
            "segment with v_start = v_end = 0 has no finite duration"
        )
    a = (v1 * v1 - v0 * v0) / (2.0 * dx)
    duration = 2.0 * dx / (v0 + v1)
    v_mid = 0.5 * (v0 + v1)
    power = power_demand(v_mid, a, seg.grade, p)
    return duration, power * duration, power


def segment_acceleration(v_start: float, v_end: float, length_m: float) -> float:
    """Constant acceleration implied by endpoint speeds over a distance."""
    return (v_end * v_end - v_start * v_start) / (2.0 * length_m)
