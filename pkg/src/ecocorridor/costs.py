"""Cost accounting shared by the optimizer and the trajectory evaluator."""
from __future__ import annotations

from dataclasses import dataclass

from .battery import BatteryModel, decay_cost_rate, soh_decay_rate
from .powertrain import KinematicSegment, VehicleParams, power_demand, segment_energy

J_PER_KWH = 3.6e6


@dataclass(frozen=True)
class Prices:
    electricity_usd_per_kwh: float = 0.12

    def __post_init__(self) -> None:
        if self.electricity_usd_per_kwh < 0.0:
            raise ValueError("electricity price must be >= 0")


@dataclass(frozen=True)
class CostBreakdown:
    electricity_usd: float
    battery_usd: float
    trip_time_s: float
    energy_kwh: float
    soh_delta: float

    @property
    def total_usd(self) -> float:
        return self.electricity_usd + self.battery_usd

    def __add__(self, other: "CostBreakdown") -> "CostBreakdown":
        return CostBreakdown(
            self.electricity_usd + other.electricity_usd,
            self.battery_usd + other.battery_usd,
            self.trip_time_s + other.trip_time_s,
            self.energy_kwh + other.energy_kwh,
            self.soh_delta + other.soh_delta,
        )


ZERO_COST = CostBreakdown(0.0, 0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class ArcCost:
    """Bookkeeping for one constant-acceleration distance step."""

    duration_s: float
    power_w: float
    energy_j: float
    electricity_usd: float
    decay_usd: float
    soh_delta: float

    @property
    def total_usd(self) -> float:
        return self.electricity_usd + self.decay_usd


def motion_arc_cost(
    v_start: float,
    v_end: float,
    length_m: float,
    grade: float,
    vp: VehicleParams,
    bat: BatteryModel,
    prices: Prices,
) -> ArcCost:
    """Electricity + battery-decay cost of one distance step."""
    duration, energy_j, power = segment_energy(
        KinematicSegment(v_start, v_end, length_m, grade), vp
    )
    elec = prices.electricity_usd_per_kwh * energy_j / J_PER_KWH
    soh = soh_decay_rate(power, bat) * duration
    decay = decay_cost_rate(power, bat) * duration
    return ArcCost(duration, power, energy_j, elec, decay, soh)


def hold_arc_cost(
    duration_s: float,
    idle_load_w: float,
    bat: BatteryModel,
    prices: Prices,
) -> ArcCost:
    """Cost of standing still (wait arc): auxiliary idle load only."""
    energy_j = idle_load_w * duration_s
    elec = prices.electricity_usd_per_kwh * energy_j / J_PER_KWH
    soh = soh_decay_rate(idle_load_w, bat) * duration_s
    decay = decay_cost_rate(idle_load_w, bat) * duration_s
    return ArcCost(duration_s, idle_load_w, energy_j, elec, decay, soh)


def step_power(v0: float, v1: float, dt: float, grade: float, vp: VehicleParams) -> float:
    """Battery power over one time step, at midpoint speed."""
    if v0 + v1 <= 0.0:
        return 0.0
    a = (v1 - v0) / dt
    return power_demand(0.5 * (v0 + v1), a, grade, vp)
