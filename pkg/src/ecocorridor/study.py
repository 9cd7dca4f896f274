"""Scenario runner, parametric sweep harness and cost accounting."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .advisory import AdvisoryConfig, DriverFollowingModel, simulate_advised_driver
from .baseline import RegularDriverRules, simulate_regular
from .battery import BatteryModel, decay_cost_rate, soh_decay_rate
from .corridor import Corridor, make_corridor
from .costs import CostBreakdown, J_PER_KWH, Prices, step_power
from .dp import DpGridSpec, DpResult, InfeasibleScenarioError, optimize, time_budget
from .powertrain import VehicleParams
from .trajectory import Trajectory

VEHICLE_VARIANTS = {
    "standard": {"capacity_kwh": 54.0, "mass_kg": 1611.0},
    "long_range": {"capacity_kwh": 75.0, "mass_kg": 1726.0},
}

DEFAULT_TIMINGS_S = (-30.0, -15.0, 0.0, 15.0)
DEFAULT_SPACINGS_M = (200.0, 400.0, 600.0, 800.0)


@dataclass(frozen=True)
class ScenarioSpec:
    """One sweep cell: corridor timing/geometry plus vehicle and pricing."""

    time_to_red_first_s: float
    time_to_red_second_s: float
    spacing_m: float = 400.0
    entry_buffer_m: float = 100.0
    exit_buffer_m: float = 100.0
    speed_limit_m_s: float = 24.583
    red_s: float = 30.0
    green_s: float = 30.0
    variant: str = "standard"
    decay_multiplier: float = 1.0
    vehicle: VehicleParams = field(default_factory=VehicleParams)
    battery: BatteryModel = field(default_factory=BatteryModel)
    prices: Prices = field(default_factory=Prices)
    rules: RegularDriverRules = field(default_factory=RegularDriverRules)
    grid: DpGridSpec = field(default_factory=DpGridSpec)
    label: str = ""

    def resolved_vehicle(self) -> VehicleParams:
        return replace(self.vehicle, mass_kg=VEHICLE_VARIANTS[self.variant]["mass_kg"])

    def resolved_battery(self) -> BatteryModel:
        return replace(
            self.battery,
            capacity_kwh=VEHICLE_VARIANTS[self.variant]["capacity_kwh"],
            decay_multiplier=self.decay_multiplier,
        )

    def corridor(self) -> Corridor:
        return make_corridor(
            self.time_to_red_first_s,
            self.time_to_red_second_s,
            spacing_m=self.spacing_m,
            entry_buffer_m=self.entry_buffer_m,
            exit_buffer_m=self.exit_buffer_m,
            speed_limit_m_s=self.speed_limit_m_s,
            red_s=self.red_s,
            green_s=self.green_s,
        )

    @property
    def cell_name(self) -> str:
        return f"timing_{self.time_to_red_first_s:g}_{self.time_to_red_second_s:g}_s{self.spacing_m:g}"


def evaluate_trajectory(
    traj: Trajectory,
    v: VehicleParams,
    b: BatteryModel,
    prices: Prices | None = None,
    grade: float = 0.0,
) -> CostBreakdown:
    """Integrate electricity and decay cost over a trajectory.

    Fills the trajectory's power/energy/SOH columns in place; idempotent.
    """
    prices = prices or Prices()
    traj.validate()
    n = len(traj)
    elec = decay = energy = soh = 0.0
    traj.p_batt = np.zeros(n)
    traj.energy_cum = np.zeros(n)
    traj.soh_delta_cum = np.zeros(n)
    for k in range(n - 1):
        dt = float(traj.t[k + 1] - traj.t[k])
        p = step_power(float(traj.v[k]), float(traj.v[k + 1]), dt, grade, v)
        traj.p_batt[k] = p
        energy += p * dt
        elec += prices.electricity_usd_per_kwh * p * dt / J_PER_KWH
        soh += soh_decay_rate(p, b) * dt
        decay += decay_cost_rate(p, b) * dt
        traj.energy_cum[k + 1] = energy
        traj.soh_delta_cum[k + 1] = soh
    return CostBreakdown(elec, decay, traj.trip_time_s, energy / J_PER_KWH, soh)


@dataclass
class ScenarioResult:
    spec: ScenarioSpec
    regular: Trajectory
    eco: Trajectory
    regular_cost: CostBreakdown
    eco_cost: CostBreakdown
    budget_s: float
    dp: DpResult

    @property
    def reduction_pct(self) -> float:
        rt = self.regular_cost.total_usd
        return 100.0 * (rt - self.eco_cost.total_usd) / rt if rt > 0 else 0.0

    @property
    def decay_reduction_pct(self) -> float:
        rs = abs(self.regular_cost.soh_delta)
        return 100.0 * (rs - abs(self.eco_cost.soh_delta)) / rs if rs > 0 else 0.0

    @property
    def energy_reduction_pct(self) -> float:
        re = self.regular_cost.energy_kwh
        return 100.0 * (re - self.eco_cost.energy_kwh) / re if re > 0 else 0.0


def run_scenario(spec: ScenarioSpec) -> ScenarioResult:
    """Regular driver first; its trip time caps the optimizer's arrival.

    A scenario that is infeasible on the default grid is retried once with
    halved speed bins: quantized acceleration occasionally just misses a
    green window that a finer grid can reach.
    """
    c = spec.corridor()
    vp = spec.resolved_vehicle()
    bat = spec.resolved_battery()
    regular = simulate_regular(c, vp, spec.rules)
    budget = regular.trip_time_s
    if spec.grid.time_budget_mode == "buffered":
        budget *= 1.0 + spec.grid.time_buffer_frac
    try:
        res = optimize(c, vp, bat, spec.grid, spec.prices, spec.rules, budget_s=budget)
    except InfeasibleScenarioError:
        fine = replace(spec.grid, speed_step_m_s=spec.grid.speed_step_m_s / 2.0)
        res = optimize(c, vp, bat, fine, spec.prices, spec.rules, budget_s=budget)
    regular_cost = evaluate_trajectory(regular, vp, bat, spec.prices)
    # the DP breakdown is the eco cost; evaluating its trajectory matches it
    eco_cost = res.breakdown
    evaluate_trajectory(res.trajectory, vp, bat, spec.prices)
    return ScenarioResult(spec, regular, res.trajectory, regular_cost, eco_cost, budget, res)


@dataclass
class SweepCell:
    timing: tuple[float, float]
    spacing_m: float
    result: ScenarioResult | None
    error: str = ""


@dataclass
class SweepResult:
    timings: list[tuple[float, float]]
    spacings: list[float]
    cells: list[SweepCell]

    def cell(self, x: float, y: float, s: float) -> SweepCell:
        for c in self.cells:
            if c.timing == (x, y) and c.spacing_m == s:
                return c
        raise KeyError((x, y, s))

    @property
    def grand_average_reduction_pct(self) -> float:
        vals = [c.result.reduction_pct for c in self.cells if c.result is not None]
        return float(np.mean(vals)) if vals else float("nan")

    def column_average_reduction_pct(self, s: float) -> float:
        vals = [
            c.result.reduction_pct
            for c in self.cells
            if c.result is not None and c.spacing_m == s
        ]
        return float(np.mean(vals)) if vals else float("nan")


def sweep_specs(
    base: ScenarioSpec,
    timings_s=DEFAULT_TIMINGS_S,
    spacings_m=DEFAULT_SPACINGS_M,
) -> list[ScenarioSpec]:
    specs = []
    for x in timings_s:
        for y in timings_s:
            for s in spacings_m:
                specs.append(
                    replace(
                        base,
                        time_to_red_first_s=float(x),
                        time_to_red_second_s=float(y),
                        spacing_m=float(s),
                    )
                )
    return specs


def _run_cell(spec: ScenarioSpec) -> SweepCell:
    timing = (spec.time_to_red_first_s, spec.time_to_red_second_s)
    try:
        return SweepCell(timing, spec.spacing_m, run_scenario(spec))
    except Exception as exc:  # scenario failures are recorded, not fatal
        return SweepCell(timing, spec.spacing_m, None, error=str(exc))


def sweep(
    base: ScenarioSpec,
    timings_s=DEFAULT_TIMINGS_S,
    spacings_m=DEFAULT_SPACINGS_M,
    jobs: int = 1,
) -> SweepResult:
    """Run the full timing x spacing matrix; cells are independent and the
    aggregation order is fixed, so the result is identical for any job count."""
    specs = sweep_specs(base, timings_s, spacings_m)
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            cells = pool.map(_run_cell, specs)
    else:
        cells = [_run_cell(s) for s in specs]
    timings = [(float(x), float(y)) for x in timings_s for y in timings_s]
    return SweepResult(timings, [float(s) for s in spacings_m], cells)


@dataclass
class DecayComparisonCell:
    timing: tuple[float, float]
    spacing_m: float
    regular_reduction_pct: float
    eco_reduction_pct: float
    error: str = ""


@dataclass
class DecayComparisonResult:
    """Battery-size study: SOH decay reduction of the larger pack."""

    cells: list[DecayComparisonCell]

    def average(self, column: str) -> float:
        vals = [
            getattr(c, f"{column}_reduction_pct") for c in self.cells if not c.error
        ]
        return float(np.mean(vals)) if vals else float("nan")


def battery_size_study(
    base: ScenarioSpec,
    timings_s=DEFAULT_TIMINGS_S,
    spacings_m=DEFAULT_SPACINGS_M,
    small_variant: str = "standard",
    large_variant: str = "long_range",
    decay_multiplier: float = 10.0,
    jobs: int = 1,
) -> DecayComparisonResult:
    # the comparison targets a high-decay chemistry, hence the 10x default
    base = replace(base, decay_multiplier=decay_multiplier)
    small = sweep(replace(base, variant=small_variant), timings_s, spacings_m, jobs)
    large = sweep(replace(base, variant=large_variant), timings_s, spacings_m, jobs)
    cells = []
    for cs, cl in zip(small.cells, large.cells):
        if cs.result is None or cl.result is None:
            cells.append(
                DecayComparisonCell(cs.timing, cs.spacing_m, float("nan"), float("nan"),
                                    error=cs.error or cl.error)
            )
            continue

        def red(a: CostBreakdown, b: CostBreakdown) -> float:
            sa, sb = abs(a.soh_delta), abs(b.soh_delta)
            return 100.0 * (sa - sb) / sa if sa > 0 else 0.0

        cells.append(
            DecayComparisonCell(
                cs.timing,
                cs.spacing_m,
                red(cs.result.regular_cost, cl.result.regular_cost),
                red(cs.result.eco_cost, cl.result.eco_cost),
            )
        )
    return DecayComparisonResult(cells)


def run_advisory_scenario(
    spec: ScenarioSpec,
    driver: DriverFollowingModel | None = None,
    advisory_cfg: AdvisoryConfig | None = None,
):
    """Regular vs advised driver on one scenario (field-test style)."""
    c = spec.corridor()
    vp = spec.resolved_vehicle()
    bat = spec.resolved_battery()
    cfg = advisory_cfg or AdvisoryConfig(speed_limit_m_s=c.speed_limit_m_s)
    log: list = []
    regular = simulate_regular(c, vp, spec.rules)
    advised = simulate_advised_driver(c, vp, driver, cfg, spec.rules, log=log)
    return {
        "regular": regular,
        "advised": advised,
        "regular_cost": evaluate_trajectory(regular, vp, bat, spec.prices),
        "advised_cost": evaluate_trajectory(advised, vp, bat, spec.prices),
        "log": log,
    }
