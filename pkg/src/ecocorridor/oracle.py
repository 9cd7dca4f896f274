"""Randomized tiny-instance verification of the optimizer.

Generates small corridors and coarse grids where every feasible path can be
enumerated, then checks that dynamic programming finds exactly the same
minimum. Both sides share one arc-cost function, so agreement is exact."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .battery import BatteryModel
from .corridor import Corridor, SignalSchedule
from .dp import DpGridSpec, verify_against_enumeration
from .powertrain import VehicleParams


@dataclass
class OracleReport:
    cases: int = 0
    failures: int = 0
    paths_total: int = 0
    lines: list[str] = field(default_factory=list)


def random_tiny_instance(rng: np.random.Generator):
    """A corridor/grid pair small enough for exhaustive enumeration.

    Bounds: at most 5 distance stages, 6 speed bins and 25 time bins.
    """
    step_m = 50.0
    n_stages = int(rng.integers(3, 6))  # 3..5 arcs
    length = n_stages * step_m
    # both stop lines on interior nodes
    first = int(rng.integers(1, n_stages - 1))
    second = int(rng.integers(first + 1, n_stages))
    limit = float(rng.choice([8.0, 10.0, 12.0]))
    speed_step = limit / int(rng.integers(3, 6))  # 4..6 speed bins incl. zero
    red = float(rng.choice([4.0, 6.0, 8.0]))
    signals = (
        SignalSchedule(first * step_m, float(rng.uniform(-red, red)), red, red),
        SignalSchedule(second * step_m, float(rng.uniform(-red, red)), red, red),
    )
    c = Corridor(
        entry_buffer_m=first * step_m,
        light_spacing_m=(second - first) * step_m,
        exit_buffer_m=(n_stages - second) * step_m,
        speed_limit_m_s=limit,
        signals=signals,
    )
    budget = float(length / limit * rng.uniform(1.5, 2.5))
    dt = 1.0
    while budget / dt + 2 > 25:  # respect the time-bin bound
        dt *= 2.0
    g = DpGridSpec(
        distance_step_m=step_m,
        speed_step_m_s=speed_step,
        time_step_s=dt,
        boundary_time_step_s=dt,  # uniform bins keep enumeration simple
        signal_margin_s=0.0,
    )
    return c, g, budget


def run_oracle_suite(cases: int = 50, seed: int = 0, verbose: bool = False) -> OracleReport:
    """Run randomized DP-vs-enumeration comparisons and collect a report."""
    rng = np.random.default_rng(seed)
    v = VehicleParams()
    b = BatteryModel()
    report = OracleReport()
    while report.cases < cases:
        c, g, budget = random_tiny_instance(rng)
        out = verify_against_enumeration(c, v, b, g, budget_s=budget)
        report.cases += 1
        report.paths_total += out["paths_enumerated"]
        tag = "ok" if out["agree"] else "MISMATCH"
        line = (
            f"case {report.cases:3d}: dp={out['dp_value']} "
            f"enum={out['enumeration_value']} "
            f"paths={out['paths_enumerated']} {tag}"
        )
        if not out["agree"]:
            report.failures += 1
            report.lines.append(line)
        elif verbose:
            report.lines.append(line)
    return report
