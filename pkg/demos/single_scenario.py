"""Walk through one corridor scenario end to end.

A vehicle enters the control zone at the speed limit, 100 m before the first
of two traffic lights. The regular driver has no timing information: it
cruises, brakes hard when it sees a red within 75 m, waits, and accelerates
flat out on green. The optimizer knows the full signal schedule and plans a
minimum-cost trajectory (electricity plus battery wear) that arrives no later
than the regular driver."""
from pathlib import Path

from ecocorridor import ScenarioSpec, VehicleParams, run_scenario
from ecocorridor.report import render_scenario_svg, write_trajectories

OUT = Path(__file__).resolve().parent / "output"


def main() -> None:
    # Both lights turn red 15 s after the vehicle enters; 800 m apart.
    spec = ScenarioSpec(
        time_to_red_first_s=15.0,
        time_to_red_second_s=15.0,
        spacing_m=800.0,
        exit_buffer_m=200.0,
        vehicle=VehicleParams(regen_enabled=False),
    )
    result = run_scenario(spec)

    reg, eco = result.regular_cost, result.eco_cost
    print(f"trip length: {spec.corridor().length_m:.0f} m, "
          f"time budget {result.budget_s:.1f} s")
    print(f"regular driver: ${reg.total_usd:.4f} "
          f"({reg.energy_kwh * 1000:.0f} Wh, trip {reg.trip_time_s:.1f} s)")
    print(f"eco driver:     ${eco.total_usd:.4f} "
          f"({eco.energy_kwh * 1000:.0f} Wh, trip {eco.trip_time_s:.1f} s)")
    print(f"cost reduction: {result.reduction_pct:.1f}%")
    print(f"  energy saving    {result.energy_reduction_pct:.1f}%")
    print(f"  decay reduction  {result.decay_reduction_pct:.1f}%")

    paths = write_trajectories(result, OUT)
    paths.append(render_scenario_svg(result, OUT / "single_scenario.svg"))
    for p in paths:
        print(f"wrote {p}")


if __name__ == "__main__":
    main()
