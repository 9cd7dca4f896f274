"""Compare battery wear for two pack sizes over the full sweep.

The long-range variant (75 kWh, heavier) runs each trip at a lower C-rate
than the standard pack (54 kWh), so the same drive consumes a smaller slice
of the pack's lifetime Ah throughput. The study runs every timing/spacing
combination for both variants and reports the average reduction in per-trip
capacity decay, separately for the regular and the eco driver."""
from ecocorridor import ScenarioSpec, VehicleParams, battery_size_study
from ecocorridor.report import write_decay_comparison_csv

from pathlib import Path

OUT = Path(__file__).resolve().parent / "output"


def main() -> None:
    base = ScenarioSpec(
        time_to_red_first_s=15.0,
        time_to_red_second_s=15.0,
        exit_buffer_m=200.0,
        vehicle=VehicleParams(regen_enabled=False),
    )
    print("running 2 x 64 scenarios, this takes a few minutes...")
    res = battery_size_study(base)
    print(f"average decay reduction of the 75 kWh pack vs 54 kWh:")
    print(f"  regular driver: {res.average('regular'):.1f}%")
    print(f"  eco driver:     {res.average('eco'):.1f}%")
    path = write_decay_comparison_csv(res, OUT / "battery_size.csv")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
