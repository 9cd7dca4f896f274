"""Control-zone geometry and signal phase queries."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum


class Phase(Enum):
    GREEN = "green"
    RED = "red"


@dataclass(frozen=True)
class SignalSchedule:
    """Periodic red/green schedule anchored to the vehicle's entry at t=0.

    `time_to_red_s` is the (signed) onset of the first red relative to entry;
    the schedule extends to negative times by periodicity.
    """

    stop_line_m: float
    time_to_red_s: float
    red_s: float = 30.0
    green_s: float = 30.0

    def __post_init__(self) -> None:
        if self.red_s <= 0.0 or self.green_s <= 0.0:
            raise ValueError("red and green durations must be > 0")

    @property
    def period_s(self) -> float:
        return self.red_s + self.green_s


def _cycle_offset(sig: SignalSchedule, t: float) -> float:
    """Time since the last red onset, in [0, period).

    Offsets within a nanosecond of a full period are snapped to the onset,
    so times produced by chained float arithmetic (e.g. the green onset
    following a computed red onset) land on the intended phase boundary.
    """
    u = math.fmod(t - sig.time_to_red_s, sig.period_s)
    if u < 0.0:
        u += sig.period_s
    if u >= sig.period_s - 1e-9:
        u = 0.0
    return u


def phase_at(sig: SignalSchedule, t: float) -> Phase:
    """Phase at time t. Red on [time_to_red + k*period, +red_s); the instant a
    light turns green is Green."""
    return Phase.RED if _cycle_offset(sig, t) < sig.red_s else Phase.GREEN


def next_green_onset(sig: SignalSchedule, t: float) -> float:
    """Smallest t' >= t with Green phase; t itself if already Green."""
    u = _cycle_offset(sig, t)
    if u >= sig.red_s:
        return t
    return t + (sig.red_s - u)


def next_red_onset(sig: SignalSchedule, t: float) -> float:
    """Smallest t' >= t at which the phase is Red (t itself if already Red)."""
    u = _cycle_offset(sig, t)
    if u < sig.red_s:
        return t
    return t + (sig.period_s - u)


@dataclass(frozen=True)
class GradeProfile:
    """Piecewise-constant grade versus distance from zone entry."""

    breakpoints_m: tuple[float, ...] = ()
    grades: tuple[float, ...] = (0.0,)

    def __post_init__(self) -> None:
        if len(self.grades) != len(self.breakpoints_m) + 1:
            raise ValueError("need one more grade value than breakpoints")
        if any(b2 <= b1 for b1, b2 in zip(self.breakpoints_m, self.breakpoints_m[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    def at(self, x: float) -> float:
        for i, b in enumerate(self.breakpoints_m):
            if x < b:
                return self.grades[i]
        return self.grades[-1]


@dataclass(frozen=True)
class Corridor:
    """Two-signal control zone: entry buffer, light spacing, exit buffer."""

    entry_buffer_m: float = 100.0
    light_spacing_m: float = 400.0
    exit_buffer_m: float = 100.0
    speed_limit_m_s: float = 24.583
    grade_profile: GradeProfile = field(default_factory=GradeProfile)
    signals: tuple[SignalSchedule, SignalSchedule] = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.signals is None:
            object.__setattr__(
                self,
                "signals",
                (
                    SignalSchedule(self.entry_buffer_m, 0.0),
                    SignalSchedule(self.entry_buffer_m + self.light_spacing_m, 0.0),
                ),
            )
        if len(self.signals) != 2:
            raise ValueError("corridor needs exactly two signals")
        if self.speed_limit_m_s <= 0.0:
            raise ValueError("speed limit must be > 0")
        if min(self.entry_buffer_m, self.light_spacing_m, self.exit_buffer_m) <= 0.0:
            raise ValueError("corridor segment lengths must be > 0")
        expected = (self.entry_buffer_m, self.entry_buffer_m + self.light_spacing_m)
        for sig, x in zip(self.signals, expected):
            if not math.isclose(sig.stop_line_m, x, abs_tol=1e-9):
                raise ValueError(
                    f"stop line at {sig.stop_line_m} m does not match geometry ({x} m)"
                )
        if not all(0.0 < s.stop_line_m < self.length_m for s in self.signals):
            raise ValueError("stop lines must lie strictly inside the zone")

    @property
    def length_m(self) -> float:
        return self.entry_buffer_m + self.light_spacing_m + self.exit_buffer_m

    @property
    def stop_lines_m(self) -> tuple[float, float]:
        return tuple(s.stop_line_m for s in self.signals)


def make_corridor(
    time_to_red_first_s: float,
    time_to_red_second_s: float,
    spacing_m: float = 400.0,
    entry_buffer_m: float = 100.0,
    exit_buffer_m: float = 100.0,
    speed_limit_m_s: float = 24.583,
    red_s: float = 30.0,
    green_s: float = 30.0,
) -> Corridor:
    """Convenience constructor from the usual (x, y) timing pair."""
    return Corridor(
        entry_buffer_m=entry_buffer_m,
        light_spacing_m=spacing_m,
        exit_buffer_m=exit_buffer_m,
        speed_limit_m_s=speed_limit_m_s,
        signals=(
            SignalSchedule(entry_buffer_m, time_to_red_first_s, red_s, green_s),
            SignalSchedule(entry_buffer_m + spacing_m, time_to_red_second_s, red_s, green_s),
        ),
    )


def crossing_allowed(c: Corridor, light_index: int, t: float) -> bool:
    """Whether crossing the given stop line at time t is legal (Green phase).

    Waiting at the line during Red is always allowed; only crossing is gated.
    """
    if light_index not in (0, 1):
        raise IndexError("light_index must be 0 or 1")
    return phase_at(c.signals[light_index], t) is Phase.GREEN
