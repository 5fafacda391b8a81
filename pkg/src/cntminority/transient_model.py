"""First-order delay, power and energy estimates for the gate output stage."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

LN2 = math.log(2.0)


class ModelInapplicable(ValueError):
    """Fitted parameters fall outside the physical range of the RC model."""


@dataclass(frozen=True)
class RcModel:
    r_eff: float  # ohm
    c_par: float  # F
    alpha: float = 1.0  # switching activity

    def __post_init__(self):
        if not self.r_eff > 0:
            raise ValueError(f"r_eff must be positive, got {self.r_eff!r}")
        if not self.c_par >= 0:
            raise ValueError(f"c_par must be non-negative, got {self.c_par!r}")
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha!r}")


@dataclass(frozen=True)
class OperatingPoint:
    vdd: float = 0.9  # V
    c_load: float = 2e-15  # F
    frequency: float = 250e6  # Hz

    def __post_init__(self):
        if not self.vdd >= 0:
            raise ValueError(f"vdd must be non-negative, got {self.vdd!r}")
        if not self.c_load >= 0:
            raise ValueError(f"c_load must be non-negative, got {self.c_load!r}")
        if not self.frequency > 0:
            raise ValueError(f"frequency must be positive, got {self.frequency!r}")


@dataclass(frozen=True)
class Metrics:
    delay: float
    avg_power: float
    energy: float

    @classmethod
    def from_power_delay(cls, avg_power: float, delay: float) -> "Metrics":
        return cls(delay=delay, avg_power=avg_power, energy=energy_from_power_delay(avg_power, delay))


def energy_from_power_delay(p: float, d: float) -> float:
    if p < 0 or d < 0:
        raise ValueError(f"power and delay must be non-negative, got {p}, {d}")
    return p * d


def estimate_delay(m: RcModel, op: OperatingPoint) -> float:
    """50% propagation delay of a single-pole RC stage."""
    return LN2 * m.r_eff * (m.c_par + op.c_load)


def estimate_energy(m: RcModel, op: OperatingPoint) -> float:
    return m.alpha * (m.c_par + op.c_load) * op.vdd ** 2


def calibrate_delay(points: Iterable[Sequence[float]]) -> tuple[float, float]:
    """Least-squares fit of ``delay = a + b*c_load``; returns ``(r_eff, c_par)``.

    Raises ``ValueError`` for fewer than two distinct loads and
    ``ModelInapplicable`` when the fit implies a non-positive resistance or
    negative parasitic capacitance.
    """
    pts = [(float(c), float(d)) for c, d in points]
    if len(pts) < 2:
        raise ValueError("need at least two (c_load, delay) points")
    xs = [c for c, _ in pts]
    ys = [d for _, d in pts]
    x_mean = math.fsum(xs) / len(xs)
    y_mean = math.fsum(ys) / len(ys)
    sxx = math.fsum((x - x_mean) ** 2 for x in xs)
    if sxx == 0 or len(set(xs)) < 2:
        raise ValueError("degenerate fit: all points share the same c_load")
    sxy = math.fsum((x - x_mean) * (y - y_mean) for x, y in pts)
    slope = sxy / sxx
    intercept = y_mean - slope * x_mean
    if slope <= 0:
        raise ModelInapplicable(f"model inapplicable: non-positive slope {slope:g} s/F")
    # Intercepts at round-off level are a zero parasitic, not a negative one.
    if intercept < 0:
        if abs(intercept) <= 1e-9 * max(abs(y) for y in ys):
            intercept = 0.0
        else:
            raise ModelInapplicable(f"model inapplicable: negative intercept {intercept:g} s")
    return slope / LN2, intercept / slope


def improvement_pct(baseline: float, proposed: float) -> float:
    if not baseline > 0:
        raise ValueError(f"baseline must be positive, got {baseline!r}")
    return 100.0 * (baseline - proposed) / baseline


@dataclass(frozen=True)
class SweepRow:
    param: float
    delay: float
    energy: float

    @property
    def avg_power(self) -> float:
        return self.energy / self.delay if self.delay else 0.0


SWEEP_PARAMS = ("c_load", "vdd")


def sweep(m: RcModel, op: OperatingPoint, param: str, grid: Sequence[float]) -> list[SweepRow]:
    """Evaluate the model over a grid of ``c_load`` or ``vdd`` values.

    The grid must be strictly monotone (either direction); rows come back
    in ascending parameter order.
    """
    if param not in SWEEP_PARAMS:
        raise ValueError(f"unknown sweep parameter {param!r}; expected one of {SWEEP_PARAMS}")
    values = [float(g) for g in grid]
    if not values:
        raise ValueError("empty sweep grid")
    steps = [b - a for a, b in zip(values, values[1:])]
    if not (all(s > 0 for s in steps) or all(s < 0 for s in steps)):
        raise ValueError("sweep grid must be strictly monotone")
    rows = []
    for value in sorted(values):
        point = OperatingPoint(
            vdd=value if param == "vdd" else op.vdd,
            c_load=value if param == "c_load" else op.c_load,
            frequency=op.frequency,
        )
        rows.append(SweepRow(value, estimate_delay(m, point), estimate_energy(m, point)))
    return rows
