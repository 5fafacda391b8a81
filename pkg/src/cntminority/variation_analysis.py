"""Monte Carlo yield of the minority gate under CNT diameter variation.

Each trial perturbs the diameters of the inverter's two tubes, maps the
resulting threshold shifts onto the inverter switching point, and re-runs
the exhaustive functional check.  Trial ``i`` draws from its own random
substream keyed by ``(seed, i)``, so a run can be split across workers in
any way without changing the result, and runs at different ``sigma_rel``
share the same underlying normal deviates.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from cntminority.analog_gate import (
    LOGIC_HIGH,
    LOGIC_LOW,
    GateConfig,
    VtcParams,
    check_threshold,
    margin_for_threshold,
    threshold_window,
)
from cntminority.device_model import CntDevice, Kind, MetallicTubeError, vth_from_diameter

MIN_DIAMETER_FRACTION = 0.1
MAX_SIGMA_REL = 0.5
MAX_YIELD_INPUTS = 15
SAMPLING_NOTE = "diameter *= 1 + N(0, sigma_rel), clamped at 0.1x nominal"


@dataclass(frozen=True)
class VariationSpec:
    sigma_rel: float = 0.05
    trials: int = 1000
    seed: int = 0
    sensitivity: float = 1.0

    def __post_init__(self):
        if not 0 <= self.sigma_rel < MAX_SIGMA_REL:
            raise ValueError(f"sigma_rel must lie in [0, {MAX_SIGMA_REL}), got {self.sigma_rel!r}")
        if isinstance(self.trials, bool) or not isinstance(self.trials, int) or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")


@dataclass(frozen=True)
class YieldReport:
    trials: int
    passes: int
    yield_fraction: float
    vth_mean: float
    vth_stddev: float
    worst_margin: float
    sampling: str = SAMPLING_NOTE


def _require_semiconducting(nominal: CntDevice) -> None:
    if nominal.kind is not Kind.SEMICONDUCTING:
        raise MetallicTubeError(f"no threshold: metallic CNT {nominal.chirality}")


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def perturbed_vth(nominal: CntDevice, g: float) -> float:
    """Threshold voltage after scaling the diameter by ``1 + g``."""
    _require_semiconducting(nominal)
    scale = max(1.0 + g, MIN_DIAMETER_FRACTION)
    return vth_from_diameter(nominal.diameter * scale)


def sample_vth(nominal: CntDevice, spec: VariationSpec, draw: np.random.Generator) -> float:
    _require_semiconducting(nominal)
    return perturbed_vth(nominal, spec.sigma_rel * draw.standard_normal())


def shifted_threshold(p: VtcParams, nominal: CntDevice, vth_n: float, vth_p: float, sensitivity: float) -> float:
    dvn = vth_n - nominal.threshold_voltage
    dvp = vth_p - nominal.threshold_voltage
    return p.v_sw + sensitivity * (dvn - dvp) / 2


def window_admits(cfg: GateConfig, v_sw: float, width_w: float) -> bool:
    """Closed-form pass condition for a plain gate.

    With the 10%/90% decode bands a linear transition of width w resolves a
    level only when it sits at least 0.4*w away from the switching point.
    """
    lo, hi = threshold_window(cfg)
    if width_w == 0:
        return lo < v_sw < hi
    return lo <= v_sw - (LOGIC_HIGH - 0.5) * width_w and v_sw + (0.5 - LOGIC_LOW) * width_w <= hi


@dataclass
class TrialBatch:
    start: int
    vth: np.ndarray  # shape (trials, 2): n-type, p-type
    v_sw: np.ndarray
    passed: np.ndarray
    margin: np.ndarray


def run_trials(
    cfg: GateConfig,
    p: VtcParams,
    nominal: CntDevice,
    spec: VariationSpec,
    start: int,
    stop: int,
) -> TrialBatch:
    """Run trials ``start <= i < stop``."""
    count = stop - start
    vth = np.empty((count, 2))
    v_sw = np.empty(count)
    passed = np.empty(count, dtype=bool)
    margin = np.empty(count)
    for k, i in enumerate(range(start, stop)):
        rng = trial_rng(spec.seed, i)
        vn = sample_vth(nominal, spec, rng)
        vp = sample_vth(nominal, spec, rng)
        shifted = shifted_threshold(p, nominal, vn, vp, spec.sensitivity)
        vth[k] = vn, vp
        v_sw[k] = shifted
        passed[k] = 0 < shifted < cfg.vdd and check_threshold(cfg, shifted, p.width_w)
        margin[k] = margin_for_threshold(cfg, shifted, p.width_w)
    return TrialBatch(start, vth, v_sw, passed, margin)


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    bounds = np.linspace(0, total, parts + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds, bounds[1:]) if b > a]


def summarize(batches: list[TrialBatch]) -> YieldReport:
    """Reduce trial batches (in any order) to a report.

    Batches are re-ordered by trial index first so that floating-point
    reductions do not depend on how the trials were partitioned.
    """
    batches = sorted(batches, key=lambda b: b.start)
    vth = np.concatenate([b.vth for b in batches]).ravel()
    passed = np.concatenate([b.passed for b in batches])
    margin = np.concatenate([b.margin for b in batches])
    trials = len(passed)
    passes = int(passed.sum())
    return YieldReport(
        trials=trials,
        passes=passes,
        yield_fraction=passes / trials,
        vth_mean=float(np.mean(vth)),
        vth_stddev=float(np.std(vth)),
        worst_margin=float(np.min(margin)),
    )


def gate_yield(
    cfg: GateConfig,
    p: VtcParams,
    nominal: CntDevice,
    spec: VariationSpec,
    workers: int = 1,
) -> YieldReport:
    _require_semiconducting(nominal)
    if cfg.driven_count > MAX_YIELD_INPUTS:
        raise ValueError(f"yield analysis limited to {MAX_YIELD_INPUTS} driven inputs")
    p.check_against(cfg.vdd)
    ranges = _chunks(spec.trials, workers)
    if workers <= 1:
        batches = [run_trials(cfg, p, nominal, spec, a, b) for a, b in ranges]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(lambda r: run_trials(cfg, p, nominal, spec, *r), ranges))
    return summarize(batches)
