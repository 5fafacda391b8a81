"""Behavioral model of the capacitive-divider minority gate.

The input devices act as capacitors onto a shared node M.  With ideal,
memoryless capacitors the node settles to the capacitance-weighted mean of
the input rails, which then drives an inverter with a piecewise-linear
transfer curve.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from cntminority.minority_logic import Bits, GateBinding, as_bits

# Decode bands for the inverter output, as fractions of vdd.
LOGIC_HIGH = 0.9
LOGIC_LOW = 0.1
MAX_ENUM_INPUTS = 24


class Logic(enum.Enum):
    ZERO = "0"
    ONE = "1"
    INDETERMINATE = "X"

    def as_bit(self) -> Optional[int]:
        return {Logic.ZERO: 0, Logic.ONE: 1}.get(self)


@dataclass(frozen=True)
class GateConfig:
    """A minority gate instance.

    ``weights`` lists the capacitive weight of every physical input device
    (all 1 for a plain gate) and must sum to ``n``.  ``tied`` holds
    ``(index, bit)`` pairs for devices wired to a constant rail; the other
    inputs are driven, in index order, by the input vector.
    """

    n: int = 7
    vdd: float = 0.9
    weights: Optional[tuple[int, ...]] = None
    tied: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        n = self.n
        if isinstance(n, bool) or not isinstance(n, int) or n < 1 or n % 2 == 0:
            raise ValueError(f"fan-in must be an odd positive integer, got {n!r}")
        if not self.vdd > 0:
            raise ValueError(f"vdd must be positive, got {self.vdd!r}")
        weights = (1,) * n if self.weights is None else tuple(self.weights)
        if any(isinstance(w, bool) or not isinstance(w, int) or w < 1 for w in weights):
            raise ValueError(f"weights must be positive integers, got {weights}")
        if sum(weights) != n:
            raise ValueError(f"weights sum to {sum(weights)}, expected {n}")
        tied = tuple((int(i), int(b)) for i, b in self.tied)
        seen = set()
        for i, b in tied:
            if not 0 <= i < len(weights) or i in seen:
                raise ValueError(f"bad tied input index {i}")
            if b not in (0, 1):
                raise ValueError(f"tied constant must be 0 or 1, got {b}")
            seen.add(i)
        if len(tied) == len(weights):
            raise ValueError("at least one input must be driven")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "tied", tuple(sorted(tied)))

    @classmethod
    def from_binding(cls, b: GateBinding, vdd: float = 0.9) -> "GateConfig":
        if b.tied_count == 0:
            return cls(n=b.free_inputs, vdd=vdd)
        weights = (1,) * b.free_inputs + (b.tied_weight,)
        return cls(
            n=sum(weights),
            vdd=vdd,
            weights=weights,
            tied=((b.free_inputs, b.tied_constant),),
        )

    @property
    def driven(self) -> tuple[int, ...]:
        """Indices of the inputs fed by the input vector."""
        tied = dict(self.tied)
        return tuple(i for i in range(len(self.weights)) if i not in tied)

    @property
    def driven_count(self) -> int:
        return len(self.weights) - len(self.tied)

    def tied_level(self) -> int:
        """Weighted count of inputs tied high."""
        return sum(self.weights[i] for i, b in self.tied if b)

    def expand(self, v: Bits) -> tuple[int, ...]:
        """Unit-weight view of all inputs, tied constants folded in."""
        bits = self._check_vector(v)
        full = dict(self.tied)
        full.update(zip(self.driven, bits))
        out: list[int] = []
        for i, w in enumerate(self.weights):
            out.extend([full[i]] * w)
        return tuple(out)

    def _check_vector(self, v: Bits) -> tuple[int, ...]:
        bits = as_bits(v)
        if len(bits) != self.driven_count:
            raise ValueError(f"vector width {len(bits)} != {self.driven_count} driven inputs")
        return bits


@dataclass(frozen=True)
class VtcParams:
    v_sw: float
    width_w: float = 0.0

    def __post_init__(self):
        if not self.width_w >= 0:
            raise ValueError(f"transition width must be >= 0, got {self.width_w!r}")

    @classmethod
    def default(cls, vdd: float) -> "VtcParams":
        return cls(v_sw=vdd / 2, width_w=0.05 * vdd)

    def check_against(self, vdd: float) -> None:
        if not 0 < self.v_sw < vdd:
            raise ValueError(f"switching threshold {self.v_sw} outside (0, {vdd})")


@dataclass(frozen=True)
class EvalResult:
    vm: float
    vout: float
    logic: Logic
    margin: float


def midpoint_voltage(v: Bits, cfg: GateConfig) -> float:
    bits = cfg._check_vector(v)
    level = cfg.tied_level() + sum(cfg.weights[i] * b for i, b in zip(cfg.driven, bits))
    return cfg.vdd * level / cfg.n


def threshold_window(cfg: GateConfig) -> tuple[float, float]:
    """Open interval of switching thresholds that separate the divider
    levels of floor(n/2) and floor(n/2)+1 high inputs."""
    half = cfg.n // 2
    return cfg.vdd * half / cfg.n, cfg.vdd * (half + 1) / cfg.n


def vtc(vin: float, p: VtcParams, vdd: float) -> float:
    """Inverter output for input ``vin``: a linear ramp of width ``width_w``
    centred on ``v_sw``, or an ideal step when the width is zero."""
    if not 0 <= vin <= vdd:
        raise ValueError(f"input {vin} V outside the rails [0, {vdd}]")
    if p.width_w == 0:
        if vin < p.v_sw:
            return vdd
        if vin > p.v_sw:
            return 0.0
        return vdd / 2
    frac = (p.v_sw + p.width_w / 2 - vin) / p.width_w
    return vdd * min(max(frac, 0.0), 1.0)


def decode(vout: float, vdd: float) -> Logic:
    if vout >= LOGIC_HIGH * vdd:
        return Logic.ONE
    if vout <= LOGIC_LOW * vdd:
        return Logic.ZERO
    return Logic.INDETERMINATE


def evaluate(v: Bits, cfg: GateConfig, p: VtcParams) -> EvalResult:
    p.check_against(cfg.vdd)
    vm = midpoint_voltage(v, cfg)
    vout = vtc(vm, p, cfg.vdd)
    return EvalResult(
        vm=vm,
        vout=vout,
        logic=decode(vout, cfg.vdd),
        margin=abs(vm - p.v_sw) - p.width_w / 2,
    )


@lru_cache(maxsize=16)
def _enumerate(cfg: GateConfig) -> tuple[np.ndarray, np.ndarray]:
    """Divider voltage and expected minority output for every driven vector.

    Row order matches ``minority_logic.all_vectors`` (first input is the
    most significant bit).
    """
    d = cfg.driven_count
    if d > MAX_ENUM_INPUTS:
        raise ValueError(f"refusing to enumerate 2**{d} vectors (limit {MAX_ENUM_INPUTS} inputs)")
    codes = np.arange(1 << d, dtype=np.int64)
    level = np.full(codes.shape, cfg.tied_level(), dtype=np.int64)
    for j, idx in enumerate(cfg.driven):
        level += ((codes >> (d - 1 - j)) & 1) * cfg.weights[idx]
    vm = cfg.vdd * level.astype(np.float64) / cfg.n
    expected = level <= cfg.n // 2
    vm.setflags(write=False)
    expected.setflags(write=False)
    return vm, expected


def _vtc_array(vm: np.ndarray, v_sw: float, width_w: float, vdd: float) -> np.ndarray:
    if width_w == 0:
        return np.where(vm < v_sw, vdd, np.where(vm > v_sw, 0.0, vdd / 2))
    # Near-zero widths overflow to +-inf, which the clip maps onto the rails.
    with np.errstate(over="ignore"):
        frac = (v_sw + width_w / 2 - vm) / width_w
    return vdd * np.clip(frac, 0.0, 1.0)


def check_threshold(cfg: GateConfig, v_sw: float, width_w: float) -> bool:
    """Exhaustive functional check for an arbitrary threshold, without the
    rail precondition on ``v_sw``."""
    vm, expected = _enumerate(cfg)
    vout = _vtc_array(vm, v_sw, width_w, cfg.vdd)
    high = vout >= LOGIC_HIGH * cfg.vdd
    low = vout <= LOGIC_LOW * cfg.vdd
    return bool(np.all(np.where(expected, high, low)))


def functional_check(cfg: GateConfig, p: VtcParams) -> bool:
    """True when every driven-input vector decodes to the minority output of
    the full input set (tied constants included)."""
    p.check_against(cfg.vdd)
    return check_threshold(cfg, p.v_sw, p.width_w)


def margin_for_threshold(cfg: GateConfig, v_sw: float, width_w: float) -> float:
    vm, _ = _enumerate(cfg)
    return float(np.min(np.abs(vm - v_sw))) - width_w / 2


def static_margin(cfg: GateConfig, p: VtcParams) -> float:
    """Worst-case distance between a divider level and the transition band."""
    return margin_for_threshold(cfg, p.v_sw, p.width_w)
