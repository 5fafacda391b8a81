"""Boolean semantics of the n-input minority function.

Covers the weight-compressed truth table, the sum-of-products cost model
used for the conventional CMOS realization, and NAND/NOR gates obtained
by tying inputs of a minority gate to a constant.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

Bits = Sequence[int]


def as_bits(v: Bits) -> tuple[int, ...]:
    bits = tuple(v)
    if not bits:
        raise ValueError("input vector must have at least one bit")
    for b in bits:
        if b not in (0, 1) or isinstance(b, float):
            raise ValueError(f"input bits must be 0 or 1, got {b!r}")
    return tuple(int(b) for b in bits)


def parse_bits(text: str) -> tuple[int, ...]:
    """'0010111' -> (0, 0, 1, 0, 1, 1, 1)"""
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a bit string: {text!r}")
    return tuple(int(ch) for ch in text)


def weight(v: Bits) -> int:
    return sum(as_bits(v))


def all_vectors(n: int) -> Iterator[tuple[int, ...]]:
    """All 2**n bit vectors, first bit most significant."""
    return itertools.product((0, 1), repeat=n)


def _check_width(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"input count must be a positive integer, got {n!r}")


def _check_odd(n: int) -> None:
    _check_width(n)
    if n % 2 == 0:
        raise ValueError(f"even fan-in unsupported by gate topology (n={n})")


def minority(v: Bits) -> int:
    """1 when at most floor(N/2) of the N inputs are high."""
    bits = as_bits(v)
    return int(sum(bits) <= len(bits) // 2)


def majority(v: Bits) -> int:
    bits = as_bits(v)
    return int(sum(bits) > len(bits) // 2)


@dataclass(frozen=True)
class MinorityTable:
    width: int
    rows: tuple[tuple[int, int], ...]  # (weight, output)

    def output(self, w: int) -> int:
        return self.rows[w][1]


def weight_table(n: int) -> MinorityTable:
    _check_width(n)
    half = n // 2
    return MinorityTable(n, tuple((w, int(w <= half)) for w in range(n + 1)))


def sop_term_count(n: int) -> int:
    """Number of minterms of the n-input minority function."""
    _check_width(n)
    return sum(comb(n, i) for i in range(n // 2 + 1))


def conventional_transistor_count(n: int) -> int:
    return 2 * sop_term_count(n) * n


def proposed_device_count(n: int) -> int:
    """n input capacitor devices plus a two-device inverter."""
    _check_odd(n)
    return n + 2


@dataclass(frozen=True)
class CostReport:
    n: int
    sop_terms: int
    conventional_transistors: int
    proposed_devices: int
    reduction_pct: float


def cost_report(n: int) -> CostReport:
    proposed = proposed_device_count(n)
    s = sop_term_count(n)
    t = 2 * s * n
    return CostReport(
        n=n,
        sop_terms=s,
        conventional_transistors=t,
        proposed_devices=proposed,
        reduction_pct=100.0 * (1.0 - proposed / t),
    )


class Target(enum.Enum):
    NAND = "nand"
    NOR = "nor"


@dataclass(frozen=True)
class GateBinding:
    """A k-input gate built from a (2k-1)-input minority gate.

    The k-1 constant inputs are merged into a single device whose capacitive
    weight is ``tied_weight``; logically it behaves as ``tied_weight`` copies
    of ``tied_constant``.
    """

    base_width: int
    free_inputs: int
    tied_constant: int
    tied_count: int
    tied_weight: int
    target: Target

    def __post_init__(self):
        _check_width(self.free_inputs)
        if self.base_width != self.free_inputs + self.tied_count:
            raise ValueError(
                f"base width {self.base_width} != free {self.free_inputs} + tied {self.tied_count}"
            )
        if self.tied_constant not in (0, 1):
            raise ValueError(f"tied constant must be 0 or 1, got {self.tied_constant!r}")
        if self.tied_count < 0 or self.tied_weight < 0:
            raise ValueError("tied count and weight must be non-negative")
        if self.tied_count > 0 and self.tied_weight == 0:
            raise ValueError("tied inputs need a positive capacitive weight")

    def expand(self, free_bits: Bits) -> tuple[int, ...]:
        """Unit-weight view of the gate inputs for a free-input assignment."""
        bits = as_bits(free_bits)
        if len(bits) != self.free_inputs:
            raise ValueError(f"expected {self.free_inputs} free inputs, got {len(bits)}")
        return bits + (self.tied_constant,) * self.tied_weight

    def output(self, free_bits: Bits) -> int:
        return minority(self.expand(free_bits))


def _derive(k: int, target: Target) -> GateBinding:
    _check_width(k)
    return GateBinding(
        base_width=2 * k - 1,
        free_inputs=k,
        tied_constant=0 if target is Target.NAND else 1,
        tied_count=k - 1,
        tied_weight=k - 1,
        target=target,
    )


def derive_nand(k: int) -> GateBinding:
    return _derive(k, Target.NAND)


def derive_nor(k: int) -> GateBinding:
    return _derive(k, Target.NOR)


def reference_output(target: Target, bits: Bits) -> int:
    bits = as_bits(bits)
    if target is Target.NAND:
        return int(not all(bits))
    return int(not any(bits))


def verify_binding(b: GateBinding) -> bool:
    """Exhaustively compare the bound minority gate with the target function."""
    return all(
        b.output(v) == reference_output(b.target, v) for v in all_vectors(b.free_inputs)
    )
