"""Geometric and electrical parameters of a single-walled CNT from its chirality."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional


class MetallicTubeError(ValueError):
    """Raised when a threshold voltage is requested for a metallic tube."""


class Kind(enum.Enum):
    METALLIC = "metallic"
    SEMICONDUCTING = "semiconducting"


@dataclass(frozen=True)
class PhysicalConstants:
    a0_cc: float = 0.142  # nm, carbon-carbon bond length
    v_pi: float = 3.033  # eV, tight-binding pi-pi bond energy
    vth_coeff: float = 0.43  # V*nm


DEFAULT_CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class Chirality:
    n1: int
    n2: int

    def __post_init__(self):
        for name in ("n1", "n2"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValueError(f"chirality index {name} must be an integer, got {value!r}")
            if value < 0:
                raise ValueError(f"chirality index {name} must be non-negative, got {value}")
        if self.n1 == 0 and self.n2 == 0:
            raise ValueError("invalid chirality (0, 0)")

    def __str__(self):
        return f"({self.n1},{self.n2})"


@dataclass(frozen=True)
class ModelCard:
    """Compact-model parameters of the 32 nm CNTFET used for the reference
    simulations.  Carried as metadata; nothing in this package consumes it.
    """

    channel_length: float = 32.0  # nm
    mean_free_path: float = 100.0  # nm
    source_ext: float = 32.0  # nm
    drain_ext: float = 32.0  # nm
    k_gate: float = 16.0
    t_ox: float = 4.0  # nm
    c_sub: float = 40e-12  # F/m
    e_fermi: float = 6.0  # eV


@dataclass(frozen=True)
class CntDevice:
    chirality: Chirality
    diameter: float
    chiral_length: float
    kind: Kind
    threshold_voltage: Optional[float] = field(default=None)

    @classmethod
    def from_chirality(cls, c: Chirality, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> "CntDevice":
        kind = classify(c)
        vth = threshold_voltage(c, constants) if kind is Kind.SEMICONDUCTING else None
        return cls(
            chirality=c,
            diameter=diameter(c, constants),
            chiral_length=chiral_length(c, constants),
            kind=kind,
            threshold_voltage=vth,
        )


def _as_chirality(c) -> Chirality:
    if isinstance(c, Chirality):
        return c
    n1, n2 = c
    return Chirality(n1, n2)


def classify(c) -> Kind:
    """Metallic when n1 - n2 is a multiple of three, semiconducting otherwise."""
    c = _as_chirality(c)
    if (c.n1 - c.n2) % 3 == 0:
        return Kind.METALLIC
    return Kind.SEMICONDUCTING


def chiral_length(c, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Length of the chiral vector in nm (the tube circumference)."""
    c = _as_chirality(c)
    return math.sqrt(3.0) * constants.a0_cc * math.sqrt(c.n1 ** 2 + c.n2 ** 2 + c.n1 * c.n2)


def diameter(c, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Tube diameter in nm."""
    return chiral_length(c, constants) / math.pi


def threshold_voltage(c, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    c = _as_chirality(c)
    if classify(c) is Kind.METALLIC:
        raise MetallicTubeError(f"no threshold: metallic CNT {c}")
    return vth_from_diameter(diameter(c, constants), constants)


def vth_from_diameter(d_nm: float, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    if d_nm <= 0:
        raise ValueError(f"diameter must be positive, got {d_nm}")
    return constants.vth_coeff / d_nm
