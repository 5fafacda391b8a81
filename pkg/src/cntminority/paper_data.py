"""Reference delay/power/energy tables shipped with the package."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from cntminority.transient_model import energy_from_power_delay, improvement_pct

TABLE_IDS = ("table3", "table4", "table5")
ENERGY_REL_TOL = 0.01


@lru_cache(maxsize=1)
def _load() -> dict:
    text = resources.files("cntminority").joinpath("data/paper_tables.json").read_text()
    return json.loads(text)


def get_table(table_id: str) -> dict:
    tables = _load()["tables"]
    if table_id not in tables:
        raise KeyError(f"unknown table {table_id!r}; expected one of {TABLE_IDS}")
    return tables[table_id]


@dataclass(frozen=True)
class EnergyResidual:
    key: float  # frequency (MHz) or vdd (V)
    computed: float  # J
    stated: float  # J
    rel_error: float

    @property
    def ok(self) -> bool:
        return self.rel_error < ENERGY_REL_TOL


def energy_residuals(table_id: str) -> list[EnergyResidual]:
    """Compare tabulated energy with power x delay for each row."""
    if table_id not in ("table3", "table4"):
        raise KeyError(f"{table_id} has no power column")
    t = get_table(table_id)
    key_col, delay_col, power_col, energy_col = t["columns"]
    units = t["units"]
    out = []
    for key, delay, power, energy in t["rows"]:
        computed = energy_from_power_delay(power * units[power_col], delay * units[delay_col])
        stated = energy * units[energy_col]
        out.append(EnergyResidual(key, computed, stated, abs(computed - stated) / stated))
    return out


def nand_improvements(vdd: float = 0.9) -> tuple[float, float]:
    """Delay and energy improvement (percent) of the minority-based NAND4."""
    t = get_table("table5")
    for v, d_conv, d_prop, e_conv, e_prop in t["rows"]:
        if abs(v - vdd) < 1e-9:
            return improvement_pct(d_conv, d_prop), improvement_pct(e_conv, e_prop)
    raise KeyError(f"no table5 row at vdd={vdd}")
