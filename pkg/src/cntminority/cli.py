"""Command-line front end.

Exit codes: 0 success or verified, 1 computed but failing verdict,
2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path

import jsonschema

from cntminority import analog_gate, device_model, minority_logic, paper_data, transient_model
from cntminority import variation_analysis as va

CONFIG_ENV = "CNTMINORITY_CONFIG"
MAX_TABLE_INPUTS = 24

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_num = {"type": "number"}
_pos_int = {"type": "integer", "minimum": 1}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "gate": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "n": _pos_int,
                "vdd": {"type": "number", "exclusiveMinimum": 0},
                "weights": {"type": "array", "items": _pos_int, "minItems": 1},
                "tied": {
                    "type": "array",
                    "items": {
                        "type": "array",
                        "prefixItems": [{"type": "integer", "minimum": 0}, {"enum": [0, 1]}],
                        "minItems": 2,
                        "maxItems": 2,
                    },
                },
            },
        },
        "binding": {
            "type": "object",
            "additionalProperties": False,
            "required": ["kind", "k"],
            "properties": {
                "kind": {"enum": ["nand", "nor"]},
                "k": _pos_int,
                "vdd": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "vtc": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"v_sw": _num, "width_w": {"type": "number", "minimum": 0}},
        },
        "vector": {"type": "string", "pattern": "^[01]+$"},
        "chirality": {
            "type": "array",
            "items": {"type": "integer", "minimum": 0},
            "minItems": 2,
            "maxItems": 2,
        },
        "model": {
            "type": "object",
            "additionalProperties": False,
            "required": ["r_eff"],
            "properties": {"r_eff": _num, "c_par": _num, "alpha": _num},
        },
        "operating_point": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"vdd": _num, "c_load": _num, "frequency": _num},
        },
        "sweep": {
            "type": "object",
            "additionalProperties": False,
            "required": ["param", "grid"],
            "properties": {
                "param": {"enum": list(transient_model.SWEEP_PARAMS)},
                "grid": {"type": "array", "items": _num},
            },
        },
        "points": {
            "type": "array",
            "items": {"type": "array", "items": _num, "minItems": 2, "maxItems": 2},
        },
        "variation": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "sigma_rel": {"oneOf": [_num, {"type": "array", "items": _num, "minItems": 1}]},
                "trials": _pos_int,
                "seed": {"type": "integer", "minimum": 0},
                "sensitivity": _num,
                "workers": _pos_int,
            },
        },
    },
    "not": {"required": ["gate", "binding"]},
}

DEFAULT_CONFIG = {
    "gate": {"n": 7, "vdd": 0.9},
    "vector": "0000111",
    "chirality": [19, 0],
    "model": {"r_eff": 10e3, "c_par": 0.5e-15, "alpha": 1.0},
    "operating_point": {"vdd": 0.9, "c_load": 2e-15, "frequency": 250e6},
    "sweep": {"param": "c_load", "grid": [2e-15, 5e-15, 10e-15, 15e-15, 20e-15]},
    "variation": {"sigma_rel": [0.0, 0.02, 0.05, 0.10], "trials": 1000, "seed": 0, "sensitivity": 1.0},
}


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return f"{x:.5e}"


def load_config(path: str | None) -> dict:
    """Merge a JSON config over the defaults.

    Falls back to ``$CNTMINORITY_CONFIG`` when no path is given.
    """
    path = path or os.environ.get(CONFIG_ENV)
    user: dict = {}
    if path:
        try:
            user = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from exc
    try:
        jsonschema.validate(user, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise UsageError(f"config {path}: {exc.message}") from exc
    merged = dict(DEFAULT_CONFIG)
    if "binding" in user:
        merged.pop("gate")
    for key, value in user.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = {**merged[key], **value}
        else:
            merged[key] = value
    return merged


def gate_from_config(cfg: dict) -> analog_gate.GateConfig:
    if "binding" in cfg:
        b = cfg["binding"]
        derive = minority_logic.derive_nand if b["kind"] == "nand" else minority_logic.derive_nor
        return analog_gate.GateConfig.from_binding(derive(b["k"]), b.get("vdd", 0.9))
    g = cfg["gate"]
    weights = tuple(g["weights"]) if "weights" in g else None
    tied = tuple(tuple(t) for t in g.get("tied", ()))
    return analog_gate.GateConfig(n=g.get("n", 7), vdd=g.get("vdd", 0.9), weights=weights, tied=tied)


def vtc_from_config(cfg: dict, gate: analog_gate.GateConfig, args=None) -> analog_gate.VtcParams:
    default = analog_gate.VtcParams.default(gate.vdd)
    v = cfg.get("vtc", {})
    v_sw = v.get("v_sw", default.v_sw)
    width_w = v.get("width_w", default.width_w)
    if args is not None and getattr(args, "v_sw", None) is not None:
        v_sw = args.v_sw
    if args is not None and getattr(args, "width", None) is not None:
        width_w = args.width
    p = analog_gate.VtcParams(v_sw=v_sw, width_w=width_w)
    p.check_against(gate.vdd)
    return p


def emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def emit_json(args, payload) -> None:
    emit(args, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def write_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def render_table(header: list[str], rows: list[list]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- commands


def cmd_device(args) -> int:
    try:
        c = device_model.Chirality(args.n1, args.n2)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    dev = device_model.CntDevice.from_chirality(c)
    if args.json:
        emit_json(args, {
            "chirality": [c.n1, c.n2],
            "kind": dev.kind.value,
            "diameter_nm": dev.diameter,
            "chiral_length_nm": dev.chiral_length,
            "threshold_voltage_v": dev.threshold_voltage,
        })
        return EXIT_OK
    vth = "metallic" if dev.threshold_voltage is None else f"{dev.threshold_voltage:.4f} V"
    emit(args, (
        f"chirality      {c}\n"
        f"kind           {dev.kind.value}\n"
        f"diameter       {dev.diameter:.4f} nm\n"
        f"chiral length  {dev.chiral_length:.4f} nm\n"
        f"Vth            {vth}\n"
    ))
    return EXIT_OK


def cmd_truthtable(args) -> int:
    n = args.n
    if not 1 <= n <= MAX_TABLE_INPUTS:
        raise UsageError(f"n must lie in [1, {MAX_TABLE_INPUTS}], got {n}")
    if args.full:
        header = [f"x{i + 1}" for i in range(n)] + ["out"]
        rows = [list(v) + [minority_logic.minority(v)] for v in minority_logic.all_vectors(n)]
        if args.json:
            emit_json(args, {"n": n, "columns": header, "rows": rows})
        else:
            emit(args, write_csv(header, rows))
        return EXIT_OK
    table = minority_logic.weight_table(n)
    rows = [list(r) for r in table.rows]
    if args.json:
        emit_json(args, {"n": n, "columns": ["weight", "minority"], "rows": rows})
    else:
        emit(args, render_table(["sum_in", f"minority{n}"], rows))
    return EXIT_OK


def cmd_cost(args) -> int:
    try:
        report = minority_logic.cost_report(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        emit_json(args, asdict(report))
        return EXIT_OK
    emit(args, (
        f"inputs                   {report.n}\n"
        f"SOP terms (S)            {report.sop_terms}\n"
        f"conventional (2*S*n)     {report.conventional_transistors}\n"
        f"proposed devices         {report.proposed_devices}\n"
        f"reduction                {report.reduction_pct:.4f}%\n"
    ))
    return EXIT_OK


def _gate_and_vtc(args):
    cfg = load_config(args.config)
    try:
        gate = gate_from_config(cfg)
        p = vtc_from_config(cfg, gate, args)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return cfg, gate, p


def cmd_eval(args) -> int:
    cfg, gate, p = _gate_and_vtc(args)
    try:
        bits = minority_logic.parse_bits(args.vector or cfg["vector"])
        result = analog_gate.evaluate(bits, gate, p)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    expected = minority_logic.minority(gate.expand(bits))
    if args.json:
        emit_json(args, {
            "vector": "".join(map(str, bits)),
            "vm_v": result.vm,
            "vout_v": result.vout,
            "logic": result.logic.value,
            "margin_v": result.margin,
            "expected": expected,
        })
        return EXIT_OK
    emit(args, (
        f"vector   {''.join(map(str, bits))}\n"
        f"Vm       {result.vm:.5f} V\n"
        f"Vout     {result.vout:.5f} V\n"
        f"logic    {result.logic.value}  (minority = {expected})\n"
        f"margin   {result.margin:.5f} V\n"
    ))
    return EXIT_OK


def cmd_check(args) -> int:
    _, gate, p = _gate_and_vtc(args)
    try:
        ok = analog_gate.functional_check(gate, p)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    margin = analog_gate.static_margin(gate, p)
    lo, hi = analog_gate.threshold_window(gate)
    if args.json:
        emit_json(args, {
            "verified": ok,
            "vectors": 2 ** gate.driven_count,
            "static_margin_v": margin,
            "threshold_window_v": [lo, hi],
            "v_sw": p.v_sw,
            "width_w": p.width_w,
        })
    else:
        verdict = "PASS" if ok else "FAIL"
        emit(args, (
            f"{verdict}: {2 ** gate.driven_count} vectors, n={gate.n}, vdd={gate.vdd} V\n"
            f"v_sw {p.v_sw:.5f} V, width {p.width_w:.5f} V, window ({lo:.5f}, {hi:.5f}) V\n"
            f"static margin {margin:.5f} V\n"
        ))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_derive(args) -> int:
    derive = minority_logic.derive_nand if args.kind == "nand" else minority_logic.derive_nor
    if args.k < 1:
        raise UsageError(f"k must be positive, got {args.k}")
    b = derive(args.k)
    logical = minority_logic.verify_binding(b)
    gate = analog_gate.GateConfig.from_binding(b, args.vdd)
    analog = analog_gate.functional_check(gate, analog_gate.VtcParams.default(args.vdd))
    ok = logical and analog
    if args.json:
        emit_json(args, {
            "target": b.target.value,
            "k": args.k,
            "base_width": b.base_width,
            "tied_constant": b.tied_constant,
            "tied_count": b.tied_count,
            "tied_weight": b.tied_weight,
            "logic_verified": logical,
            "analog_verified": analog,
        })
    else:
        emit(args, (
            f"{b.target.value.upper()}{args.k} from minority-{b.base_width}: "
            f"{b.tied_count} input(s) tied to {b.tied_constant} (merged weight {b.tied_weight})\n"
            f"exhaustive logic check over {2 ** args.k} vectors: {'verified' if logical else 'FAILED'}\n"
            f"analog divider check at vdd={args.vdd} V: {'verified' if analog else 'FAILED'}\n"
        ))
    return EXIT_OK if ok else EXIT_FAIL


def _model(cfg: dict) -> tuple[transient_model.RcModel, transient_model.OperatingPoint]:
    try:
        m = transient_model.RcModel(**cfg["model"])
        op = transient_model.OperatingPoint(**cfg["operating_point"])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return m, op


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    m, op = _model(cfg)
    try:
        rows = transient_model.sweep(m, op, cfg["sweep"]["param"], cfg["sweep"]["grid"])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        emit_json(args, {"param": cfg["sweep"]["param"], "rows": [asdict(r) for r in rows]})
    else:
        emit(args, write_csv(["param", "delay_s", "energy_j"],
                             [[fmt(r.param), fmt(r.delay), fmt(r.energy)] for r in rows]))
    return EXIT_OK


def cmd_calibrate(args) -> int:
    cfg = load_config(args.config)
    if "points" not in cfg:
        raise UsageError("calibrate needs a 'points' list of [c_load, delay] pairs")
    try:
        r_eff, c_par = transient_model.calibrate_delay(cfg["points"])
    except transient_model.ModelInapplicable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        emit_json(args, {"r_eff_ohm": r_eff, "c_par_f": c_par})
    else:
        emit(args, write_csv(["r_eff_ohm", "c_par_f"], [[fmt(r_eff), fmt(c_par)]]))
    return EXIT_OK


def cmd_mc(args) -> int:
    cfg, gate, p = _gate_and_vtc(args)
    var = cfg["variation"]
    sigmas = var.get("sigma_rel", 0.0)
    sigmas = sigmas if isinstance(sigmas, list) else [sigmas]
    try:
        nominal = device_model.CntDevice.from_chirality(device_model.Chirality(*cfg["chirality"]))
        reports = []
        for sigma in sigmas:
            spec = va.VariationSpec(
                sigma_rel=sigma,
                trials=var.get("trials", 1000),
                seed=var.get("seed", 0),
                sensitivity=var.get("sensitivity", 1.0),
            )
            reports.append((sigma, va.gate_yield(gate, p, nominal, spec, workers=var.get("workers", 1))))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        emit_json(args, [{"sigma_rel": s, **asdict(r)} for s, r in reports])
    else:
        emit(args, write_csv(["sigma_rel", "trials", "yield"],
                             [[fmt(s), r.trials, fmt(r.yield_fraction)] for s, r in reports]))
    return EXIT_OK


def cmd_paperdata(args) -> int:
    t = paper_data.get_table(args.table)
    ok = True
    payload = {"table": args.table, "title": t["title"], "columns": t["columns"], "rows": t["rows"]}
    text = f"{t['title']}\n" + render_table(t["columns"], t["rows"])
    if args.table in ("table3", "table4"):
        residuals = paper_data.energy_residuals(args.table)
        ok = all(r.ok for r in residuals)
        payload["energy_residuals"] = [asdict(r) | {"ok": r.ok} for r in residuals]
        text += "\nenergy = power x delay check (1% relative tolerance)\n" + render_table(
            [t["columns"][0], "P*D (J)", "stated (J)", "rel err", "verdict"],
            [[r.key, fmt(r.computed), fmt(r.stated), f"{r.rel_error:.4%}", "pass" if r.ok else "FAIL"]
             for r in residuals],
        )
    else:
        claims = t["claims"]
        d_imp, e_imp = paper_data.nand_improvements(claims["vdd_v"])
        payload["improvements"] = {"delay_pct": d_imp, "energy_pct": e_imp, "claimed": claims}
        text += (
            f"\nat {claims['vdd_v']} V: delay improvement {d_imp:.2f}% "
            f"(claimed {claims['delay_improvement_pct']}%), "
            f"energy improvement {e_imp:.2f}% (claimed {claims['energy_improvement_pct']}%)\n"
        )
    if args.json:
        payload["consistent"] = ok
        emit_json(args, payload)
    else:
        emit(args, text)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a machine-readable JSON report")
    common.add_argument("--out", help="write output to this path instead of stdout")

    parser = argparse.ArgumentParser(prog="cntminority", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("device", parents=[common], help="CNT parameters from chirality")
    p.add_argument("n1", type=int)
    p.add_argument("n2", type=int)
    p.set_defaults(func=cmd_device)

    p = sub.add_parser("truthtable", parents=[common], help="minority truth table")
    p.add_argument("n", type=int)
    p.add_argument("--full", action="store_true", help="all 2^n rows as CSV")
    p.set_defaults(func=cmd_truthtable)

    p = sub.add_parser("cost", parents=[common], help="conventional vs proposed device count")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_cost)

    gate_opts = argparse.ArgumentParser(add_help=False)
    gate_opts.add_argument("--config", help=f"JSON config (default: ${CONFIG_ENV} or built-in)")
    gate_opts.add_argument("--v-sw", type=float, dest="v_sw", help="override switching threshold (V)")
    gate_opts.add_argument("--width", type=float, help="override VTC transition width (V)")

    p = sub.add_parser("eval", parents=[common, gate_opts], help="evaluate one input vector")
    p.add_argument("--vector", help="driven-input bits, e.g. 0000111")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", parents=[common, gate_opts], help="exhaustive functional check")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("derive", parents=[common], help="NAND/NOR from a minority gate")
    p.add_argument("kind", choices=["nand", "nor"])
    p.add_argument("k", type=int)
    p.add_argument("--vdd", type=float, default=0.9)
    p.set_defaults(func=cmd_derive)

    for name, func, text in (
        ("sweep", cmd_sweep, "delay/energy over c_load or vdd (CSV)"),
        ("calibrate", cmd_calibrate, "fit r_eff, c_par to (c_load, delay) points"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--config", help=f"JSON config (default: ${CONFIG_ENV} or built-in)")
        p.set_defaults(func=func)

    p = sub.add_parser("mc", parents=[common, gate_opts], help="Monte Carlo functional yield")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("paperdata", parents=[common], help="bundled reference tables")
    p.add_argument("table", choices=list(paper_data.TABLE_IDS))
    p.set_defaults(func=cmd_paperdata)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
