"""Command-line interface.

Subcommands: validate, measures, evolve, events, surface, oracle, crossover.
Output is CSV (default, '#'-prefixed header, 17 significant digits) or JSON,
to stdout or --out.  Exit codes: 0 success, 1 input error, 2 internal
numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import dynamics, families, measures, noise, oracle, stateio
from .states import (
    InvalidStateError,
    matrix_to_xstate,
    validate_density_matrix,
    validate_xstate,
    xstate_to_matrix,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


_DEFAULTS = {
    "state": None,
    "param": None,
    "state_file": None,
    "noise": "rtn",
    "a_over_gamma": 4.0,
    "Gamma_over_gamma": 1.0,
    "lambda_over_gamma": 1.0,
    "tmax": 3.0,
    "steps": 600,
    "param_grid": "0:1:200",
    "time_grid": "0:3:600",
    "measure_a": "concurrence",
    "measure_b": "qs",
    "grid": 32,
    "refine": 4,
    "revival_threshold": 1e-4,
    "out": None,
    "format": "csv",
}


def _add_common(p: argparse.ArgumentParser, *groups: str) -> None:
    p.add_argument("--config", help="JSON option file mirroring flags; flags override it")
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    if "state" in groups:
        p.add_argument("--state", choices=("werner", "mnms", "mems", "file"))
        p.add_argument("--param", type=float, help="family parameter in [0, 1]")
        p.add_argument("--state-file", dest="state_file", help="state document (JSON)")
    if "noise" in groups:
        p.add_argument("--noise", choices=("rtn", "moun", "markov"))
        p.add_argument("--a-over-gamma", dest="a_over_gamma", type=float)
        p.add_argument("--Gamma-over-gamma", dest="Gamma_over_gamma", type=float)
        p.add_argument("--lambda-over-gamma", dest="lambda_over_gamma", type=float)
    if "time" in groups:
        p.add_argument("--tmax", type=float)
        p.add_argument("--steps", type=int)


def build_parser() -> _Parser:
    parser = _Parser(prog="rqcx", description="Correlation measures and dephasing dynamics of 2-qubit X states")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _add_common(sub.add_parser("validate"), "state")
    _add_common(sub.add_parser("measures"), "state")
    _add_common(sub.add_parser("evolve"), "state", "noise", "time")
    p_events = sub.add_parser("events")
    _add_common(p_events, "state", "noise", "time")
    p_events.add_argument("--revival-threshold", dest="revival_threshold", type=float)
    p_surface = sub.add_parser("surface")
    _add_common(p_surface, "noise")
    p_surface.add_argument("--state", choices=("werner", "mnms", "mems"))
    p_surface.add_argument("--param-grid", dest="param_grid", help="min:max:count")
    p_surface.add_argument("--time-grid", dest="time_grid", help="min:max:count")
    p_surface.add_argument("--measure-a", dest="measure_a", choices=("concurrence", "laqc", "qs", "cs"))
    p_surface.add_argument("--measure-b", dest="measure_b", choices=("concurrence", "laqc", "qs", "cs"))
    p_oracle = sub.add_parser("oracle")
    _add_common(p_oracle, "state")
    p_oracle.add_argument("--grid", type=int)
    p_oracle.add_argument("--refine", type=int)
    _add_common(sub.add_parser("crossover"))
    return parser


def _merged(args: argparse.Namespace) -> dict:
    """defaults < config file < explicit flags."""
    opts = dict(_DEFAULTS)
    if getattr(args, "config", None):
        cfg = stateio.load_options_file(args.config)
        unknown = set(cfg) - set(_DEFAULTS)
        if unknown:
            raise InvalidStateError(f"unknown config keys: {sorted(unknown)}")
        opts.update(cfg)
    for key in _DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            opts[key] = val
    return opts


def _resolve_state(opts: dict):
    """Return (XStateParams or None, density matrix or None)."""
    kind = opts["state"]
    if kind in ("werner", "mnms", "mems"):
        if opts["param"] is None:
            raise InvalidStateError(f"--param is required with --state {kind}")
        spec = families.FamilySpec(kind, float(opts["param"]))
        return families.make_state(spec), None
    if kind == "file" or (kind is None and opts["state_file"]):
        if not opts["state_file"]:
            raise InvalidStateError("--state-file is required with --state file")
        doc = stateio.load_state_document(opts["state_file"])
        if isinstance(doc, np.ndarray):
            return None, doc
        return doc, None
    raise InvalidStateError("no state given: use --state werner|mnms|mems with --param, or --state file")


def _xstate_of(opts: dict):
    params, matrix = _resolve_state(opts)
    if params is None:
        params = matrix_to_xstate(matrix)
    return params


def _noise_of(opts: dict) -> noise.NoiseModel:
    return noise.noise_from_config(
        {
            "kind": opts["noise"],
            "a_over_gamma": opts["a_over_gamma"],
            "Gamma_over_gamma": opts["Gamma_over_gamma"],
            "lambda_over_gamma": opts["lambda_over_gamma"],
        }
    )


def _parse_grid(text: str) -> np.ndarray:
    try:
        lo, hi, count = text.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError as exc:
        raise InvalidStateError(f"grid must look like min:max:count, got {text!r}") from exc
    if count < 2 or not lo < hi:
        raise InvalidStateError(f"grid needs count >= 2 and min < max, got {text!r}")
    return np.linspace(lo, hi, count)


def _emit(rows: list[dict], columns: Sequence[str], opts: dict) -> None:
    fmt = opts["format"]
    if fmt == "csv":
        lines = ["# " + ",".join(columns)]
        for row in rows:
            lines.append(",".join(_cell(row[c]) for c in columns))
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(rows, indent=2) + "\n"
    if opts["out"]:
        with open(opts["out"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _cmd_validate(opts: dict) -> int:
    params, matrix = _resolve_state(opts)
    report = validate_xstate(params) if params is not None else validate_density_matrix(matrix)
    rows = [{"check": "valid", "ok": int(report.valid), "magnitude": 0.0}]
    rows += [
        {"check": name, "ok": 0, "magnitude": float(mag)} for name, mag in report.violations
    ]
    _emit(rows, ("check", "ok", "magnitude"), opts)
    return 0


def _cmd_measures(opts: dict) -> int:
    params = _xstate_of(opts)
    ms = measures.measure_set(params)
    rows = [
        {
            "concurrence": ms.concurrence,
            "laqc": ms.laqc,
            "qs": ms.qs,
            "cs": ms.cs,
        }
    ]
    _emit(rows, ("concurrence", "laqc", "qs", "cs"), opts)
    return 0


def _cmd_evolve(opts: dict) -> int:
    params = _xstate_of(opts)
    model = _noise_of(opts)
    tgrid = np.linspace(0.0, float(opts["tmax"]), int(opts["steps"]))
    rows = [
        {
            "t": r.t,
            "lambda": r.lam,
            "concurrence": r.concurrence,
            "laqc": r.laqc,
            "qs": r.qs,
            "cs": r.cs,
        }
        for r in dynamics.trajectory(params, model, tgrid)
    ]
    _emit(rows, ("t", "lambda", "concurrence", "laqc", "qs", "cs"), opts)
    return 0


def _cmd_events(opts: dict) -> int:
    params = _xstate_of(opts)
    model = _noise_of(opts)
    tgrid = np.linspace(0.0, float(opts["tmax"]), int(opts["steps"]))
    rows_t = dynamics.trajectory(params, model, tgrid)
    events = dynamics.detect_events(rows_t, model, params, float(opts["revival_threshold"]))
    rows = [{"kind": e.kind, "measure": e.measure, "t": e.t, "value": e.value} for e in events]
    _emit(rows, ("kind", "measure", "t", "value"), opts)
    return 0


def _cmd_surface(opts: dict) -> int:
    if opts["state"] not in ("werner", "mnms", "mems"):
        raise InvalidStateError("surface needs --state werner|mnms|mems")
    spec = dynamics.SweepSpec(
        family=opts["state"],
        param_grid=_parse_grid(str(opts["param_grid"])),
        noise=_noise_of(opts),
        time_grid=_parse_grid(str(opts["time_grid"])),
    )
    params, tgrid, values = dynamics.surface(spec, opts["measure_a"], opts["measure_b"])
    rows = [
        {"param": float(params[i]), "t": float(tgrid[j]), "value": float(values[i, j])}
        for i in range(params.size)
        for j in range(tgrid.size)
    ]
    _emit(rows, ("param", "t", "value"), opts)
    return 0


def _cmd_oracle(opts: dict) -> int:
    params = _xstate_of(opts)
    rho = xstate_to_matrix(params)
    ms = measures.measure_set(params)
    grid, refine = int(opts["grid"]), int(opts["refine"])
    pairs = (
        ("laqc", oracle.laqc_oracle(rho, grid, refine).value, ms.laqc),
        ("qs", oracle.qs_oracle(rho, grid, refine).value, ms.qs),
        ("cs", oracle.optimize_cmi(rho, "max", grid, refine).value, ms.cs),
    )
    rows = [
        {"measure": name, "oracle": o, "closed_form": c, "abs_error": abs(o - c)}
        for name, o, c in pairs
    ]
    _emit(rows, ("measure", "oracle", "closed_form", "abs_error"), opts)
    return 0


def _cmd_crossover(opts: dict) -> int:
    _emit([{"z_star": families.crossover_z()}], ("z_star",), opts)
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "measures": _cmd_measures,
    "evolve": _cmd_evolve,
    "events": _cmd_events,
    "surface": _cmd_surface,
    "oracle": _cmd_oracle,
    "crossover": _cmd_crossover,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        opts = _merged(args)
        return _COMMANDS[args.command](opts)
    except (InvalidStateError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (ArithmeticError, np.linalg.LinAlgError, RuntimeError) as exc:
        sys.stderr.write(f"numeric failure: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
