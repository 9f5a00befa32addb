"""Command-line front end: config ingestion, dispatch, report emission.

A system lives in a JSON config file:

    {
      "m": 2, "n": 2, "k": 1,
      "M": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]],
      "N": [[[1], [0]], [[0], [1]]],
      "domain": [[0, 2], [0, 2]],          // optional, per-axis [lo, hi]
      "numeric": {"rank_rel_tol": 1e-10},  // optional overrides
      "u": [["1"], ["0"]],                 // optional control, k entries per alpha
      "F": [[[0], [0]], [[0], [0]]]        // optional forcing family (n x 1)
    }

Matrix entries are numbers or expression strings over t1..tm.  Multitime
points are passed as comma-separated flag values; forced integration
paths as semicolon-separated waypoints.  Reports render as text, or as
JSON with --json.  Exit codes: 0 success (warnings included), 2 for
validation errors and gate refusals.
"""

from __future__ import annotations

import argparse
import json

import numpy as np

from . import flow, gramian, kalman, synth
from .core import NumericConfig, PolylineCurve, as_point
from .expr import ExprError
from .system import (CompatibilityError, ConditionReport, ControlFamily,
                     LinearSystem, MatrixFamily, check_control_compat,
                     check_F_compatibility, check_gramian_compat,
                     check_M_commutation)

__all__ = ["main", "run", "load_config"]


class ConfigError(ValueError):
    pass


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _matrix_tree(a: np.ndarray) -> list:
    return [[float(_fmt(x)) for x in row] for row in np.atleast_2d(a)]


def _parse_point(text: str, m: int) -> np.ndarray:
    try:
        coords = [float(part) for part in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"bad multitime point {text!r}: {exc}") from None
    if len(coords) != m:
        raise ConfigError(f"point {text!r} has {len(coords)} coordinates, expected {m}")
    return as_point(coords, m=m)


def _parse_path(text: str, m: int) -> PolylineCurve:
    points = [_parse_point(part, m) for part in text.split(";")]
    if len(points) < 2:
        raise ConfigError("a path needs at least two waypoints")
    return PolylineCurve(np.stack(points))


def load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"config {path!r} is not valid JSON: {exc.msg} "
            f"(line {exc.lineno}, column {exc.colno})") from None


def build_system(doc: dict) -> tuple[LinearSystem, NumericConfig, dict]:
    for key in ("m", "n", "k", "M", "N"):
        if key not in doc:
            raise ConfigError(f"config is missing required key {key!r}")
    m, n, k = doc["m"], doc["n"], doc["k"]
    if not all(isinstance(v, int) and v >= 1 for v in (m, n, k)):
        raise ConfigError("m, n, k must be positive integers")
    try:
        cfg = NumericConfig(**doc.get("numeric", {}))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad numeric config: {exc}") from None
    try:
        system = LinearSystem.from_data(m, n, k, doc["M"], doc["N"],
                                        domain=doc.get("domain"))
    except (ExprError, ValueError) as exc:
        raise ConfigError(f"bad system data: {exc}") from None
    return system, cfg, doc


def _load_control(data, system: LinearSystem) -> ControlFamily:
    try:
        u = ControlFamily.from_data(data, system.m)
    except (ExprError, ValueError) as exc:
        raise ConfigError(f"bad control data: {exc}") from None
    if u.k != system.k:
        raise ConfigError(f"control has {u.k} components, expected k={system.k}")
    return u


def _condition_tree(report: ConditionReport) -> dict:
    return {
        "condition": report.condition_name,
        "pass": report.passed,
        "max_residual": float(_fmt(report.max_residual)),
        "worst_point": None if report.worst_point is None
        else [float(_fmt(x)) for x in report.worst_point],
        "worst_pair": None if report.worst_pair is None else list(report.worst_pair),
    }


def _refusal(exc: CompatibilityError) -> dict:
    return {
        "refused": True,
        "gate": _condition_tree(exc.report),
        "reason": f"{exc.report.condition_name} residual "
                  f"{_fmt(exc.report.max_residual)}",
    }


# --- commands ---------------------------------------------------------------

def cmd_check(args) -> dict:
    system, cfg, doc = build_system(load_config(args.config))
    conditions = [check_M_commutation(system, cfg)]
    u = _load_control(doc["u"], system) if "u" in doc else \
        ControlFamily.zero(system.m, system.k)
    # F defaults to the zero family so the report always carries all four
    # conditions; a config may supply its own forcing under "F".
    f_data = doc.get("F", [[[0.0]] * system.n for _ in range(system.m)])
    F = MatrixFamily.from_data(f_data, system.m)
    conditions.append(check_F_compatibility(system, F, cfg))
    conditions.append(check_control_compat(system, u, cfg))
    conditions.append(check_gramian_compat(system, cfg))
    tree = {"command": "check",
            "conditions": [_condition_tree(c) for c in conditions]}
    tree["all_pass"] = all(c.passed for c in conditions)
    return tree


def cmd_flow(args) -> dict:
    system, cfg, _ = build_system(load_config(args.config))
    t0 = _parse_point(args.t0, system.m)
    t = _parse_point(args.t, system.m)
    fm = flow.fundamental_matrix(system, t, t0, cfg)
    tree = {
        "command": "flow",
        "t0": t0.tolist(),
        "t": t.tolist(),
        "chi": _matrix_tree(fm.value),
        "condition_number": float(_fmt(fm.condition_number)),
    }
    if args.x0 is not None:
        x0 = _parse_point(args.x0, system.n)
        tree["x"] = [float(_fmt(v))
                     for v in flow.solve_homogeneous(system, t0, x0, t, cfg,
                                                     check=False)]
    if args.phi0 is not None:
        phi0 = _parse_point(args.phi0, system.n)
        tree["phi"] = [float(_fmt(v))
                       for v in flow.solve_adjoint(system, t0, phi0, t, cfg,
                                                   check=False)]
    return tree


def cmd_gramian(args) -> dict:
    system, cfg, _ = build_system(load_config(args.config))
    t0 = _parse_point(args.t0, system.m)
    t = _parse_point(args.t, system.m)
    curve = _parse_path(args.force_path, system.m) if args.force_path else None
    func = (gramian.controllability_gramian if args.kind == "C"
            else gramian.reachability_gramian)
    g = func(system, t0, t, cfg, force_curve=curve)
    return {
        "command": "gramian",
        "kind": g.kind,
        "t0": t0.tolist(),
        "t": t.tolist(),
        "value": _matrix_tree(g.value),
        "rank": gramian.numerical_rank(g.value, cfg),
        "path_dependent": g.path_dependent,
    }


def cmd_kalman(args) -> dict:
    system, cfg, _ = build_system(load_config(args.config))
    G = kalman.controllability_matrix(system, cfg)
    return {
        "command": "kalman",
        "G": _matrix_tree(G.value),
        "block_index": [{"alpha": a, "exponents": list(ks)}
                        for a, ks in G.block_index],
        "rank": kalman.rank_G(G, cfg),
        "state_dimension": system.n,
    }


def cmd_analyze(args) -> dict:
    system, cfg, _ = build_system(load_config(args.config))
    t0 = _parse_point(args.t0, system.m)
    t = _parse_point(args.t, system.m)
    tree: dict = {"command": "analyze", "t0": t0.tolist(), "t": t.tolist(),
                  "constant_system": system.is_constant}
    if system.is_constant:
        x0 = (_parse_point(args.x0, system.n) if args.x0 is not None
              else np.zeros(system.n))
        y = (_parse_point(args.y, system.n) if args.y is not None
             else np.zeros(system.n))
        report = kalman.autonomous_analysis(system, t0, x0, t, y, cfg)
        tree["autonomous"] = {
            "rank_G": report.rank_G,
            "transfer_feasible": report.transfer_feasible,
            "transfer_residual": float(_fmt(report.transfer_residual)),
            "phase_controllable": report.phase_controllable,
            "phase_reachable": report.phase_reachable,
            "completely_controllable": report.completely_controllable,
            "completely_reachable": report.completely_reachable,
            "gramian_condition": _condition_tree(report.gramian_condition),
            "rank_C": report.gramian_rank,
            "gramian_transfer_feasible": report.gramian_transfer_feasible,
        }
        if report.warning:
            tree.setdefault("warnings", []).append(report.warning)
    if args.x0 is not None and args.y is not None:
        x0 = _parse_point(args.x0, system.n)
        y = _parse_point(args.y, system.n)
        decision = gramian.decide_transfer(system, t0, x0, t, y, cfg)
        tree["transfer"] = {
            "feasible": decision.feasible,
            "residual": float(_fmt(decision.residual)),
            "ordering": decision.ordering,
            "within_subspace_guarantee": decision.ordered_weakly,
            "rank_C": decision.rank,
        }
    if np.all(t0 < t):
        complete = gramian.decide_complete(system, t0, t, cfg)
        tree["complete"] = {
            "completely_controllable": complete.completely_controllable,
            "completely_reachable": complete.completely_reachable,
            "rank_C": complete.rank,
        }
    else:
        basis = gramian.controllability_space(system, t0, t, cfg)
        tree["complete"] = {
            "completely_controllable": basis.rank == system.n,
            "completely_reachable": basis.rank == system.n,
            "rank_C": basis.rank,
            "note": "endpoint pair is not strictly ordered",
        }
    return tree


def cmd_synthesize(args) -> dict:
    system, cfg, _ = build_system(load_config(args.config))
    t0 = _parse_point(args.t0, system.m)
    t = _parse_point(args.t, system.m)
    x0 = _parse_point(args.x0, system.n)
    y = _parse_point(args.y, system.n)
    result = synth.synthesize_transfer(system, t0, x0, t, y, cfg)
    tree = {
        "command": "synthesize",
        "feasible": result.feasible,
        "residual": float(_fmt(result.residual)),
        "ordering": result.ordering,
        "v": [float(_fmt(v)) for v in result.control.v],
        "control": result.control.describe(),
    }
    if result.feasible:
        verification = synth.verify_transfer(system, result.control, t0, x0, t,
                                             target=y, cfg=cfg)
        tree["verification"] = {
            "endpoint": [float(_fmt(v)) for v in verification.endpoint],
            "error": float(_fmt(verification.error)),
        }
    return tree


def cmd_simulate(args) -> dict:
    system, cfg, _ = build_system(load_config(args.config))
    t0 = _parse_point(args.t0, system.m)
    t = _parse_point(args.t, system.m)
    x0 = _parse_point(args.x0, system.n)
    control_doc = load_config(args.control)
    data = control_doc["u"] if isinstance(control_doc, dict) else control_doc
    u = _load_control(data, system)
    report = check_control_compat(system, u, cfg)
    if not report.passed:
        raise CompatibilityError(report)
    x = flow.solve_controlled(system, u, t0, x0, t, cfg=cfg, check=False)
    return {
        "command": "simulate",
        "t0": t0.tolist(),
        "t": t.tolist(),
        "control_condition": _condition_tree(report),
        "endpoint": [float(_fmt(v)) for v in x],
    }


# --- rendering / entry point ------------------------------------------------

def _render(tree: dict, indent: int = 0) -> list[str]:
    lines = []
    pad = "  " * indent
    for key, value in tree.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_render(value, indent + 1))
        elif (isinstance(value, list) and value
              and all(isinstance(v, dict) for v in value)):
            lines.append(f"{pad}{key}:")
            for v in value:
                lines.append(f"{pad}  -")
                lines.extend(_render(v, indent + 2))
        elif (isinstance(value, list) and value
              and all(isinstance(v, list) for v in value)):
            lines.append(f"{pad}{key}:")
            for row in value:
                lines.append(f"{pad}  [" + ", ".join(_fmt(x) for x in row) + "]")
        else:
            lines.append(f"{pad}{key}: {value}")
    return lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mtcontrol",
        description="Controllability analysis of multitime linear PDE systems.")
    parser.add_argument("--json", action="store_true",
                        help="emit the report as JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *flags):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config", help="path to the system JSON config")
        for flag, required in flags:
            p.add_argument(flag, required=required)
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "run all compatibility condition checks")
    add("flow", cmd_flow, "fundamental matrix and solutions",
        ("--t0", True), ("--t", True), ("--x0", False), ("--phi0", False))
    p = add("gramian", cmd_gramian, "controllability/reachability gramian",
            ("--t0", True), ("--t", True), ("--force-path", False))
    p.add_argument("--kind", choices=["C", "R"], default="C")
    add("kalman", cmd_kalman, "autonomous controllability matrix G")
    add("analyze", cmd_analyze, "feasibility and complete controllability",
        ("--t0", True), ("--t", True), ("--x0", False), ("--y", False))
    add("synthesize", cmd_synthesize, "synthesize a transfer control",
        ("--t0", True), ("--t", True), ("--x0", True), ("--y", True))
    add("simulate", cmd_simulate, "run a controlled solve",
        ("--t0", True), ("--t", True), ("--x0", True), ("--control", True))
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tree = args.func(args)
        code = 0
    except CompatibilityError as exc:
        tree = {"command": args.command, **_refusal(exc)}
        code = 2
    except (ConfigError, ValueError) as exc:
        tree = {"command": args.command, "error": str(exc)}
        code = 2
    if args.json:
        print(json.dumps(tree, indent=2, sort_keys=False))
    else:
        print("\n".join(_render(tree)))
    return code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
