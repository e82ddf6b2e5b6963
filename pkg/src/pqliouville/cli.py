"""Command-line surface: classification, selection, identity and solver runs.

Exit codes: 0 = ran (including "no theorem applies"), 2 = usage or
configuration error, 3 = internal numerical failure (Newton stall
without fallback).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .classify import classify
from .errors import AdmissibilityError
from .fields import CATALOG, ManufacturedField
from .identities import (
    attach_order,
    bochner_check,
    change_of_variable_check,
    refinement_order,
    scaling_check,
)
from .instance import ProblemInstance
from .ishii_lions import il_parameter_window
from .params import ParamError, expand_instances, parse_params, radial_settings
from .radial import (
    RadialProblem,
    default_fit_window,
    fit_blowup_exponent,
    gradient_vs_distance,
    solve_radial,
)
from .report import Report, atomic_write_text
from .selection import select_b_product, sum_selection
from .trinomial import product_trinomial, verify_negativity

DEFAULT_ORACLE_POINTS = 2048
TOLERANCE_DEFAULTS = {"identity_factor": 25.0, "newton_tol": 1e-10}


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _parse_tolerances(pairs: list[str]) -> dict:
    out = dict(TOLERANCE_DEFAULTS)
    for pair in pairs or []:
        name, _, value = pair.partition("=")
        if name not in out:
            raise CliError(f"unknown tolerance {name!r}")
        try:
            out[name] = float(value)
        except ValueError:
            raise CliError(f"tolerance {name!r}: not a number: {value!r}") from None
    return out


def _load_params(args) -> dict[str, list[str]]:
    if args.params:
        try:
            with open(args.params) as fh:
                text = fh.read()
        except OSError as exc:
            raise CliError(f"cannot read parameter file: {exc}") from None
        return parse_params(text)
    return {}


def _instances(args) -> list[ProblemInstance]:
    params = _load_params(args)
    inline = {key: getattr(args, key, None) for key in ("kind", "N", "p", "q", "s", "m", "M")}
    for key, value in inline.items():
        if value is not None:
            params[key] = [str(value)]
    if not params:
        raise CliError("no instance parameters given (use --params or inline flags)")
    return expand_instances(params)


def _instance_args(sub):
    sub.add_argument("--kind", choices=("hamilton_jacobi", "product", "sum"))
    sub.add_argument("--N", type=int)
    sub.add_argument("--p", type=float)
    sub.add_argument("--q", type=float)
    sub.add_argument("--s", type=float)
    sub.add_argument("--m", type=float)
    sub.add_argument("--M", type=float)


def _common_args(sub):
    sub.add_argument("--params", help="parameter file (flat key = value, grids allowed)")
    sub.add_argument("--out", help="output path (stdout when omitted)")
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--jobs", type=int, default=1)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--optimal-search", action="store_true", dest="optimal_search")
    sub.add_argument("--tol", action="append", metavar="name=value")
    sub.add_argument("--timing", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pqliouville", description=__doc__)
    parser.add_argument("--version", action="version", version=f"pqliouville {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    for name in ("classify", "search-b"):
        sub = subs.add_parser(name)
        _common_args(sub)
        _instance_args(sub)
        if name == "search-b":
            sub.add_argument("--oracle-points", type=int, default=DEFAULT_ORACLE_POINTS)

    sub = subs.add_parser("il-window")
    _common_args(sub)
    sub.add_argument("--q", type=float, required=True)
    sub.add_argument("--m", type=float, required=True)
    sub.add_argument("--gamma-samples", type=int, default=9)

    sub = subs.add_parser("verify-identities")
    _common_args(sub)
    sub.add_argument("--resolution", type=int, default=65, help="coarse nodes per axis")

    sub = subs.add_parser("solve-radial")
    _common_args(sub)
    _instance_args(sub)
    sub.add_argument("--r0", type=float)
    sub.add_argument("--r1", type=float)
    sub.add_argument("--u0", type=float)
    sub.add_argument("--u1", type=float)
    sub.add_argument("--mesh-n", type=int, dest="mesh_n")
    sub.add_argument("--reg-eps", type=float, dest="reg_eps")
    sub.add_argument("--fit", action="store_true", help="fit the near-boundary gradient rate")

    sub = subs.add_parser("sweep")
    _common_args(sub)
    sub.add_argument("--task", choices=("classify", "search-b"), default="classify")

    sub = subs.add_parser("plot-data")
    sub.add_argument("--report", required=True)
    sub.add_argument("--selector", required=True)
    sub.add_argument("--out")
    return parser


def _config_echo(args, extra: dict | None = None) -> dict:
    echo = {
        "command": args.command,
        "seed": getattr(args, "seed", 0),
        "format": getattr(args, "format", "json"),
        "optimal_search": getattr(args, "optimal_search", False),
        "tolerances": _parse_tolerances(getattr(args, "tol", None)),
    }
    params = _load_params(args) if hasattr(args, "params") else {}
    if params:
        echo["params"] = {k: list(v) for k, v in sorted(params.items())}
    if extra:
        echo.update(extra)
    return echo


def _classify_one(payload):
    inst_dict, optimal = payload
    inst = ProblemInstance(**inst_dict)
    return classify(inst, optimal_search=optimal).as_dict()


def _search_one(payload):
    inst_dict, oracle_points = payload
    inst = ProblemInstance(**inst_dict)
    selection = select_b_product(inst) if inst.kind == "product" else sum_selection(inst)
    row = {"instance": inst.as_dict(), "selection": selection.as_dict()}
    if inst.kind == "product":
        coeffs = product_trinomial(inst, 0.0)
        row["trinomial"] = coeffs.as_dict()
        t_ref = selection.t_star if selection.feasible else 1.0
        t_max = 2.0 * max(t_ref, 1.0)
        points = max(1000, oracle_points)
        t_min, value_min = verify_negativity(coeffs, t_max, points)
        grid = np.linspace(0.0, t_max, points)
        row["oracle"] = {
            "t_max": t_max,
            "grid_points": points,
            "t_min": t_min,
            "value_min": value_min,
            "curve_t": [float(x) for x in grid],
            "curve_value": [float(x) for x in coeffs.value(grid)],
        }
    return row


def _run_parallel(worker, payloads, jobs):
    if jobs <= 1 or len(payloads) <= 1:
        return [worker(p) for p in payloads]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, payloads))


def _cmd_classify(args) -> tuple[Report, int]:
    instances = _instances(args)
    payloads = [(inst.as_dict(), args.optimal_search) for inst in instances]
    started = time.perf_counter()
    results = _run_parallel(_classify_one, payloads, args.jobs)
    timing = [{"total_s": time.perf_counter() - started}]
    return Report(__version__, _config_echo(args), results, timing), 0


def _cmd_search_b(args) -> tuple[Report, int]:
    instances = _instances(args)
    oracle_points = getattr(args, "oracle_points", DEFAULT_ORACLE_POINTS)
    payloads = [(inst.as_dict(), oracle_points) for inst in instances]
    started = time.perf_counter()
    results = _run_parallel(_search_one, payloads, args.jobs)
    timing = [{"total_s": time.perf_counter() - started}]
    echo = _config_echo(args, {"oracle_points": oracle_points})
    return Report(__version__, echo, results, timing), 0


def _cmd_il_window(args) -> tuple[Report, int]:
    window = il_parameter_window(args.q, args.m, gamma_samples=args.gamma_samples)
    results = [{"q": args.q, "m": args.m, "window": window.as_dict()}]
    return Report(__version__, _config_echo(args, {"q": args.q, "m": args.m}), results), 0


def _identity_suite(resolution: int, factor: float) -> list[dict]:
    field = CATALOG["offset_sine"]
    results = []
    n_coarse = resolution
    n_fine = 2 * (resolution - 1) + 1
    for b in (0.5, 1.0, 2.0, 5.0):
        for p in (2.2, 3.0):
            for q in (1.5, 2.0):
                coarse = change_of_variable_check(
                    field.sample(n_coarse), b, p, q,
                    tolerance=factor / (n_coarse - 1) ** 2,
                )
                fine = change_of_variable_check(
                    field.sample(n_fine), b, p, q,
                    tolerance=factor / (n_fine - 1) ** 2,
                )
                fine = attach_order(fine, refinement_order(coarse, fine))
                results.append(
                    {
                        "check": "change_of_variable",
                        "params": {"b": b, "p": p, "q": q, "h": 1.0 / (n_fine - 1)},
                        "report": fine.as_dict(),
                    }
                )
    for name in ("saddle", "offset_sine", "sine_product"):
        rep = bochner_check(CATALOG[name].sample(n_fine), 2, tolerance=factor / (n_fine - 1) ** 2)
        results.append(
            {"check": "bochner", "params": {"field": name, "h": 1.0 / (n_fine - 1)}, "report": rep.as_dict()}
        )
    for fname, k, alpha, p in (("radial_square", 2.0, 1.0, 2.0), ("sine_x1", 0.5, 2.0, 3.0)):
        f: ManufacturedField = CATALOG[fname]
        rep = scaling_check(f, k, alpha, p, n=n_coarse,
                            tolerance=factor * ((f.hi - f.lo) / (n_coarse - 1)) ** 2)
        results.append(
            {
                "check": "scaling",
                "params": {"field": fname, "k": k, "alpha": alpha, "p": p},
                "report": rep.as_dict(),
            }
        )
    return results


def _cmd_verify_identities(args) -> tuple[Report, int]:
    tolerances = _parse_tolerances(args.tol)
    started = time.perf_counter()
    results = _identity_suite(args.resolution, tolerances["identity_factor"])
    timing = [{"total_s": time.perf_counter() - started}]
    echo = _config_echo(args, {"resolution": args.resolution})
    return Report(__version__, echo, results, timing), 0


def _cmd_solve_radial(args) -> tuple[Report, int]:
    instances = _instances(args)
    if len(instances) != 1:
        raise CliError("solve-radial expects exactly one instance")
    inst = instances[0]
    params = _load_params(args)
    settings = radial_settings(params)
    for key, arg_key in (("r0", "r0"), ("r1", "r1"), ("u0", "u0"), ("u1", "u1"),
                         ("mesh_n", "mesh_n"), ("reg_eps", "reg_eps")):
        value = getattr(args, arg_key, None)
        if value is not None:
            settings[key] = value
    for required in ("r0", "r1", "u0", "u1"):
        if required not in settings:
            raise CliError(f"solve-radial requires {required}")
    tolerances = _parse_tolerances(args.tol)
    try:
        prob = RadialProblem(
            inst=inst,
            r0=settings["r0"],
            r1=settings["r1"],
            u_at_r0=settings["u0"],
            u_at_r1=settings["u1"],
            mesh_n=int(settings.get("mesh_n", 256)),
            reg_eps=settings.get("reg_eps", 1e-8),
            log_transform=bool(settings.get("log_transform", False)),
        )
    except AdmissibilityError as exc:
        raise CliError(str(exc)) from None
    started = time.perf_counter()
    sol = solve_radial(prob, tol=tolerances["newton_tol"])
    timing = [{"total_s": time.perf_counter() - started}]
    row = {
        "instance": inst.as_dict(),
        "radial": {k: settings.get(k) for k in sorted(settings)},
        "converged": sol.converged,
        "failure": sol.failure,
        "residual_norm": sol.residual_norm,
        "newton_iters": sol.newton_iters,
        "continuation_steps": sol.continuation_steps,
        "r": [float(x) for x in sol.r],
        "u": [float(x) for x in sol.u],
        "du": [float(x) for x in sol.du],
    }
    code = 0
    if sol.converged:
        profile = gradient_vs_distance(sol)
        row["gradient_profile"] = [[float(a), float(b)] for a, b in profile]
        if args.fit:
            window = default_fit_window(sol)
            try:
                row["fit"] = fit_blowup_exponent(profile, window).as_dict()
            except AdmissibilityError as exc:
                row["fit"] = {"error": str(exc)}
    else:
        code = 3
    echo = _config_echo(args, {"radial": {k: settings.get(k) for k in sorted(settings)}})
    return Report(__version__, echo, [row], timing), code


def _cmd_sweep(args) -> tuple[Report, int]:
    instances = _instances(args)
    if args.task == "classify":
        payloads = [(inst.as_dict(), args.optimal_search) for inst in instances]
        worker = _classify_one
    else:
        payloads = [(inst.as_dict(), 0) for inst in instances]
        worker = _sweep_search_one
    started = time.perf_counter()
    results = _run_parallel(worker, payloads, args.jobs)
    timing = [{"total_s": time.perf_counter() - started}]
    echo = _config_echo(args, {"task": args.task})
    return Report(__version__, echo, results, timing), 0


def _sweep_search_one(payload):
    inst_dict, _ = payload
    inst = ProblemInstance(**inst_dict)
    selection = select_b_product(inst) if inst.kind == "product" else sum_selection(inst)
    return {"instance": inst.as_dict(), "selection": selection.as_dict()}


def _plot_rows(report: dict, selector: str) -> tuple[str, list]:
    results = report.get("results", [])
    if selector == "gradient_profile":
        for row in results:
            if "gradient_profile" in row:
                return "# d,abs_du", row["gradient_profile"]
        raise CliError("report contains no gradient profile")
    if selector == "trinomial":
        for row in results:
            oracle = row.get("oracle")
            if oracle and "curve_t" in oracle:
                return "# t,value", list(zip(oracle["curve_t"], oracle["curve_value"]))
        raise CliError("report contains no trinomial oracle curve")
    raise CliError(f"unknown selector {selector!r}")


def _cmd_plot_data(args) -> int:
    try:
        with open(args.report) as fh:
            report = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read report: {exc}") from None
    header, rows = _plot_rows(report, args.selector)
    buf = io.StringIO()
    buf.write(header + "\n")
    for row in rows:
        buf.write(",".join(repr(float(x)) for x in row) + "\n")
    if args.out:
        atomic_write_text(args.out, buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def _csv_text(report: Report, command: str) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if command in ("classify", "sweep"):
        writer.writerow(
            ["index", "kind", "N", "p", "q", "s", "m", "M", "theorem", "liouville", "estimate_exponent"]
        )
        for i, row in enumerate(report.results):
            inst = row["instance"]
            writer.writerow(
                [
                    i,
                    inst["kind"],
                    inst["N"],
                    inst["p"],
                    inst["q"],
                    inst["s"],
                    inst["m"],
                    inst["M"],
                    row.get("theorem", ""),
                    row.get("liouville", ""),
                    row.get("estimate_exponent", ""),
                ]
            )
    elif command == "solve-radial":
        writer.writerow(["r", "u", "du_face"])
        row = report.results[0]
        du = row["du"]
        for i, (r, u) in enumerate(zip(row["r"], row["u"])):
            writer.writerow([r, u, du[i] if i < len(du) else ""])
    else:
        raise CliError("csv format is supported for classify, sweep and solve-radial")
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "plot-data":
            return _cmd_plot_data(args)
        handler = {
            "classify": _cmd_classify,
            "search-b": _cmd_search_b,
            "il-window": _cmd_il_window,
            "verify-identities": _cmd_verify_identities,
            "solve-radial": _cmd_solve_radial,
            "sweep": _cmd_sweep,
        }[args.command]
        report, code = handler(args)
    except (CliError, ParamError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return getattr(exc, "code", 2)
    except AdmissibilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "csv":
        text = _csv_text(report, args.command)
    else:
        text = report.to_json(include_timing=args.timing)
    if args.out:
        atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
