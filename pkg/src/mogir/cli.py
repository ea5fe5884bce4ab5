"""Command-line front end: ``mogir {analyze,simulate,compare,verify}``.

Exit codes: 0 ok, 2 configuration error, 3 simulation error, 4 discrepancy
under ``--strict``, 5 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import replace

from mogir import analytics, comparison, model_core, policy, simulation, verification
from mogir.config import OUTPUT_FORMATS, RunConfig, load_run_config
from mogir.errors import InvalidConfig, InvalidParams, MogirError
from mogir.policy import Strategy

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SIMULATION = 3
EXIT_DISCREPANCY = 4
EXIT_VERIFY = 5

TABLE_DIGITS = 6
JSON_DIGITS = 12


class CommandFailed(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


# -- rendering --------------------------------------------------------------


def _table_num(v) -> str:
    if isinstance(v, str):
        return v
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return "n/a"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, int):
        return str(v)
    return f"{v:.{TABLE_DIGITS}g}"


def _csv_num(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "nan" if math.isnan(v) else f"{v:.{JSON_DIGITS}g}"
    return str(v)


def _json_value(v):
    if isinstance(v, dict):
        return {k: _json_value(val) for k, val in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(val) for val in v]
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    v = float(v)
    if not math.isfinite(v):
        return None
    return float(f"{v:.{JSON_DIGITS}g}")


def render_table(headers, rows, title: str | None = None) -> str:
    cells = [[str(h) for h in headers]] + [[_table_num(v) for v in row] for row in rows]
    widths = [max(len(r[c]) for r in cells) for c in range(len(headers))]
    lines = [title] if title else []
    for k, row in enumerate(cells):
        lines.append("  ".join(val.ljust(w) for val, w in zip(row, widths)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_csv(headers, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow([_csv_num(v) for v in row])
    return buf.getvalue()


def render_json(data) -> str:
    return json.dumps(_json_value(data), indent=2) + "\n"


# -- analyze ----------------------------------------------------------------


def analyze_data(cfg: RunConfig) -> dict:
    p, ref = cfg.params, cfg.reference_state
    strategies = {}
    for s in Strategy:
        rule = policy.rule_for(p, s)
        law = analytics.law_of_motion(p, s)
        lr = analytics.longrun_moments(p, s)
        strategies[s.value] = {
            "label": s.label,
            "rule": {
                "c0": rule.c0,
                "c_x": rule.c_x,
                "c_pi": rule.c_pi,
                "taylor_principle": policy.satisfies_taylor_principle(rule),
            },
            "law_of_motion": {
                "x_const": law.x_const,
                "x_lagpi": law.x_lagpi,
                "pi_const": law.pi_const,
                "pi_lagpi": law.pi_lagpi,
            },
            "longrun": {
                "mean_pi": lr.mean_pi,
                "mean_x": lr.mean_x,
                "var_pi": lr.var_pi,
                "mean_growth": lr.mean_growth,
            },
            "expected_growth": {"at_reference": analytics.expected_growth(p, s, ref)},
        }
    ti = comparison.demonstrate_time_inconsistency(p, ref)
    return {
        "command": "analyze",
        "params": p.as_dict(),
        "reference_state": _state_dict(ref),
        "strategies": strategies,
        "time_inconsistency": {
            "one_step_gap": ti.one_step_gap,
            "long_run_gap": ti.long_run_gap,
            "closed_form": ti.closed_form,
            "coincide": ti.coincide,
        },
    }


def _state_dict(s: model_core.EconState) -> dict:
    return {"x": s.x, "pi": s.pi, "y_pot": s.y_pot, "i": s.i}


_ANALYZE_SECTIONS = (
    ("rule", "Policy rules  i = c0 + c_x*x + c_pi*(pi - pi_n)"),
    ("law_of_motion", "Laws of motion in d = pi - pi_n"),
    ("longrun", "Long-run moments"),
    ("expected_growth", "One-step expected growth at the reference state"),
)


def cmd_analyze(cfg: RunConfig) -> tuple[str, int]:
    data = analyze_data(cfg)
    fmt = cfg.output_format
    if fmt == "json":
        return render_json(data), EXIT_OK
    if fmt == "csv":
        rows = []
        for key, body in data["strategies"].items():
            for section, _ in _ANALYZE_SECTIONS:
                rows += [(key, section, q, v) for q, v in body[section].items()]
        rows += [("growthmax-vs-it", "time_inconsistency", q, v) for q, v in data["time_inconsistency"].items()]
        return render_csv(("strategy", "section", "quantity", "value"), rows), EXIT_OK

    blocks = []
    for section, title in _ANALYZE_SECTIONS:
        quantities = list(next(iter(data["strategies"].values()))[section])
        rows = [
            [body["label"]] + [body[section][q] for q in quantities]
            for body in data["strategies"].values()
        ]
        blocks.append(render_table(["strategy"] + quantities, rows, title))
    ti = data["time_inconsistency"]
    blocks.append(
        render_table(
            ["one_step_gap", "long_run_gap", "closed_form", "coincide"],
            [[ti["one_step_gap"], ti["long_run_gap"], ti["closed_form"], ti["coincide"]]],
            "Time inconsistency: growth-max temptation vs. long-run cost, 1/(4*gamma*lam^2)",
        )
    )
    return "\n\n".join(blocks) + "\n", EXIT_OK


# -- simulate ---------------------------------------------------------------

PATH_COLUMNS = ("t", "x", "pi", "y_pot", "y", "i")


def _analytic_targets(p, strategy) -> dict:
    lr = analytics.longrun_moments(p, strategy)
    return {
        "mean_pi": lr.mean_pi,
        "mean_x": lr.mean_x,
        "var_pi": lr.var_pi,
        "mean_growth": lr.mean_growth,
        "lag1_autocorr_pi": analytics.law_of_motion(p, strategy).pi_lagpi,
    }


def cmd_simulate(cfg: RunConfig, strategy: Strategy, dump_paths: bool = False) -> tuple[str, int]:
    p = cfg.params
    rule = policy.rule_for(p, strategy)
    try:
        # path 0 does not depend on how many other paths are drawn
        sim_cfg = replace(cfg.sim, n_paths=1) if dump_paths else cfg.sim
        res = simulation.simulate(p, rule, sim_cfg)
        if dump_paths:
            rows = [
                (t, float(res.x[0, t]), float(res.pi[0, t]), float(res.y_pot[0, t]),
                 float(res.y[0, t]), float(res.i[0, t]))
                for t in range(res.x.shape[1])
            ]
            return render_csv(PATH_COLUMNS, rows), EXIT_OK
        moments = simulation.estimate_moments(res)
    except InvalidConfig:
        raise
    except (MogirError, ArithmeticError, ValueError) as exc:
        raise CommandFailed(EXIT_SIMULATION, f"simulation error: {exc}")

    targets = _analytic_targets(p, strategy)
    cells = [comparison.check_cell(name, targets[name], est) for name, est in moments.items()]
    n_obs = {name: est.n_obs for name, est in moments.items()}
    fmt = cfg.output_format
    if fmt == "json":
        return render_json({
            "command": "simulate",
            "strategy": strategy.value,
            "seed": cfg.sim.seed,
            "se_method": moments.se_method,
            "rule": {"c0": rule.c0, "c_x": rule.c_x, "c_pi": rule.c_pi},
            "moments": {
                c.statistic: {
                    "estimate": c.simulated,
                    "std_error": c.std_error,
                    "n_obs": n_obs[c.statistic],
                    "analytic": c.analytic,
                    "flag": c.flag,
                }
                for c in cells
            },
        }), EXIT_OK
    headers = ("statistic", "estimate", "std_error", "n_obs", "analytic", "flag")
    rows = [(c.statistic, c.simulated, c.std_error, n_obs[c.statistic], c.analytic, c.flag) for c in cells]
    if fmt == "csv":
        return render_csv(("strategy",) + headers, [(strategy.value,) + r for r in rows]), EXIT_OK
    title = (
        f"{strategy.label}: {cfg.sim.n_paths} paths x {cfg.sim.horizon} periods, "
        f"burn-in {cfg.sim.burn_in}, seed {cfg.sim.seed}, standard errors: {moments.se_method}"
    )
    return render_table(headers, rows, title) + "\n", EXIT_OK


# -- compare ----------------------------------------------------------------

COMPARE_TABLES = (
    ("Table 1: long-run targets", ("mean_pi", "mean_x")),
    ("Table 2: one-step expected growth at the reference state", ("one_step_growth",)),
    ("Table 3: long-run growth", ("mean_growth",)),
    ("Supplementary: inflation dispersion and persistence", ("var_pi", "lag1_autocorr_pi")),
)


def cmd_compare(cfg: RunConfig, strict: bool = False) -> tuple[str, int, str]:
    try:
        report = comparison.compare_strategies(cfg.params, cfg.sim, cfg.reference_state)
    except InvalidConfig:
        raise
    except (MogirError, ArithmeticError) as exc:
        raise CommandFailed(EXIT_SIMULATION, f"simulation error: {exc}")

    code = EXIT_OK
    note = ""
    if strict and report.discrepancies:
        code = EXIT_DISCREPANCY
        note = "discrepancy flags raised under --strict: " + ", ".join(
            f"{s.value}/{stat}" for s, stat in report.discrepancies
        )
    headers = ("strategy", "statistic", "analytic", "simulated", "std_error", "flag")
    rows = [
        (s.value, c.statistic, c.analytic, c.simulated, c.std_error, c.flag)
        for s, rep in report.per_strategy.items()
        for c in rep.cells
    ]
    ti = report.time_inconsistency
    se_method = next(iter(report.per_strategy.values())).simulated.se_method
    fmt = cfg.output_format
    if fmt == "csv":
        return render_csv(headers, rows), code, note
    if fmt == "json":
        return render_json({
            "command": "compare",
            "seed": cfg.sim.seed,
            "se_method": se_method,
            "cells": [dict(zip(headers, r)) for r in rows],
            "ranking": [s.value for s in report.ranking],
            "time_inconsistency": {
                "one_step_gap": ti.one_step_gap,
                "long_run_gap": ti.long_run_gap,
                "closed_form": ti.closed_form,
                "coincide": ti.coincide,
            },
            "discrepancies": [[s.value, stat] for s, stat in report.discrepancies],
        }), code, note

    blocks = []
    labels = {s.value: s.label for s in Strategy}
    for title, stats in COMPARE_TABLES:
        sub = [(labels[r[0]],) + r[1:] for r in rows if r[1] in stats]
        blocks.append(render_table(headers, sub, title))
    blocks.append(
        "Long-run growth ranking: " + " > ".join(s.label for s in report.ranking)
    )
    blocks.append(
        render_table(
            ["one_step_gap", "long_run_gap", "closed_form", "coincide"],
            [[ti.one_step_gap, ti.long_run_gap, ti.closed_form, ti.coincide]],
            "Time inconsistency of strict inflation targeting",
        )
    )
    blocks.append(
        f"Simulation: {cfg.sim.n_paths} paths x {cfg.sim.horizon} periods, burn-in "
        f"{cfg.sim.burn_in}, seed {cfg.sim.seed}; standard errors: {se_method}; "
        f"flags at {comparison.Z_TOL:g} SE; {len(report.discrepancies)} discrepancies"
    )
    return "\n\n".join(blocks) + "\n", code, note


# -- verify -----------------------------------------------------------------


def cmd_verify(cfg: RunConfig, checks=verification.CHECKS) -> tuple:
    try:
        results = verification.run_checks(cfg.params, cfg.sim, checks)
    except InvalidConfig:
        raise
    except (MogirError, ArithmeticError) as exc:
        raise CommandFailed(EXIT_VERIFY, f"verification error: {exc}")
    failed = [r.name for r in results if not r.passed]
    headers = ("check", "max_deviation", "tolerance", "unit", "cases", "status")
    rows = [
        (r.name, r.max_deviation, r.tolerance, r.unit, r.n_cases, "pass" if r.passed else "FAIL")
        for r in results
    ]
    fmt = cfg.output_format
    if fmt == "csv":
        out = render_csv(headers, rows)
    elif fmt == "json":
        out = render_json({"command": "verify", "checks": [dict(zip(headers, r)) for r in rows], "failed": failed})
    else:
        out = render_table(headers, rows, "Oracle cross-checks") + "\n"
    if failed:
        return out, EXIT_VERIFY, f"verification failed: {', '.join(failed)}"
    return out, EXIT_OK


# -- entry point ------------------------------------------------------------


def _parse_seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _parse_checks(text: str) -> tuple[str, ...]:
    names = tuple(n.strip() for n in text.split(",") if n.strip())
    unknown = [n for n in names if n not in verification.CHECKS]
    if unknown or not names:
        raise argparse.ArgumentTypeError(
            f"unknown checks {unknown}; choose from {', '.join(verification.CHECKS)}"
        )
    return names


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="TOML run configuration")
    common.add_argument("--format", choices=OUTPUT_FORMATS, default="table")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--seed", type=_parse_seed, help="override the simulation seed")

    parser = argparse.ArgumentParser(
        prog="mogir", description="Policy rules and growth under an inflation-sensitive potential output."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="closed-form rules and moments")
    sim = sub.add_parser("simulate", parents=[common], help="Monte Carlo moments under one rule")
    sim.add_argument("--strategy", choices=[s.value for s in Strategy], default=Strategy.INFLATION_TARGETING.value)
    sim.add_argument("--dump-paths", action="store_true", help="emit per-period CSV of path 0")
    cmp_ = sub.add_parser("compare", parents=[common], help="compare all three strategies")
    cmp_.add_argument("--strict", action="store_true", help="exit 4 on any discrepancy flag")
    ver = sub.add_parser("verify", parents=[common], help="run oracle cross-checks")
    ver.add_argument("--checks", type=_parse_checks, default=verification.CHECKS,
                     help=f"comma-separated subset of {','.join(verification.CHECKS)}")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_run_config(args.config, seed=args.seed, output_format=args.format, output_path=args.out)
        if args.command == "analyze":
            result = cmd_analyze(cfg)
        elif args.command == "simulate":
            result = cmd_simulate(cfg, Strategy(args.strategy), args.dump_paths)
        elif args.command == "compare":
            result = cmd_compare(cfg, args.strict)
        else:
            result = cmd_verify(cfg, args.checks)
    except (InvalidParams, InvalidConfig) as exc:
        print(f"mogir: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CommandFailed as exc:
        print(f"mogir: {exc}", file=sys.stderr)
        return exc.code

    out, code, *note = result
    if cfg.output_path is not None:
        cfg.output_path.write_text(out, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(out)
    if note and note[0]:
        print(f"mogir: {note[0]}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
