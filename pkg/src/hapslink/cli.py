"""Command-line interface: sweeps, budgets, validation, preset listing.

Exit codes: 0 success, 1 validation failure, 2 configuration error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .budget import run_budget
from .errors import ParameterError
from .montecarlo import McConfig
from .presets import PresetSpec, Scenario, get_preset, preset_names
from .sweep import SweepResult, run_eta_sweep, run_sweep
from .validate import run_validate

_DEFAULT_SEED = 20260811


def _env_seed() -> int:
    return int(os.environ.get("HAPSLINK_SEED", _DEFAULT_SEED))


def _parse_snr_axis(text: str) -> tuple:
    """'start:stop:step' inclusive axis, or a single value."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ParameterError(f"--snr expects start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise ParameterError(f"bad --snr range {text!r}")
        axis = []
        v = start
        while v <= stop + 1e-9:
            axis.append(round(v, 9))
            v += step
        return tuple(axis)
    return (float(text),)


def _parse_list(text: str) -> tuple:
    return tuple(float(v) for v in text.split(","))


def _load_spec(name_or_path: str, kind: str) -> PresetSpec:
    if os.path.exists(name_or_path):
        with open(name_or_path) as fh:
            scenario = Scenario.from_yaml(fh.read())
        return PresetSpec(kind=kind, scenarios=(scenario,))
    return get_preset(name_or_path)


def _apply_overrides(scenario: Scenario, args) -> Scenario:
    changes = {}
    if getattr(args, "snr", None) and args.command == "sweep":
        changes["snr_axis_db"] = _parse_snr_axis(args.snr)
    if getattr(args, "rb", None):
        changes["rates_bpcu"] = _parse_list(args.rb)
    return scenario.replace(**changes) if changes else scenario


def _mc_from_args(args) -> McConfig:
    return McConfig(
        trials=args.trials,
        seed=args.seed,
        workers=args.workers,
    )


def _emit(result: SweepResult, args) -> None:
    if args.out:
        paths = result.write(args.out, args.format)
        print("\n".join(paths))
    elif args.format == "json":
        sys.stdout.write(result.to_json_text())
    else:
        sys.stdout.write(result.to_csv_text())


def _metrics(args) -> tuple:
    return tuple(args.metric.split(","))


def _engines(args) -> tuple:
    return tuple(args.engine.split(","))


def cmd_sweep(args) -> int:
    spec = _load_spec(args.scenario, "sweep")
    mc = _mc_from_args(args)
    rows: list = []
    meta: dict = {}
    scenarios = []
    for scenario in spec.scenarios:
        scenario = _apply_overrides(scenario, args)
        scenarios.append(scenario)
        res = run_sweep(
            scenario,
            metrics=_metrics(args),
            engines=_engines(args),
            mc=mc,
            axis_includes_eta=args.axis_includes_eta,
        )
        rows.extend(res.rows)
        meta = res.meta
    meta["scenarios"] = [s.to_dict() for s in scenarios]
    _emit(SweepResult(rows=rows, meta=meta), args)
    return 0


def cmd_eta_sweep(args) -> int:
    spec = _load_spec(args.scenario, "eta")
    mc = _mc_from_args(args)
    eta_axis = _parse_list(args.eta) if args.eta else (spec.eta_axis or (1.0,))
    fixed = float(args.snr) if args.snr else spec.fixed_snr_db
    rows: list = []
    meta: dict = {}
    scenarios = []
    for scenario in spec.scenarios:
        scenario = _apply_overrides(scenario, args)
        scenarios.append(scenario)
        res = run_eta_sweep(
            scenario,
            eta_axis,
            fixed,
            metrics=_metrics(args),
            engines=_engines(args),
            mc=mc,
        )
        rows.extend(res.rows)
        meta = res.meta
    meta["scenarios"] = [s.to_dict() for s in scenarios]
    _emit(SweepResult(rows=rows, meta=meta), args)
    return 0


def cmd_budget(args) -> int:
    spec = _load_spec(args.scenario, "budget")
    reports = [run_budget(s) for s in spec.scenarios]
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=1))
    else:
        print("\n\n".join(r.render() for r in reports))
    return 0


def cmd_validate(args) -> int:
    report = run_validate(level=args.level, seed=args.seed)
    text = json.dumps(report, sort_keys=True, indent=1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if report["passed"] else 1


def cmd_presets(args) -> int:
    if args.action != "list":
        raise ParameterError(f"unknown presets action {args.action!r}")
    for name, notes in preset_names():
        print(f"{name:10s} {notes}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hapslink",
        description="Dual-platform harvesting relay link analysis: outage, capacity, throughput, budgets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario=True):
        if scenario:
            p.add_argument("--scenario", required=True, help="preset name or scenario YAML path")
        p.add_argument("--metric", default="op,ec,tp", help="subset of op|ec|tp, comma separated")
        p.add_argument("--engine", default="analytic,mc,oracle", help="subset of analytic,mc,oracle")
        p.add_argument("--rb", default=None, help="comma list of rates in bpcu")
        p.add_argument("--trials", type=int, default=1_000_000, help="Monte-Carlo trials")
        p.add_argument("--seed", type=int, default=_env_seed(), help="Monte-Carlo seed")
        p.add_argument("--workers", type=int, default=1, help="parallel workers (result-neutral)")
        p.add_argument("--out", default=None, help="output path (sidecar written next to it)")
        p.add_argument("--format", default="csv", choices=("csv", "json"), help="output format")

    p_sweep = sub.add_parser("sweep", help="evaluate an SNR-axis grid")
    common(p_sweep)
    p_sweep.add_argument("--snr", default=None, help="axis as start:stop:step in dB")
    p_sweep.add_argument(
        "--axis-includes-eta",
        action="store_true",
        help="treat the SNR axis as already including the conversion efficiency",
    )
    p_sweep.set_defaults(fn=cmd_sweep)

    p_eta = sub.add_parser("eta-sweep", help="evaluate an efficiency grid at fixed SNR")
    common(p_eta)
    p_eta.add_argument("--snr", default=None, help="fixed SNR-axis value in dB")
    p_eta.add_argument("--eta", default=None, help="comma list of efficiencies in (0,1]")
    p_eta.set_defaults(fn=cmd_eta_sweep)

    p_budget = sub.add_parser("budget", help="deterministic power budget report")
    p_budget.add_argument("--scenario", required=True, help="case1|case2|case3, preset, or YAML path")
    p_budget.add_argument("--format", default="text", choices=("text", "json"))
    p_budget.set_defaults(fn=cmd_budget)

    p_val = sub.add_parser("validate", help="run the self-validation suite")
    p_val.add_argument("--level", default="quick", choices=("quick", "full"))
    p_val.add_argument("--seed", type=int, default=_env_seed())
    p_val.add_argument("--out", default=None, help="write the JSON report here as well")
    p_val.set_defaults(fn=cmd_validate)

    p_presets = sub.add_parser("presets", help="preset registry operations")
    p_presets.add_argument("action", choices=("list",))
    p_presets.set_defaults(fn=cmd_presets)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParameterError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
