"""Grid evaluation across engines, with CSV/JSON emission.

The SNR axis is a reference at full conversion efficiency and dry sky: the
effective SNR fed to every engine is axis + 10 log10(eta) - L_rain.  Output
is one CSV row per grid point plus a JSON metadata sidecar echoing the full
effective configuration; neither contains timestamps, so reruns with the
same configuration and seed are byte-identical.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

from . import __version__ as _version
from .analytic import (
    PerfQuery,
    effective_snr_db,
    ergodic_capacity_upper,
    outage_probability,
)
from .errors import ParameterError
from .linkbudget import rain_attenuation
from .montecarlo import RARE_EVENT_FLOOR, McConfig, mc_ergodic_capacity, mc_outage
from .oracle import DEFAULT_QUAD, QuadratureConfig, cdf_z_quadrature, ec_quadrature
from .presets import Scenario

__all__ = ["SweepResult", "run_sweep", "run_eta_sweep", "ORACLE_OP_ABS_TOL"]

# documented closed-form vs oracle agreement; rows violating it are flagged
ORACLE_OP_ABS_TOL = 1e-6

COLUMNS = (
    "scenario",
    "snr_axis_db",
    "rb_bpcu",
    "eta",
    "eff_snr_db",
    "op_analytic",
    "op_mc",
    "op_mc_se",
    "op_oracle",
    "ec_ub_bpcu",
    "ec_mc_bpcu",
    "ec_mc_se_bpcu",
    "ec_oracle_bpcu",
    "tp_analytic_bpcu",
    "tp_mc_bpcu",
    "tp_mc_se_bpcu",
    "flags",
)

_METRICS = ("op", "ec", "tp")
_ENGINES = ("analytic", "mc", "oracle")


@dataclass
class SweepResult:
    """Ordered grid rows plus the metadata needed to reproduce them."""

    rows: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def to_csv_text(self) -> str:
        lines = [",".join(COLUMNS)]
        for row in self.rows:
            cells = []
            for col in COLUMNS:
                v = row.get(col)
                if v is None:
                    cells.append("")
                elif isinstance(v, float):
                    cells.append(repr(v))
                else:
                    cells.append(str(v))
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json_text(self) -> str:
        return json.dumps({"meta": self.meta, "rows": self.rows}, sort_keys=True, indent=1) + "\n"

    def write(self, path: str, fmt: str = "csv") -> list[str]:
        """Write the table and its sidecar; returns the paths written."""
        if fmt == "csv":
            with open(path, "w") as fh:
                fh.write(self.to_csv_text())
        elif fmt == "json":
            with open(path, "w") as fh:
                fh.write(self.to_json_text())
        else:
            raise ParameterError(f"unknown output format {fmt!r}")
        sidecar = path + ".meta.json"
        with open(sidecar, "w") as fh:
            fh.write(json.dumps(self.meta, sort_keys=True, indent=1) + "\n")
        return [path, sidecar]


def _check_subsets(metrics, engines):
    metrics = tuple(metrics)
    engines = tuple(engines)
    for m in metrics:
        if m not in _METRICS:
            raise ParameterError(f"unknown metric {m!r}; expected subset of {_METRICS}")
    for e in engines:
        if e not in _ENGINES:
            raise ParameterError(f"unknown engine {e!r}; expected subset of {_ENGINES}")
    if not metrics or not engines:
        raise ParameterError("metrics and engines must be non-empty")
    return metrics, engines


def _rain_db(scenario: Scenario) -> float:
    return rain_attenuation(scenario.rain) if scenario.rain is not None else 0.0


def _evaluate_point(
    scenario: Scenario,
    axis_db: float,
    rb: float,
    eta: float,
    eff_db: float,
    metrics,
    engines,
    mc: McConfig,
    quad: QuadratureConfig,
) -> dict:
    row: dict = {
        "scenario": scenario.name,
        "snr_axis_db": float(axis_db),
        "rb_bpcu": float(rb),
        "eta": float(eta),
        "eff_snr_db": float(eff_db),
    }
    flags: list[str] = []
    q = PerfQuery(avg_snr_db=eff_db, rate_bpcu=rb, nak=scenario.nak, sr=scenario.sr)

    if "analytic" in engines:
        try:
            if "op" in metrics or "tp" in metrics:
                op = outage_probability(q)
                if "op" in metrics:
                    row["op_analytic"] = op
                if "tp" in metrics:
                    row["tp_analytic_bpcu"] = rb * (1.0 - op)
            if "ec" in metrics:
                row["ec_ub_bpcu"] = ergodic_capacity_upper(q)
        except Exception as exc:  # keep the run alive, record the failure
            flags.append(f"analytic_error:{type(exc).__name__}")

    if "mc" in engines:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                if "op" in metrics or "tp" in metrics:
                    est = mc_outage(q, mc)
                    if "op" in metrics:
                        row["op_mc"] = est.value
                        row["op_mc_se"] = est.std_error
                    if "tp" in metrics:
                        row["tp_mc_bpcu"] = rb * (1.0 - est.value)
                        row["tp_mc_se_bpcu"] = rb * est.std_error
                    if 0.0 < est.value < RARE_EVENT_FLOOR:
                        flags.append("mc_rare_event")
                if "ec" in metrics:
                    est = mc_ergodic_capacity(q, mc)
                    row["ec_mc_bpcu"] = est.value
                    row["ec_mc_se_bpcu"] = est.std_error
        except Exception as exc:
            flags.append(f"mc_error:{type(exc).__name__}")

    if "oracle" in engines:
        try:
            if "op" in metrics:
                z = q.gamma_th / q.avg_snr_linear
                row["op_oracle"] = cdf_z_quadrature(scenario.nak, scenario.sr, z, quad)
            if "ec" in metrics:
                row["ec_oracle_bpcu"] = ec_quadrature(
                    scenario.nak, scenario.sr, q.avg_snr_linear, quad
                )
        except Exception as exc:
            flags.append(f"oracle_error:{type(exc).__name__}")

    op_a, op_o = row.get("op_analytic"), row.get("op_oracle")
    if op_a is not None and op_o is not None and abs(op_a - op_o) > ORACLE_OP_ABS_TOL:
        flags.append("oracle_mismatch")
    row["flags"] = ";".join(flags)
    return row


def _meta(scenario_list, metrics, engines, mc, quad, extra: dict) -> dict:
    meta = {
        "tool": "hapslink",
        "version": _version,
        "engines": list(engines),
        "metrics": list(metrics),
        "seed": mc.seed,
        "trials": mc.trials,
        "workers": mc.workers,
        "batch": mc.batch,
        "tolerances": {
            "oracle_op_abs": ORACLE_OP_ABS_TOL,
            "quad_rel": quad.rel_tol,
            "quad_abs": quad.abs_tol,
        },
        "scenarios": [s.to_dict() for s in scenario_list],
    }
    meta.update(extra)
    return meta


def run_sweep(
    scenario: Scenario,
    metrics=("op", "ec", "tp"),
    engines=("analytic", "mc", "oracle"),
    mc: McConfig = McConfig(),
    quad: QuadratureConfig = DEFAULT_QUAD,
    axis_includes_eta: bool = False,
) -> SweepResult:
    """Evaluate the scenario's (SNR axis) x (rates) grid."""
    metrics, engines = _check_subsets(metrics, engines)
    rain_db = _rain_db(scenario)
    eta = scenario.eh.eta
    rows = []
    for axis_db in scenario.snr_axis_db:
        eff_db = effective_snr_db(axis_db, eta, axis_includes_eta) - rain_db
        for rb in scenario.rates_bpcu:
            rows.append(
                _evaluate_point(scenario, axis_db, rb, eta, eff_db, metrics, engines, mc, quad)
            )
    meta = _meta([scenario], metrics, engines, mc, quad,
                 {"sweep_kind": "snr", "axis_includes_eta": axis_includes_eta, "rain_db": rain_db})
    return SweepResult(rows=rows, meta=meta)


def run_eta_sweep(
    scenario: Scenario,
    eta_axis,
    fixed_snr_db: float,
    metrics=("op",),
    engines=("analytic", "mc", "oracle"),
    mc: McConfig = McConfig(),
    quad: QuadratureConfig = DEFAULT_QUAD,
) -> SweepResult:
    """Evaluate an efficiency sweep at a fixed SNR-axis value."""
    metrics, engines = _check_subsets(metrics, engines)
    eta_axis = tuple(float(e) for e in eta_axis)
    if any(not (0.0 < e <= 1.0) for e in eta_axis):
        raise ParameterError("eta values must lie in (0, 1]")
    rain_db = _rain_db(scenario)
    rows = []
    for eta in eta_axis:
        eff_db = effective_snr_db(fixed_snr_db, eta) - rain_db
        for rb in scenario.rates_bpcu:
            rows.append(
                _evaluate_point(scenario, fixed_snr_db, rb, eta, eff_db, metrics, engines, mc, quad)
            )
    meta = _meta([scenario], metrics, engines, mc, quad,
                 {"sweep_kind": "eta", "fixed_snr_db": float(fixed_snr_db),
                  "eta_axis": list(eta_axis), "rain_db": rain_db})
    return SweepResult(rows=rows, meta=meta)
