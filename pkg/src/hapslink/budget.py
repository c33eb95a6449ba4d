"""Case-based power budget: harvested power, platform demand, ground margin.

The feeder-hop harvest composition is free-space plus gaseous loss (plus any
explicitly configured miscellaneous loss, zero in the bundled cases); rain
never applies to the stratospheric hop.  The ground-hop received level is
reported against a -80 dBm sensitivity line as an informational margin, not
as a pass/fail gate.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linkbudget import (
    LossBreakdown,
    PowerBudget,
    free_space_loss_ground,
    free_space_loss_interhaps,
    harvested_power,
    rain_attenuation,
    required_power,
    total_path_loss,
)
from .presets import Scenario

__all__ = ["GROUND_SENSITIVITY_DBM", "FREQ_GHZ", "BudgetReport", "run_budget"]

GROUND_SENSITIVITY_DBM = -80.0
FREQ_GHZ = 17.7  # operating carrier for every bundled scenario


@dataclass(frozen=True)
class BudgetReport:
    """Everything the budget evaluation derived, in display-ready units."""

    scenario: str
    d_h1h2_km: float
    d_h2g_km: float
    loss_h1h2: LossBreakdown
    loss_h2g: LossBreakdown
    harvested_dbm: float
    received_ground_dbm: float
    margin_db: float
    required_power_w: float

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "d_h1h2_km": self.d_h1h2_km,
            "d_h2g_km": self.d_h2g_km,
            "loss_h1h2_db": {
                "l_f": self.loss_h1h2.l_f_db,
                "l_r": self.loss_h1h2.l_r_db,
                "l_a": self.loss_h1h2.l_a_db,
                "l_o": self.loss_h1h2.l_o_db,
                "total": self.loss_h1h2.total_db,
            },
            "loss_h2g_db": {
                "l_f": self.loss_h2g.l_f_db,
                "l_r": self.loss_h2g.l_r_db,
                "l_a": self.loss_h2g.l_a_db,
                "l_o": self.loss_h2g.l_o_db,
                "total": self.loss_h2g.total_db,
            },
            "harvested_dbm": self.harvested_dbm,
            "received_ground_dbm": self.received_ground_dbm,
            "sensitivity_dbm": GROUND_SENSITIVITY_DBM,
            "margin_db": self.margin_db,
            "required_power_w": self.required_power_w,
        }

    def render(self) -> str:
        l1, l2 = self.loss_h1h2, self.loss_h2g
        return "\n".join(
            [
                f"budget report: {self.scenario}",
                f"  feeder hop   : {self.d_h1h2_km:.4f} km, loss {l1.total_db:.4f} dB"
                f" (free-space {l1.l_f_db:.4f}, gaseous {l1.l_a_db:.4f}, misc {l1.l_o_db:.4f})",
                f"  ground hop   : {self.d_h2g_km:.4f} km, loss {l2.total_db:.4f} dB"
                f" (free-space {l2.l_f_db:.4f}, rain {l2.l_r_db:.4f},"
                f" gaseous {l2.l_a_db:.4f}, misc {l2.l_o_db:.4f})",
                f"  harvested    : {self.harvested_dbm:.2f} dBm at the relay",
                f"  ground level : {self.received_ground_dbm:.2f} dBm received"
                f" ({self.margin_db:+.2f} dB vs {GROUND_SENSITIVITY_DBM:.0f} dBm sensitivity)",
                f"  platform need: {self.required_power_w:.1f} W"
                " (propulsion + payload + communications)",
            ]
        )


def run_budget(scenario: Scenario, demand: PowerBudget = PowerBudget()) -> BudgetReport:
    """Evaluate the deterministic budget of one scenario."""
    d12 = scenario.geometry.d_h1h2_km()
    d2g = scenario.geometry.d_h2g_km()
    loss12 = total_path_loss(
        free_space_loss_interhaps(d12, FREQ_GHZ),
        l_a_db=scenario.losses.l_a_h1h2_db,
        l_o_db=scenario.losses.l_o_h1h2_db,
    )
    rain_db = rain_attenuation(scenario.rain) if scenario.rain is not None else 0.0
    loss2g = total_path_loss(
        free_space_loss_ground(d2g, FREQ_GHZ),
        l_r_db=rain_db,
        l_a_db=scenario.losses.l_a_h2g_db,
        l_o_db=scenario.losses.l_o_h2g_db,
    )
    harvested = harvested_power(scenario.eh, scenario.gains, loss12)
    received = harvested + scenario.gains.gt_h2_dbi + scenario.gains.gr_g_dbi - loss2g.total_db
    return BudgetReport(
        scenario=scenario.name,
        d_h1h2_km=d12,
        d_h2g_km=d2g,
        loss_h1h2=loss12,
        loss_h2g=loss2g,
        harvested_dbm=harvested,
        received_ground_dbm=received,
        margin_db=received - GROUND_SENSITIVITY_DBM,
        required_power_w=required_power(demand),
    )
