"""Scenario configuration and the named preset registry.

A scenario bundles everything one sweep needs: geometry, antenna gains,
noise, the harvesting configuration, both fading laws, optional rain, per-hop
gaseous/miscellaneous losses, the SNR axis and the rate list.  Scenarios
serialise losslessly to plain dicts / YAML so that every output can echo its
full effective configuration.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Optional

import yaml

from .channel import NakagamiPowerParams, ShadowedRicianParams
from .errors import ParameterError
from .linkbudget import (
    AntennaGains,
    EhTimeSwitchConfig,
    Geometry,
    NoiseParams,
    RainParams,
)

__all__ = ["LossOverrides", "Scenario", "PresetSpec", "get_preset", "preset_names", "CHANNEL_PRESETS"]


@dataclass(frozen=True)
class LossOverrides:
    """Per-hop gaseous (l_a) and miscellaneous (l_o) losses in dB."""

    l_a_h1h2_db: float = 0.0216
    l_o_h1h2_db: float = 0.0
    l_a_h2g_db: float = 0.0108
    l_o_h2g_db: float = 5.0


@dataclass(frozen=True)
class Scenario:
    """Complete, serialisable description of one analysis configuration."""

    name: str
    geometry: Geometry = Geometry()
    gains: AntennaGains = AntennaGains()
    noise: NoiseParams = NoiseParams()
    eh: EhTimeSwitchConfig = EhTimeSwitchConfig()
    nak: NakagamiPowerParams = NakagamiPowerParams(1, 1.0)
    sr: ShadowedRicianParams = ShadowedRicianParams(0.063, 1, 8.94e-4)
    rain: Optional[RainParams] = None
    losses: LossOverrides = LossOverrides()
    snr_axis_db: tuple = tuple(float(v) for v in range(0, 45, 5))
    rates_bpcu: tuple = (1.0, 2.0, 3.0)

    def __post_init__(self):
        axis = tuple(float(v) for v in self.snr_axis_db)
        if any(b <= a for a, b in zip(axis, axis[1:])):
            raise ParameterError("snr_axis_db must be strictly increasing")
        object.__setattr__(self, "snr_axis_db", axis)
        object.__setattr__(self, "rates_bpcu", tuple(float(r) for r in self.rates_bpcu))

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["snr_axis_db"] = list(self.snr_axis_db)
        d["rates_bpcu"] = list(self.rates_bpcu)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        d = dict(d)
        for key, typ in (
            ("geometry", Geometry),
            ("gains", AntennaGains),
            ("noise", NoiseParams),
            ("eh", EhTimeSwitchConfig),
            ("nak", NakagamiPowerParams),
            ("sr", ShadowedRicianParams),
            ("losses", LossOverrides),
        ):
            if key in d and isinstance(d[key], dict):
                d[key] = typ(**d[key])
        if d.get("rain") is not None and isinstance(d["rain"], dict):
            d["rain"] = RainParams(**d["rain"])
        return cls(**d)

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False)

    @classmethod
    def from_yaml(cls, text: str) -> "Scenario":
        return cls.from_dict(yaml.safe_load(text))

    def replace(self, **changes) -> "Scenario":
        return dataclasses.replace(self, **changes)


# (severity m, multipath half-power b, LOS power omega); feeder side uses the
# same severity with a unit-mean scale
CHANNEL_PRESETS = {
    "fhs": (1, 0.063, 8.94e-4),   # frequent heavy shadowing
    "as": (10, 0.126, 0.835),     # average shadowing
    "ils": (19, 0.158, 1.29),     # infrequent light shadowing
    "fig5": (2, 0.279, 0.251),    # efficiency-sweep channel
}


def _channel_scenario(name: str, key: str, **changes) -> Scenario:
    m, b, om = CHANNEL_PRESETS[key]
    base = Scenario(
        name=name,
        nak=NakagamiPowerParams.unit_mean(m),
        sr=ShadowedRicianParams(b=b, m2=m, omega=om),
    )
    return base.replace(**changes) if changes else base


@dataclass(frozen=True)
class PresetSpec:
    """A registry entry: one or more scenarios plus how to run them."""

    kind: str  # "sweep" | "eta" | "budget"
    scenarios: tuple
    metrics: tuple = ("op", "ec", "tp")
    eta_axis: tuple = ()
    fixed_snr_db: float = 20.0
    notes: str = ""


# Representative Ka-band rain-law inputs for the rain preset.  These are user
# inputs, not library truth: supply coefficients from ITU-R P.838 (and an
# effective path length per ITU-R P.530) for an authoritative analysis.
_RAIN_K = 0.07
_RAIN_ALPHA = 1.08
_RAIN_PATH_KM = 4.0


def _rain_scenario(rate: float) -> Scenario:
    return _channel_scenario(f"fig7_r{rate:g}", "as").replace(
        rain=RainParams(
            rain_k=_RAIN_K,
            rain_alpha=_RAIN_ALPHA,
            rate_r001_mm_h=rate,
            effective_path_km=_RAIN_PATH_KM,
        ),
        rates_bpcu=(1.0,),
    )


def _case_scenario(name: str, zenith_deg: float, p_watts: float, eta: float) -> Scenario:
    # harvesting-budget cases: platform altitudes 20/21 km, feeder-hop losses
    # are free-space + gaseous only (no miscellaneous, no rain)
    return _channel_scenario(name, "as").replace(
        geometry=Geometry(alt_h1_km=20.0, alt_h2_km=21.0, zenith_h1h2_deg=zenith_deg),
        eh=EhTimeSwitchConfig(eta=eta, rho=0.5, p_h1_watts=p_watts),
        losses=LossOverrides(l_o_h1h2_db=0.0, l_o_h2g_db=5.0),
    )


def _build_registry() -> dict[str, PresetSpec]:
    reg: dict[str, PresetSpec] = {}
    shadow_trio = tuple(_channel_scenario(k, k) for k in ("fhs", "as", "ils"))

    reg["default"] = PresetSpec(
        kind="sweep",
        scenarios=(_channel_scenario("default", "as"),),
        notes="simulation-table baseline with the average-shadowing channel",
    )
    for key, label in (("fhs", "frequent heavy shadowing"),
                       ("as", "average shadowing"),
                       ("ils", "infrequent light shadowing")):
        reg[key] = PresetSpec(
            kind="sweep",
            scenarios=(_channel_scenario(key, key),),
            notes=label,
        )
    reg["fig2"] = PresetSpec(
        kind="sweep",
        scenarios=(_channel_scenario("fig2", "fhs"),),
        metrics=("op",),
        notes="outage vs SNR under heavy shadowing, rates 1/2/3",
    )
    reg["fig3"] = PresetSpec(
        kind="sweep",
        scenarios=tuple(
            s.replace(name=f"fig3_{s.name}", eh=EhTimeSwitchConfig(eta=0.2), rates_bpcu=(3.0,))
            for s in shadow_trio
        ),
        metrics=("ec",),
        notes="ergodic capacity vs SNR, three shadowing levels, efficiency 0.2",
    )
    reg["fig4"] = PresetSpec(
        kind="sweep",
        scenarios=tuple(s.replace(name=f"fig4_{s.name}", rates_bpcu=(1.0,)) for s in shadow_trio),
        metrics=("op",),
        notes="outage vs SNR across shadowing levels (rate read from the figure: 1 bpcu)",
    )
    reg["fig5"] = PresetSpec(
        kind="eta",
        scenarios=(_channel_scenario("fig5", "fig5"),),
        metrics=("op",),
        eta_axis=tuple(round(0.1 * i, 1) for i in range(1, 11)),
        fixed_snr_db=20.0,
        notes="outage vs conversion efficiency at a 20 dB reference axis",
    )
    reg["fig6"] = PresetSpec(
        kind="sweep",
        scenarios=(_channel_scenario("fig6", "as"),),
        metrics=("tp",),
        notes="throughput vs SNR; assumes average shadowing and eta = 1 (ideal harvesting)",
    )
    reg["fig7"] = PresetSpec(
        kind="sweep",
        scenarios=tuple(_rain_scenario(r) for r in (2.0, 10.0, 50.0)),
        metrics=("op",),
        notes="outage vs SNR under light/moderate/heavy rain; rain-law inputs are user-supplied",
    )
    reg["case1"] = PresetSpec(
        kind="budget",
        scenarios=(_case_scenario("case1", zenith_deg=70.0, p_watts=200.0, eta=1.0),),
        notes="wide-separation harvesting: 70 deg zenith, 200 W, ideal efficiency",
    )
    reg["case2"] = PresetSpec(
        kind="budget",
        scenarios=(_case_scenario("case2", zenith_deg=10.0, p_watts=20.0, eta=1.0),),
        notes="near-vertical harvesting at one-tenth feeder power",
    )
    reg["case3"] = PresetSpec(
        kind="budget",
        scenarios=(_case_scenario("case3", zenith_deg=10.0, p_watts=200.0, eta=0.1),),
        notes="near-vertical harvesting at one-tenth conversion efficiency",
    )
    return reg


_REGISTRY = _build_registry()


def preset_names() -> list[tuple[str, str]]:
    return [(name, spec.notes) for name, spec in _REGISTRY.items()]


def get_preset(name: str) -> PresetSpec:
    try:
        return _REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(_REGISTRY))
        raise ParameterError(f"unknown preset {name!r}; known presets: {known}") from None
