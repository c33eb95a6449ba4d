"""Deterministic RF budget: geometry, path loss, rain, noise, harvested power.

All dB bookkeeping lives here.  Distances are derived from altitudes and
zenith angles; explicit distance overrides exist only because some published
parameter tables quote distances that contradict their own geometry, and we
refuse to pick silently between the two.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import ParameterError

__all__ = [
    "SPEED_OF_LIGHT",
    "Geometry",
    "RainParams",
    "LossBreakdown",
    "NoiseParams",
    "EhTimeSwitchConfig",
    "AntennaGains",
    "PowerBudget",
    "slant_distance",
    "free_space_loss_interhaps",
    "free_space_loss_ground",
    "rain_attenuation",
    "total_path_loss",
    "noise_psd_db",
    "harvested_power",
    "required_power",
    "avg_snr_db",
]

# matches the 92.45 dB constant of the f[GHz]/d[km] free-space form to <0.01 dB
SPEED_OF_LIGHT = 2.998e8  # m/s


@dataclass(frozen=True)
class Geometry:
    """Platform altitudes (km) and zenith angles (degrees) of both hops."""

    alt_h1_km: float = 21.0
    alt_h2_km: float = 20.0
    alt_g_km: float = 0.0
    zenith_h1h2_deg: float = 75.0
    zenith_h2g_deg: float = 0.0
    # optional literal overrides for tables that contradict their own geometry
    d_h1h2_km_override: Optional[float] = None
    d_h2g_km_override: Optional[float] = None

    def __post_init__(self):
        for name in ("alt_h1_km", "alt_h2_km", "alt_g_km"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be >= 0")
        for name in ("zenith_h1h2_deg", "zenith_h2g_deg"):
            z = getattr(self, name)
            if not (0.0 <= z < 90.0):
                raise ParameterError(f"{name} must lie in [0, 90) degrees, got {z}")
        if self.alt_h1_km == self.alt_h2_km:
            raise ParameterError("the two platforms cannot share an altitude")

    def d_h1h2_km(self) -> float:
        if self.d_h1h2_km_override is not None:
            return self.d_h1h2_km_override
        return slant_distance(self.alt_h2_km - self.alt_h1_km, self.zenith_h1h2_deg)

    def d_h2g_km(self) -> float:
        if self.d_h2g_km_override is not None:
            return self.d_h2g_km_override
        return slant_distance(self.alt_h2_km - self.alt_g_km, self.zenith_h2g_deg)


@dataclass(frozen=True)
class RainParams:
    """Specific-attenuation power law and effective path length.

    ``rain_k`` and ``rain_alpha`` are the frequency-dependent coefficients of
    gamma_R = k * R^alpha and ``effective_path_km`` the rain-affected path
    length; all three are user inputs (see ITU-R P.838 / P.530 for values at
    a given frequency and polarisation — none are hard-coded here).
    """

    rain_k: float
    rain_alpha: float
    rate_r001_mm_h: float
    effective_path_km: float

    def __post_init__(self):
        for name in ("rain_k", "rain_alpha", "rate_r001_mm_h", "effective_path_km"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be >= 0")


@dataclass(frozen=True)
class LossBreakdown:
    """Per-hop dB losses: free-space, rain, gaseous, miscellaneous."""

    l_f_db: float
    l_r_db: float = 0.0
    l_a_db: float = 0.0
    l_o_db: float = 0.0

    def __post_init__(self):
        for name in ("l_f_db", "l_r_db", "l_a_db", "l_o_db"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be >= 0")

    @property
    def total_db(self) -> float:
        return self.l_f_db + self.l_r_db + self.l_a_db + self.l_o_db

    @property
    def linear_gain(self) -> float:
        """Per-link linear gain 10^(-total/10)."""
        return 10.0 ** (-self.total_db / 10.0)


@dataclass(frozen=True)
class NoiseParams:
    """Noise PSD pieces in dB: Boltzmann constant, noise temperature, bandwidth."""

    k_db: float = -228.6  # dBW/K/Hz
    t_n_dbk: float = 22.3805
    bandwidth_dbhz: float = 76.02


@dataclass(frozen=True)
class EhTimeSwitchConfig:
    """Time-switching energy harvesting: efficiency, slot split, feeder power."""

    eta: float = 1.0
    rho: float = 0.5  # harvesting fraction T_EH / (T_EH + T_TX)
    p_h1_watts: float = 200.0

    def __post_init__(self):
        if not (0.0 < self.eta <= 1.0):
            raise ParameterError(f"eta must lie in (0, 1], got {self.eta}")
        if not (0.0 < self.rho < 1.0):
            raise ParameterError(f"rho must lie in (0, 1), got {self.rho}")
        if self.p_h1_watts <= 0:
            raise ParameterError(f"p_h1_watts must be > 0, got {self.p_h1_watts}")


@dataclass(frozen=True)
class AntennaGains:
    """Antenna gains in dBi for both hops."""

    gt_h1_dbi: float = 50.0
    gr_h2_dbi: float = 50.0
    gt_h2_dbi: float = 52.0
    gr_g_dbi: float = 60.0

    def __post_init__(self):
        for name in ("gt_h1_dbi", "gr_h2_dbi", "gt_h2_dbi", "gr_g_dbi"):
            g = getattr(self, name)
            if not (0.0 <= g <= 80.0):
                raise ParameterError(f"{name} out of sane range [0, 80] dBi: {g}")


@dataclass(frozen=True)
class PowerBudget:
    """Platform power demands in watts."""

    p_propulsion_w: float = 100.0
    p_payload_w: float = 40.0
    p_comm_w: float = 0.0

    def __post_init__(self):
        for name in ("p_propulsion_w", "p_payload_w", "p_comm_w"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be >= 0")


def slant_distance(delta_alt_km: float, zenith_deg: float) -> float:
    """|altitude difference| / cos(zenith); diverges as zenith -> 90 deg."""
    if not (0.0 <= zenith_deg < 90.0):
        raise ParameterError(f"zenith angle must lie in [0, 90) degrees, got {zenith_deg}")
    return abs(delta_alt_km) / math.cos(math.radians(zenith_deg))


def free_space_loss_interhaps(d_km: float, freq_ghz: float) -> float:
    """Free-space loss 20 log10(4 pi d / lambda) in dB (platform-to-platform)."""
    if d_km <= 0 or freq_ghz <= 0:
        raise ParameterError("distance and frequency must be > 0")
    wavelength_m = SPEED_OF_LIGHT / (freq_ghz * 1e9)
    return 20.0 * math.log10(4.0 * math.pi * d_km * 1e3 / wavelength_m)


def free_space_loss_ground(d_km: float, freq_ghz: float) -> float:
    """Free-space loss 92.45 + 20 log10(f[GHz]) + 20 log10(d[km]) in dB."""
    if d_km <= 0 or freq_ghz <= 0:
        raise ParameterError("distance and frequency must be > 0")
    return 92.45 + 20.0 * math.log10(freq_ghz) + 20.0 * math.log10(d_km)


def rain_attenuation(p: RainParams) -> float:
    """L_R = k * R^alpha * L_E in dB."""
    if p.rate_r001_mm_h == 0.0:
        return 0.0
    gamma_r = p.rain_k * p.rate_r001_mm_h**p.rain_alpha
    return gamma_r * p.effective_path_km


def total_path_loss(l_f_db: float, l_r_db: float = 0.0, l_a_db: float = 0.0, l_o_db: float = 0.0) -> LossBreakdown:
    """Assemble the per-hop loss breakdown (total and linear gain derived)."""
    return LossBreakdown(l_f_db=l_f_db, l_r_db=l_r_db, l_a_db=l_a_db, l_o_db=l_o_db)


def noise_psd_db(n: NoiseParams) -> float:
    """Noise power N0 in dB: k_dB + T_N + B."""
    return n.k_db + n.t_n_dbk + n.bandwidth_dbhz


def harvested_power(cfg: EhTimeSwitchConfig, gains: AntennaGains, loss_h1h2: LossBreakdown) -> float:
    """Harvested power at the relay in dBm, at nominal feeder fading gain 1.

    10 log10(eta * P * 1000) + G_T + G_R - L_total + 10 log10(rho/(1-rho)).
    """
    return (
        10.0 * math.log10(cfg.eta * cfg.p_h1_watts * 1e3)
        + gains.gt_h1_dbi
        + gains.gr_h2_dbi
        - loss_h1h2.total_db
        + 10.0 * math.log10(cfg.rho / (1.0 - cfg.rho))
    )


def required_power(b: PowerBudget) -> float:
    """Total platform power requirement in watts."""
    return b.p_propulsion_w + b.p_payload_w + b.p_comm_w


def avg_snr_db(
    cfg: EhTimeSwitchConfig,
    gains: AntennaGains,
    loss_h1h2: LossBreakdown,
    loss_h2g: LossBreakdown,
    n: NoiseParams,
) -> float:
    """Average end-to-end SNR in dB for unit-mean fading gains.

    10 log10(eta rho/(1-rho)) + P[dBW] - N0 + sum(gains) - sum(losses).
    """
    return (
        10.0 * math.log10(cfg.eta * cfg.rho / (1.0 - cfg.rho))
        + 10.0 * math.log10(cfg.p_h1_watts)
        - noise_psd_db(n)
        + gains.gt_h1_dbi
        + gains.gr_h2_dbi
        + gains.gt_h2_dbi
        + gains.gr_g_dbi
        - loss_h1h2.total_db
        - loss_h2g.total_db
    )
