"""Fading laws for the two hops: densities, derived constants, sampling.

The feeder hop power gain X follows a gamma law (squared Nakagami-m
envelope); the ground hop power gain Y follows the shadowed-Rician law with
multipath power ``2b`` and gamma-shadowed LOS power ``omega``.

Convention: the default feeder law is unit mean (scale = 1/m1).  The
shadowed-Rician law is *not* renormalised — E[Y] = 2b + omega, which is not 1
for the standard parameter sets — and the average SNR is treated as a nominal
sweep axis.  Rescaling Y would silently change every closed form, so it is
left to the caller.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import ParameterError
from .specfun import ln_gamma
from .streams import SubStream

__all__ = [
    "NakagamiPowerParams",
    "ShadowedRicianParams",
    "SrDerived",
    "nakagami_power_pdf",
    "sr_derived",
    "shadowed_rician_pdf",
    "sample_nakagami_power",
    "sample_shadowed_rician_power",
    "sample_nakagami_power_many",
    "sample_shadowed_rician_power_many",
]

# stream labels and uniform slot layout used by the samplers
NAK_STREAM_LABEL = "nak"
SR_STREAM_LABEL = "sr"
_SR_SLOT_LOS, _SR_SLOT_N1, _SR_SLOT_N2 = 0, 1, 2


def _check_int(name: str, value) -> int:
    if value != int(value) or int(value) < 1:
        raise ParameterError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class NakagamiPowerParams:
    """Gamma power-gain law of the feeder hop: shape m1, scale two_sigma_sq."""

    m1: int
    two_sigma_sq: float

    def __post_init__(self):
        object.__setattr__(self, "m1", _check_int("m1", self.m1))
        if self.two_sigma_sq <= 0:
            raise ParameterError(f"two_sigma_sq must be > 0, got {self.two_sigma_sq}")

    @classmethod
    def unit_mean(cls, m1: int) -> "NakagamiPowerParams":
        """Scale chosen so that E[X] = m1 * two_sigma_sq = 1."""
        return cls(m1=m1, two_sigma_sq=1.0 / int(m1))

    @property
    def mean_power(self) -> float:
        return self.m1 * self.two_sigma_sq


@dataclass(frozen=True)
class ShadowedRicianParams:
    """Ground-hop fading: multipath half-power b, severity m2, LOS power omega."""

    b: float
    m2: int
    omega: float

    def __post_init__(self):
        object.__setattr__(self, "m2", _check_int("m2", self.m2))
        if self.b <= 0:
            raise ParameterError(f"b must be > 0, got {self.b}")
        if self.omega < 0:
            raise ParameterError(f"omega must be >= 0, got {self.omega}")

    @property
    def mean_power(self) -> float:
        return 2.0 * self.b + self.omega


@dataclass(frozen=True)
class SrDerived:
    """Closed-form constants of the shadowed-Rician density."""

    alpha: float
    beta: float
    delta: float


def sr_derived(p: ShadowedRicianParams) -> SrDerived:
    """Derived (alpha, beta, delta) with the beta > delta guarantee checked."""
    two_b = 2.0 * p.b
    denom = two_b * p.m2 + p.omega
    alpha = (1.0 / two_b) * (two_b * p.m2 / denom) ** p.m2
    beta = 1.0 / two_b
    delta = p.omega / (two_b * denom)
    if not (beta > delta) or alpha <= 0.0:
        raise ParameterError(
            f"degenerate shadowed-Rician parameters: alpha={alpha}, beta={beta}, delta={delta}"
        )
    return SrDerived(alpha=alpha, beta=beta, delta=delta)


def nakagami_power_pdf(p: NakagamiPowerParams, x):
    """Density of the feeder power gain: x^(m1-1) e^(-x/s) / (Gamma(m1) s^m1)."""
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < 0):
        raise ParameterError("nakagami_power_pdf requires x >= 0")
    s = p.two_sigma_sq
    with np.errstate(divide="ignore"):
        logx = np.where(x > 0, np.log(np.where(x > 0, x, 1.0)), 0.0)
        logpdf = (p.m1 - 1) * logx - x / s - ln_gamma(p.m1) - p.m1 * math.log(s)
    out = np.exp(logpdf)
    if p.m1 > 1:
        out = np.where(x == 0, 0.0, out)
    return out if out.ndim else float(out)


def _sr_term_coeffs(p: ShadowedRicianParams) -> np.ndarray:
    """|(1-m2)_k| delta^k / (k!)^2 for k < m2 (all series terms are >= 0)."""
    d = sr_derived(p)
    ks = np.arange(p.m2)
    logc = (
        ln_gamma(p.m2)
        - special.gammaln(p.m2 - ks)
        - 2.0 * special.gammaln(ks + 1.0)
    )
    if d.delta > 0:
        logc = logc + ks * math.log(d.delta)
    else:
        logc = np.where(ks == 0, logc, -np.inf)
    return np.exp(logc)


def shadowed_rician_pdf(p: ShadowedRicianParams, y):
    """Density of the ground power gain, via the terminating expansion.

    alpha * exp(-(beta-delta) y) * sum_k |(1-m2)_k| (delta y)^k / (k!)^2 —
    identical to alpha exp(-beta y) 1F1(m2; 1; delta y).
    """
    y = np.asarray(y, dtype=np.float64)
    if np.any(y < 0):
        raise ParameterError("shadowed_rician_pdf requires y >= 0")
    d = sr_derived(p)
    coeffs = _sr_term_coeffs(p)
    # polynomial in y with nonnegative coefficients, Horner form
    poly = np.zeros_like(y) + coeffs[-1]
    for c in coeffs[-2::-1]:
        poly = poly * y + c
    out = d.alpha * np.exp(-(d.beta - d.delta) * y) * poly
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# Sampling.  Transforms are inverse-CDF based so that each trial consumes a
# fixed, known set of uniform slots from its substream.
# ---------------------------------------------------------------------------


def sample_nakagami_power_many(p: NakagamiPowerParams, stream: SubStream, count: int) -> np.ndarray:
    """Draws of X for the next ``count`` trial indices of ``stream``."""
    u = stream.take(count, 1)
    return special.gammaincinv(p.m1, u[:, 0]) * p.two_sigma_sq


def sample_shadowed_rician_power_many(
    p: ShadowedRicianParams, stream: SubStream, count: int
) -> np.ndarray:
    """Draws of Y = |A + S|^2 for the next ``count`` trial indices.

    A is the real LOS amplitude with A^2 gamma-distributed (shape m2, scale
    omega/m2); S is circularly-symmetric complex Gaussian with per-component
    variance b.
    """
    u = stream.take(count, 3)
    if p.omega > 0:
        los_amp = np.sqrt(special.gammaincinv(p.m2, u[:, _SR_SLOT_LOS]) * (p.omega / p.m2))
    else:
        los_amp = np.zeros(count)
    sb = math.sqrt(p.b)
    n1 = special.ndtri(u[:, _SR_SLOT_N1])
    n2 = special.ndtri(u[:, _SR_SLOT_N2])
    return (los_amp + sb * n1) ** 2 + (sb * n2) ** 2


def sample_nakagami_power(p: NakagamiPowerParams, stream: SubStream) -> float:
    """Single draw of X (advances the stream by one trial)."""
    return float(sample_nakagami_power_many(p, stream, 1)[0])


def sample_shadowed_rician_power(p: ShadowedRicianParams, stream: SubStream) -> float:
    """Single draw of Y (advances the stream by one trial)."""
    return float(sample_shadowed_rician_power_many(p, stream, 1)[0])
