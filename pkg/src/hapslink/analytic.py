"""Closed-form link performance: outage, capacity upper bound, throughput.

The outage expression is an alternating-looking double series whose terms are
in fact all positive once the Pochhammer sign is folded into (-delta)^k, so
it is evaluated as the difference of two log-sum-exp accumulations.  The
first accumulation is exactly the total ground-gain probability mass and must
equal 1; the second carries the Bessel-K factors.  Prefactors reach extreme
magnitudes for severity 19, hence the log-space arithmetic.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .channel import NakagamiPowerParams, ShadowedRicianParams, sr_derived
from .errors import NumericalInstabilityError, ParameterError
from .specfun import ln_bessel_k_int, ln_gamma

__all__ = [
    "PerfQuery",
    "PerfPoint",
    "gamma_threshold",
    "outage_probability",
    "mean_gamma0",
    "ergodic_capacity_upper",
    "throughput",
    "perf_point",
    "effective_snr_db",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class PerfQuery:
    """One evaluation point: average SNR (dB), target rate, channel laws."""

    avg_snr_db: float
    rate_bpcu: float
    nak: NakagamiPowerParams
    sr: ShadowedRicianParams

    def __post_init__(self):
        if self.rate_bpcu <= 0:
            raise ParameterError(f"rate_bpcu must be > 0, got {self.rate_bpcu}")

    @property
    def avg_snr_linear(self) -> float:
        return 10.0 ** (self.avg_snr_db / 10.0)

    @property
    def gamma_th(self) -> float:
        return gamma_threshold(self.rate_bpcu)


@dataclass(frozen=True)
class PerfPoint:
    """Metrics at one grid point."""

    outage: float
    ec_upper_bpcu: float
    throughput_bpcu: float


def gamma_threshold(rate_bpcu: float) -> float:
    """SNR threshold 2^(2 Rb) - 1 for target rate Rb (time-split factor 2)."""
    if rate_bpcu <= 0:
        raise ParameterError(f"rate_bpcu must be > 0, got {rate_bpcu}")
    return 2.0 ** (2.0 * rate_bpcu) - 1.0


def _logsumexp(terms: list[float]) -> float:
    m = max(terms)
    if m == -math.inf:
        return -math.inf
    return m + math.log(math.fsum(math.exp(t - m) for t in terms))


def _sr_log_series_coeffs(sr: ShadowedRicianParams) -> tuple[list[float], float, float, float]:
    """log(|(1-m2)_k| delta^k / k!) for k < m2, plus (log alpha, beta-delta, delta)."""
    d = sr_derived(sr)
    lga = math.log(d.alpha)
    logs = []
    for k in range(sr.m2):
        if d.delta == 0.0 and k > 0:
            logs.append(-math.inf)
            continue
        logs.append(
            ln_gamma(sr.m2)
            - ln_gamma(sr.m2 - k)
            + (k * math.log(d.delta) if k else 0.0)
            - ln_gamma(k + 1.0)
        )
    return logs, lga, d.beta - d.delta, d.delta


def sr_total_mass(sr: ShadowedRicianParams) -> float:
    """Series form of the total ground-gain probability mass (must be 1)."""
    logs, lga, bd, _ = _sr_log_series_coeffs(sr)
    lbd = math.log(bd)
    return math.fsum(
        math.exp(lga + lk - (k + 1.0) * lbd) for k, lk in enumerate(logs) if lk > -math.inf
    )


def outage_probability(q: PerfQuery) -> float:
    """Outage probability of the cascaded link (closed form).

    Difference of two positive sums: the ground-gain total mass (== 1) and a
    double series over Bessel-K terms.  Raw values may stray outside [0, 1]
    by a few ulp; anything beyond 1e-6 indicates catastrophic cancellation
    and raises.
    """
    m1 = q.nak.m1
    s = q.nak.two_sigma_sq
    z = q.gamma_th / q.avg_snr_linear
    logs, lga, bd, _ = _sr_log_series_coeffs(q.sr)
    lbd = math.log(bd)
    ls = math.log(s)

    mass_terms = [lga + lk - (k + 1.0) * lbd for k, lk in enumerate(logs) if lk > -math.inf]
    s1 = math.exp(_logsumexp(mass_terms))

    arg = 2.0 * math.sqrt(z * bd / s)
    lz = math.log(z)
    prefix = math.log(2.0) + lga - ln_gamma(m1) - m1 * ls
    bessel_terms = []
    for k, lk in enumerate(logs):
        if lk == -math.inf:
            continue
        for i in range(k + 1):
            lt = (
                prefix
                + lk
                - ln_gamma(i + 1.0)
                + 0.5 * (m1 + i) * lz
                + 0.5 * (m1 + i - 2.0 * k - 2.0) * lbd
                + 0.5 * (m1 - i) * ls
                + ln_bessel_k_int(m1 - i, arg)
            )
            bessel_terms.append(lt)
    s2 = math.exp(_logsumexp(bessel_terms))

    raw = s1 - s2
    if raw < -1e-6 or raw > 1.0 + 1e-6:
        raise NumericalInstabilityError(
            f"outage series left its certified range: raw value {raw!r}"
        )
    if raw < -1e-9 or raw > 1.0 + 1e-9:
        warnings.warn(f"outage series clamped from marginal raw value {raw!r}", RuntimeWarning)
    return min(1.0, max(0.0, raw))


def mean_gamma0(q: PerfQuery) -> float:
    """Mean instantaneous SNR E[gamma0] = gbar * E[X] * E[Y], in series form.

    gbar * alpha * mean_x / (beta-delta)^2 * sum_k |(1-m2)_k| (k+1)/k! *
    (delta/(beta-delta))^k — algebraically equal to gbar * E[X] * (2b+omega).
    """
    d = sr_derived(q.sr)
    bd = d.beta - d.delta
    ratio = d.delta / bd
    total = 0.0
    term = 1.0  # |(1-m2)_k| ratio^k / k! at k=0
    for k in range(q.sr.m2):
        total += term * (k + 1.0)
        term *= (q.sr.m2 - 1.0 - k) * ratio / (k + 1.0)
    omega_x = q.nak.mean_power
    return q.avg_snr_linear * d.alpha * omega_x / (bd * bd) * total


def ergodic_capacity_upper(q: PerfQuery) -> float:
    """Jensen upper bound log2(1 + E[gamma0]) in bits per channel use."""
    return math.log1p(mean_gamma0(q)) / _LN2


def throughput(q: PerfQuery) -> float:
    """Successful data rate Rb * (1 - outage) in bits per channel use."""
    return q.rate_bpcu * (1.0 - outage_probability(q))


def perf_point(q: PerfQuery) -> PerfPoint:
    """All three closed-form metrics at one grid point."""
    op = outage_probability(q)
    return PerfPoint(
        outage=op,
        ec_upper_bpcu=ergodic_capacity_upper(q),
        throughput_bpcu=q.rate_bpcu * (1.0 - op),
    )


def effective_snr_db(axis_snr_db: float, eta: float, axis_includes_eta: bool = False) -> float:
    """Map a plotted SNR-axis value to the SNR fed into the formulas.

    The axis is a reference at full conversion efficiency; the effective SNR
    is axis + 10 log10(eta) because the end-to-end SNR scales linearly with
    the conversion efficiency.  Set ``axis_includes_eta`` if the axis value
    already absorbed the efficiency.
    """
    if not (0.0 < eta <= 1.0):
        raise ParameterError(f"eta must lie in (0, 1], got {eta}")
    if axis_includes_eta:
        return axis_snr_db
    return axis_snr_db + 10.0 * math.log10(eta)
