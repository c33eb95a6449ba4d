"""Quadrature ground truth for the product-channel statistics.

These routines integrate the *pre-simplification* forms directly (the double
integral over the two fading densities) and are kept deliberately independent
of the closed-form path: densities are built from SciPy's ``hyp1f1`` and
``gammaln``, the inner integral uses either nested adaptive quadrature or the
lower-incomplete-gamma reduction, and no code is shared with ``analytic`` or
``specfun``.  Disagreements between closed form and oracle are arbitrated by
Monte Carlo, never by editing the oracle.

The second half-line of the product CDF (the integral over negative feeder
gains) is identically zero because both power gains have nonnegative support,
so it is omitted throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate, special

from .channel import NakagamiPowerParams, ShadowedRicianParams, sr_derived
from .errors import ConvergenceError, ParameterError

__all__ = [
    "QuadratureConfig",
    "cdf_z_quadrature",
    "mean_z_quadrature",
    "sr_cdf_quadrature",
    "ec_quadrature",
    "sr_cdf_reference",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class QuadratureConfig:
    """Adaptive-quadrature tolerances and outer-integral truncation."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-11
    max_subdivisions: int = 200
    outer_upper_cut: Optional[float] = None  # derived from the gamma tail if None

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ParameterError("quadrature tolerances must be > 0")

    def outer_cut(self, nak: NakagamiPowerParams) -> float:
        """Truncation point keeping the neglected gamma tail mass < abs_tol/10."""
        if self.outer_upper_cut is not None:
            return self.outer_upper_cut
        return float(special.gammainccinv(nak.m1, self.abs_tol / 10.0)) * nak.two_sigma_sq


DEFAULT_QUAD = QuadratureConfig()


def _gamma_pdf(x: float, m1: int, scale: float) -> float:
    if x <= 0.0:
        return 0.0 if m1 > 1 else math.exp(-math.lgamma(m1)) / scale
    return math.exp(
        (m1 - 1) * math.log(x) - x / scale - math.lgamma(m1) - m1 * math.log(scale)
    )


def _sr_pdf_reference(y: float, sr: ShadowedRicianParams) -> float:
    """Ground-hop density from its definition, via SciPy's 1F1."""
    d = sr_derived(sr)
    return d.alpha * math.exp(-d.beta * y) * float(special.hyp1f1(sr.m2, 1.0, d.delta * y))


def _sr_tail_cut(sr: ShadowedRicianParams, tail_mass: float) -> float:
    """y beyond which the ground-gain survival is below ``tail_mass``.

    Every mixture component of the density is a gamma law with rate
    (beta - delta) and shape <= m2, so the slowest component bounds the tail.
    """
    d = sr_derived(sr)
    return float(special.gammainccinv(sr.m2, tail_mass)) / (d.beta - d.delta)


def _sr_mixture_weights(sr: ShadowedRicianParams) -> np.ndarray:
    """Weights of the gamma-mixture form of the ground-gain CDF (sum to 1)."""
    d = sr_derived(sr)
    ks = np.arange(sr.m2)
    logw = (
        math.log(d.alpha)
        + special.gammaln(sr.m2)
        - special.gammaln(sr.m2 - ks)
        - special.gammaln(ks + 1.0)
        - (ks + 1.0) * math.log(d.beta - d.delta)
    )
    if d.delta > 0:
        logw = logw + ks * math.log(d.delta)
    else:
        logw = np.where(ks == 0, logw, -np.inf)
    return np.exp(logw)


def sr_cdf_reference(sr: ShadowedRicianParams, y) -> np.ndarray:
    """Ground-gain CDF via the lower-incomplete-gamma reduction (vectorised).

    This is the "reduction" inner path of the product-CDF integral; its
    agreement with the nested-quadrature path to 1e-9 is asserted by the
    validation suite, which is what licenses its use in bulk evaluations
    such as the sampler KS test.
    """
    y = np.asarray(y, dtype=np.float64)
    d = sr_derived(sr)
    w = _sr_mixture_weights(sr)
    out = np.zeros_like(y)
    arg = (d.beta - d.delta) * y
    for k in range(sr.m2):
        out += w[k] * special.gammainc(k + 1.0, arg)
    return out


def _quad_checked(fn, a: float, b: float, cfg: QuadratureConfig, what: str) -> float:
    val, err = integrate.quad(
        fn, a, b, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=cfg.max_subdivisions
    )
    if err > 100.0 * max(cfg.abs_tol, cfg.rel_tol * abs(val)) + 1e-300:
        raise ConvergenceError(f"{what} did not converge", achieved_error=err)
    return val


def sr_cdf_quadrature(sr: ShadowedRicianParams, y: float, cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """Ground-gain CDF by adaptive quadrature of the density."""
    if y < 0:
        raise ParameterError("sr_cdf_quadrature requires y >= 0")
    if y == 0.0:
        return 0.0
    hi = min(y, _sr_tail_cut(sr, 1e-16))
    return _quad_checked(lambda t: _sr_pdf_reference(t, sr), 0.0, hi, cfg, "ground-gain CDF quadrature")


def cdf_z_quadrature(
    nak: NakagamiPowerParams,
    sr: ShadowedRicianParams,
    z: float,
    cfg: QuadratureConfig = DEFAULT_QUAD,
    inner: str = "gammainc",
) -> float:
    """CDF of the product gain Z = X*Y at z, by adaptive quadrature.

    F_Z(z) = integral over x of f_X(x) * F_Y(z/x).  The inner CDF F_Y is
    evaluated either through the incomplete-gamma reduction
    (``inner="gammainc"``, default) or by nested adaptive quadrature of the
    density (``inner="quad"``); the two must agree to 1e-9.
    """
    if z < 0:
        raise ParameterError("cdf_z_quadrature requires z >= 0")
    if z == 0.0:
        return 0.0
    if inner == "gammainc":
        inner_cdf = lambda yy: float(sr_cdf_reference(sr, yy))
    elif inner == "quad":
        inner_cfg = QuadratureConfig(
            rel_tol=max(cfg.rel_tol, 1e-11), abs_tol=max(cfg.abs_tol, 1e-12),
            max_subdivisions=cfg.max_subdivisions,
        )
        y_cut = _sr_tail_cut(sr, 1e-16)

        def inner_cdf(yy: float) -> float:
            if yy <= 0.0:
                return 0.0
            if yy >= y_cut:
                return 1.0
            return _quad_checked(
                lambda t: _sr_pdf_reference(t, sr), 0.0, yy, inner_cfg, "inner CDF quadrature"
            )

    else:
        raise ParameterError(f"unknown inner path {inner!r}")

    x_hi = cfg.outer_cut(nak)
    m1, scale = nak.m1, nak.two_sigma_sq

    def integrand(x: float) -> float:
        return _gamma_pdf(x, m1, scale) * inner_cdf(z / x)

    return _quad_checked(integrand, 0.0, x_hi, cfg, "product-CDF quadrature")


def mean_z_quadrature(
    nak: NakagamiPowerParams,
    sr: ShadowedRicianParams,
    cfg: QuadratureConfig = DEFAULT_QUAD,
) -> float:
    """E[X*Y] by 2-D adaptive quadrature, cross-checked against the product
    of the 1-D means (independence makes the two identical)."""
    x_hi = cfg.outer_cut(nak)
    y_hi = _sr_tail_cut(sr, cfg.abs_tol / 10.0)
    m1, scale = nak.m1, nak.two_sigma_sq

    mean_x = _quad_checked(lambda x: x * _gamma_pdf(x, m1, scale), 0.0, x_hi, cfg, "feeder mean")
    mean_y = _quad_checked(lambda y: y * _sr_pdf_reference(y, sr), 0.0, y_hi, cfg, "ground mean")
    product = mean_x * mean_y

    val2d, err2d = integrate.dblquad(
        lambda y, x: x * y * _gamma_pdf(x, m1, scale) * _sr_pdf_reference(y, sr),
        0.0,
        x_hi,
        0.0,
        y_hi,
        epsabs=max(cfg.abs_tol, 1e-12),
        epsrel=max(cfg.rel_tol, 1e-9),
    )
    if abs(val2d - product) > 1e-8 * max(1.0, abs(product)) + 10.0 * err2d:
        raise ConvergenceError(
            f"2-D mean {val2d!r} disagrees with product of 1-D means {product!r}",
            achieved_error=abs(val2d - product),
        )
    return val2d


def ec_quadrature(
    nak: NakagamiPowerParams,
    sr: ShadowedRicianParams,
    gbar_lin: float,
    cfg: QuadratureConfig = DEFAULT_QUAD,
) -> float:
    """Exact ergodic capacity E[log2(1 + gbar*X*Y)] by nested quadrature."""
    if gbar_lin < 0:
        raise ParameterError("ec_quadrature requires gbar_lin >= 0")
    if gbar_lin == 0.0:
        return 0.0
    x_hi = cfg.outer_cut(nak)
    y_hi = _sr_tail_cut(sr, 1e-14)
    m1, scale = nak.m1, nak.two_sigma_sq
    inner_cfg = QuadratureConfig(rel_tol=1e-10, abs_tol=1e-13, max_subdivisions=cfg.max_subdivisions)

    def inner(c: float) -> float:
        return _quad_checked(
            lambda y: math.log1p(c * y) * _sr_pdf_reference(y, sr),
            0.0,
            y_hi,
            inner_cfg,
            "capacity inner quadrature",
        )

    outer = _quad_checked(
        lambda x: _gamma_pdf(x, m1, scale) * inner(gbar_lin * x),
        0.0,
        x_hi,
        QuadratureConfig(rel_tol=max(cfg.rel_tol, 1e-9), abs_tol=max(cfg.abs_tol, 1e-11),
                         max_subdivisions=cfg.max_subdivisions),
        "capacity outer quadrature",
    )
    return outer / _LN2
