"""Special-function kernel used by the closed-form expressions.

Everything here is real-valued and scalar-oriented; only the cases needed by
the outage/capacity formulas are covered (integer Bessel orders, terminating
hypergeometric series).  Heavy lifting is delegated to the selected kernel
backend (compiled extension or pure NumPy fallback).
"""
from __future__ import annotations

import math

import numpy as np

from . import _kernels
from .errors import ParameterError

__all__ = [
    "ln_gamma",
    "pochhammer",
    "bessel_k_int",
    "bessel_k_int_scaled",
    "ln_bessel_k_int",
    "hyp1f1_finite",
]

# exp(-x) underflows to zero past this point; K_n(x) is reported as 0.0 there
_EXP_UNDERFLOW = 745.0


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if x <= 0.0:
        raise ParameterError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def pochhammer(a: float, k: int) -> float:
    """Rising factorial a(a+1)...(a+k-1), with (a)_0 = 1.

    Exact for integer arguments: (1-m)_k is exactly 0 once k >= m.
    """
    if k < 0 or k != int(k):
        raise ParameterError(f"pochhammer requires integer k >= 0, got {k}")
    result = 1.0
    for j in range(int(k)):
        result *= a + j
    return result


def bessel_k_int(n: int, x: float) -> float:
    """Modified Bessel function of the second kind K_n(x), integer order.

    Negative orders map to |n| (K is symmetric in its order).  Underflows
    gracefully to 0.0 for large x instead of raising.
    """
    n = _check_order(n)
    if x <= 0.0:
        raise ParameterError(f"bessel_k_int requires x > 0, got {x}")
    if x > _EXP_UNDERFLOW:
        return 0.0
    return _kernels.besselk_scaled(n, x) * math.exp(-x)


def bessel_k_int_scaled(n: int, x: float) -> float:
    """Exponentially scaled e^x K_n(x); avoids underflow at large x."""
    n = _check_order(n)
    if x <= 0.0:
        raise ParameterError(f"bessel_k_int_scaled requires x > 0, got {x}")
    return _kernels.besselk_scaled(n, x)


def ln_bessel_k_int(n: int, x: float) -> float:
    """log K_n(x), stable at both tails (used by log-space summations)."""
    n = _check_order(n)
    if x <= 0.0:
        raise ParameterError(f"ln_bessel_k_int requires x > 0, got {x}")
    return math.log(_kernels.besselk_scaled(n, x)) - x


def bessel_k_int_vec(n: int, x: np.ndarray) -> np.ndarray:
    """Vectorised K_n over an array of x > 0 (test/benchmark helper)."""
    n = _check_order(n)
    x = np.asarray(x, dtype=np.float64)
    if np.any(x <= 0.0):
        raise ParameterError("bessel_k_int_vec requires x > 0")
    scaled = np.asarray(_kernels.besselk_scaled_vec(n, x))
    return scaled * np.exp(-np.minimum(x, _EXP_UNDERFLOW + 10.0))


def hyp1f1_finite(m2: int, z: float) -> float:
    """Confluent hypergeometric 1F1(m2; 1; z) for integer m2 >= 1.

    Evaluated through the terminating expansion
    exp(z) * sum_{k<m2} (1-m2)_k (-z)^k / (k!)^2; the nominal upper limit m2
    is dropped because that term carries a vanishing Pochhammer factor.
    """
    m2 = _check_severity(m2)
    return _kernels.hyp1f1_finite(m2, float(z))


def _check_order(n) -> int:
    if n != int(n):
        raise ParameterError(f"Bessel order must be an integer, got {n}")
    return abs(int(n))


def _check_severity(m) -> int:
    if m != int(m) or m < 1:
        raise ParameterError(
            f"severity parameter must be a positive integer, got {m} "
            "(non-integer severities are not supported by the finite expansions)"
        )
    return int(m)
