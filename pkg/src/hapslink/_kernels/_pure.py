"""Pure NumPy/Python implementations of the numeric hot kernels.

This module is the import-time fallback for the compiled extension
(``hapslink._kernels._ext``).  The two backends are interchangeable:

* ``uniform_block`` is integer-only arithmetic and produces *bit-identical*
  doubles in both backends (the Monte-Carlo engine relies on this).
* The Bessel/hypergeometric kernels use the same algorithms and agree to a
  few ulp (they may differ in the last bit because NumPy's transcendental
  functions are not guaranteed identical to libm).
"""
from __future__ import annotations

import math

import numpy as np

# ---------------------------------------------------------------------------
# Counter-based uniform generator (Philox-4x32-10 style block cipher)
# ---------------------------------------------------------------------------
# Each (key, counter) pair maps to one double in (0, 1).  The counter encodes
# (trial index, slot); the key encodes (seed, stream label).  Draw i is a pure
# function of its counter, so results cannot depend on batching or worker
# count.

_M0 = 0xD2511F53
_M1 = 0xCD9E8D57
_W0 = 0x9E3779B9
_W1 = 0xBB67AE85
_MASK32 = 0xFFFFFFFF
_INV_2_52 = 1.0 / 4503599627370496.0  # 2^-52


def uniform_block(key0: int, key1: int, c3: int, start: int, n: int, slot: int) -> np.ndarray:
    """Uniforms in (0,1) for trial indices ``start .. start+n-1`` at ``slot``.

    52 random bits plus a half-ulp offset, so 0.0 and 1.0 are unreachable
    (inverse-CDF transforms stay finite).
    """
    idx = np.arange(start, start + n, dtype=np.uint64)
    c0 = idx & np.uint64(_MASK32)
    c1 = idx >> np.uint64(32)
    c2 = np.full(n, slot & _MASK32, dtype=np.uint64)
    c3v = np.full(n, c3 & _MASK32, dtype=np.uint64)
    k0 = np.uint64(key0 & _MASK32)
    k1 = np.uint64(key1 & _MASK32)
    m0 = np.uint64(_M0)
    m1 = np.uint64(_M1)
    mask = np.uint64(_MASK32)
    sh32 = np.uint64(32)
    for _ in range(10):
        p0 = m0 * c0
        p1 = m1 * c2
        c0, c1, c2, c3v = (
            (p1 >> sh32) ^ c1 ^ k0,
            p1 & mask,
            (p0 >> sh32) ^ c3v ^ k1,
            p0 & mask,
        )
        k0 = (k0 + np.uint64(_W0)) & mask
        k1 = (k1 + np.uint64(_W1)) & mask
    hi = (c0 >> np.uint64(6)).astype(np.float64)  # 26 bits
    lo = (c1 >> np.uint64(6)).astype(np.float64)  # 26 bits
    return (hi * 67108864.0 + lo + 0.5) * _INV_2_52


# ---------------------------------------------------------------------------
# Modified Bessel function of the second kind, integer order, scaled: e^x K_n(x)
# ---------------------------------------------------------------------------
# x <= 2 : ascending series for K0/K1 (exact power series, ~1e-15 rel).
# x >  2 : Chebyshev fits of e^x sqrt(x) K_nu(x) on u = 8/x - 2 (coefficients
#          generated by tools/fit_besselk_chebyshev.py; ~2e-16 rel).
# n >= 2 : upward recurrence, which is forward-stable for K.

_EULER = 0.57721566490153286061

_K0E_CHEB = (
    -2.2932197170560117732e-20,
    6.6246105345361470341e-20,
    -1.939095605318355466e-19,
    5.7551092028827293794e-19,
    -1.7331712005821000278e-18,
    5.300433771177335771e-18,
    -1.6475805939842632815e-17,
    5.2103917776435541125e-17,
    -1.6782311257549006383e-16,
    5.5120559994043333649e-16,
    -1.8485933779209071694e-15,
    6.3400764762766459661e-15,
    -2.2275133267462963604e-14,
    8.0328907750683743694e-14,
    -2.9800969231481783548e-13,
    1.1403405882073442347e-12,
    -4.5145978833745191751e-12,
    1.855949114954926555e-11,
    -7.9574892444773970377e-11,
    3.5773972814003284472e-10,
    -1.6975345093890615156e-09,
    8.5740340174142260858e-09,
    -4.6604898976879476656e-08,
    2.7668136394450150761e-07,
    -1.8317555227191194848e-06,
    1.3949813718876499364e-05,
    -1.2849549581627802638e-04,
    1.5698838857300533749e-03,
    -3.1448101311964500543e-02,
    2.4403030820659554547e00,
)

_K1E_CHEB = (
    2.4645751417354729461e-20,
    -7.1327129083411020671e-20,
    2.0919125269831136552e-19,
    -6.2216452873526091852e-19,
    1.8778651901623267401e-18,
    -5.7567444820733024503e-18,
    1.7940510478863572914e-17,
    -5.6894628491936483743e-17,
    1.8380935752430454256e-16,
    -6.0570472706430178228e-16,
    2.0387031662398608799e-15,
    -7.0198370892147688513e-15,
    2.4771544242195986813e-14,
    -8.9767051820101460692e-14,
    3.3484196660522431201e-13,
    -1.2891739609498229352e-12,
    5.1396396734823435404e-12,
    -2.1299678384277910216e-11,
    9.2183151876053141258e-11,
    -4.1903547593419255842e-10,
    2.0150497551970346161e-09,
    -1.0345762465678097027e-08,
    5.7410841254500492923e-08,
    -3.5019606030878125421e-07,
    2.4064849478372171171e-06,
    -1.93619797416608296e-05,
    1.9521551847135163111e-04,
    -2.8578168596227793868e-03,
    1.0392373657681723844e-01,
    2.7206261904844426694e00,
)


def _chbevl(u: float, coeffs) -> float:
    b0 = coeffs[0]
    b1 = 0.0
    b2 = 0.0
    for c in coeffs[1:]:
        b2 = b1
        b1 = b0
        b0 = u * b1 - b2 + c
    return 0.5 * (b0 - b2)


def _k01_small(x: float) -> tuple[float, float]:
    """Unscaled (K0, K1) via the ascending series, valid 0 < x <= 2."""
    t = 0.25 * x * x
    lg = math.log(0.5 * x)
    i0 = 1.0
    s0 = 0.0
    i1sum = 1.0
    s1 = 1.0 - 2.0 * _EULER  # j = 0 term of the K1 correction series
    t0 = 1.0
    t1 = 1.0
    hj = 0.0
    for j in range(1, 60):
        t0 *= t / (j * j)
        hj += 1.0 / j
        i0 += t0
        s0 += t0 * hj
        t1 *= t / (j * (j + 1.0))
        i1sum += t1
        s1 += t1 * (2.0 * hj + 1.0 / (j + 1.0) - 2.0 * _EULER)
        if t0 < 1e-19 * i0:
            break
    k0 = -(lg + _EULER) * i0 + s0
    k1 = 1.0 / x + lg * (0.5 * x * i1sum) - 0.25 * x * s1
    return k0, k1


def _k01e(x: float) -> tuple[float, float]:
    """Scaled (e^x K0, e^x K1)."""
    if x <= 2.0:
        k0, k1 = _k01_small(x)
        e = math.exp(x)
        return e * k0, e * k1
    u = 8.0 / x - 2.0
    rs = 1.0 / math.sqrt(x)
    return _chbevl(u, _K0E_CHEB) * rs, _chbevl(u, _K1E_CHEB) * rs


def besselk_scaled(n: int, x: float) -> float:
    """e^x K_n(x) for integer n >= 0, x > 0."""
    k0e, k1e = _k01e(x)
    if n == 0:
        return k0e
    km, kc = k0e, k1e
    for j in range(1, n):
        km, kc = kc, km + (2.0 * j / x) * kc
    return kc


def besselk_scaled_vec(n: int, x: np.ndarray) -> np.ndarray:
    """Vectorised e^x K_n(x) over an array of x > 0."""
    x = np.asarray(x, dtype=np.float64)
    out0 = np.empty_like(x)
    out1 = np.empty_like(x)
    small = x <= 2.0
    if np.any(small):
        xs = x[small]
        t = 0.25 * xs * xs
        lg = np.log(0.5 * xs)
        i0 = np.ones_like(xs)
        s0 = np.zeros_like(xs)
        i1sum = np.ones_like(xs)
        s1 = np.full_like(xs, 1.0 - 2.0 * _EULER)
        t0 = np.ones_like(xs)
        t1 = np.ones_like(xs)
        hj = 0.0
        for j in range(1, 60):
            t0 = t0 * t / (j * j)
            hj += 1.0 / j
            i0 += t0
            s0 += t0 * hj
            t1 = t1 * t / (j * (j + 1.0))
            i1sum += t1
            s1 += t1 * (2.0 * hj + 1.0 / (j + 1.0) - 2.0 * _EULER)
        e = np.exp(xs)
        out0[small] = e * (-(lg + _EULER) * i0 + s0)
        out1[small] = e * (1.0 / xs + lg * (0.5 * xs * i1sum) - 0.25 * xs * s1)
    big = ~small
    if np.any(big):
        xb = x[big]
        u = 8.0 / xb - 2.0
        rs = 1.0 / np.sqrt(xb)
        for coeffs, out in ((_K0E_CHEB, out0), (_K1E_CHEB, out1)):
            b0 = np.full_like(xb, coeffs[0])
            b1 = np.zeros_like(xb)
            b2 = np.zeros_like(xb)
            for c in coeffs[1:]:
                b2 = b1
                b1 = b0
                b0 = u * b1 - b2 + c
            out[big] = 0.5 * (b0 - b2) * rs
    if n == 0:
        return out0
    km, kc = out0, out1
    for j in range(1, n):
        km, kc = kc, km + (2.0 * j / x) * kc
    return kc


def hyp1f1_finite(m2: int, z: float) -> float:
    """1F1(m2; 1; z) for integer m2 >= 1 via its terminating expansion.

    exp(z) * sum_{k=0}^{m2-1} (1-m2)_k (-z)^k / (k!)^2 ; every term with
    k >= m2 vanishes because the Pochhammer factor hits zero.
    """
    total = 1.0
    term = 1.0
    for k in range(1, m2):
        # term ratio: (1-m2)_k(-z)^k/(k!)^2 grows by (m2-k) z / k^2 per step
        term *= (m2 - k) * z / (k * k)
        total += term
    return math.exp(z) * total
