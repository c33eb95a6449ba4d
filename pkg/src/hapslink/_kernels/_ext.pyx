# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the hot kernels in ``_pure``.

``uniform_block`` must stay bit-identical to the pure version (integer
arithmetic only); the special-function kernels use the same algorithms and
match to a few ulp.
"""
import numpy as np

from libc.math cimport cosh, exp, log, sqrt
from libc.stdint cimport uint32_t, uint64_t

cdef double _EULER = 0.57721566490153286061
cdef double _INV_2_52 = 1.0 / 4503599627370496.0

cdef uint64_t _M0 = 0xD2511F53u
cdef uint64_t _M1 = 0xCD9E8D57u
cdef uint32_t _W0 = 0x9E3779B9u
cdef uint32_t _W1 = 0xBB67AE85u


def uniform_block(key0, key1, c3, start, n, slot):
    """Uniforms in (0,1) for trial indices start..start+n-1 at the given slot."""
    cdef Py_ssize_t nn = n
    cdef uint64_t base = start
    cdef uint32_t kk0 = <uint32_t> (key0 & 0xFFFFFFFFu)
    cdef uint32_t kk1 = <uint32_t> (key1 & 0xFFFFFFFFu)
    cdef uint32_t cc2 = <uint32_t> (slot & 0xFFFFFFFFu)
    cdef uint32_t cc3 = <uint32_t> (c3 & 0xFFFFFFFFu)
    out_arr = np.empty(nn, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef int r
    cdef uint64_t idx, p0, p1
    cdef uint32_t c0, c1, c2, c3w, k0, k1
    for i in range(nn):
        idx = base + <uint64_t> i
        c0 = <uint32_t> (idx & 0xFFFFFFFFu)
        c1 = <uint32_t> (idx >> 32)
        c2 = cc2
        c3w = cc3
        k0 = kk0
        k1 = kk1
        for r in range(10):
            p0 = _M0 * <uint64_t> c0
            p1 = _M1 * <uint64_t> c2
            c0, c1, c2, c3w = (
                (<uint32_t> (p1 >> 32)) ^ c1 ^ k0,
                <uint32_t> (p1 & 0xFFFFFFFFu),
                (<uint32_t> (p0 >> 32)) ^ c3w ^ k1,
                <uint32_t> (p0 & 0xFFFFFFFFu),
            )
            k0 = k0 + _W0
            k1 = k1 + _W1
        out[i] = ((<double> (c0 >> 6)) * 67108864.0 + (<double> (c1 >> 6)) + 0.5) * _INV_2_52
    return out_arr


cdef double[30] _K0E_CHEB
_K0E_CHEB[:] = [
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
]

cdef double[30] _K1E_CHEB
_K1E_CHEB[:] = [
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
]


cdef double _chbevl(double u, double* coeffs, int n) nogil:
    cdef double b0 = coeffs[0]
    cdef double b1 = 0.0
    cdef double b2 = 0.0
    cdef int i
    for i in range(1, n):
        b2 = b1
        b1 = b0
        b0 = u * b1 - b2 + coeffs[i]
    return 0.5 * (b0 - b2)


cdef void _k01e(double x, double* k0e, double* k1e) nogil:
    cdef double t, lg, i0, s0, i1sum, s1, t0, t1, hj, e, u, rs
    cdef int j
    if x <= 2.0:
        t = 0.25 * x * x
        lg = log(0.5 * x)
        i0 = 1.0
        s0 = 0.0
        i1sum = 1.0
        s1 = 1.0 - 2.0 * _EULER
        t0 = 1.0
        t1 = 1.0
        hj = 0.0
        for j in range(1, 60):
            t0 *= t / (j * <double> j)
            hj += 1.0 / j
            i0 += t0
            s0 += t0 * hj
            t1 *= t / (j * (j + 1.0))
            i1sum += t1
            s1 += t1 * (2.0 * hj + 1.0 / (j + 1.0) - 2.0 * _EULER)
            if t0 < 1e-19 * i0:
                break
        e = exp(x)
        k0e[0] = e * (-(lg + _EULER) * i0 + s0)
        k1e[0] = e * (1.0 / x + lg * (0.5 * x * i1sum) - 0.25 * x * s1)
    else:
        u = 8.0 / x - 2.0
        rs = 1.0 / sqrt(x)
        k0e[0] = _chbevl(u, &_K0E_CHEB[0], 30) * rs
        k1e[0] = _chbevl(u, &_K1E_CHEB[0], 30) * rs


cdef double _besselk_scaled(int n, double x) nogil:
    cdef double k0e, k1e, km, kc, knext
    cdef int j
    _k01e(x, &k0e, &k1e)
    if n == 0:
        return k0e
    km = k0e
    kc = k1e
    for j in range(1, n):
        knext = km + (2.0 * j / x) * kc
        km = kc
        kc = knext
    return kc


def besselk_scaled(n, x):
    """e^x K_n(x) for integer n >= 0, x > 0."""
    return _besselk_scaled(<int> n, <double> x)


def besselk_scaled_vec(n, x):
    """Vectorised e^x K_n(x) over an array of x > 0."""
    x_arr = np.ascontiguousarray(x, dtype=np.float64)
    out_arr = np.empty_like(x_arr)
    cdef double[::1] xs = x_arr
    cdef double[::1] out = out_arr
    cdef int nn = n
    cdef Py_ssize_t i
    for i in range(xs.shape[0]):
        out[i] = _besselk_scaled(nn, xs[i])
    return out_arr


def hyp1f1_finite(m2, z):
    """1F1(m2; 1; z) for integer m2 >= 1 via its terminating expansion."""
    cdef int m = m2
    cdef double zz = z
    cdef double total = 1.0
    cdef double term = 1.0
    cdef int k
    for k in range(1, m):
        term *= (m - k) * zz / (k * <double> k)
        total += term
    return exp(zz) * total
