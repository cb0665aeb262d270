# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled contour-integrand kernels; same interface as ``_kernel_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, floor, hypot, isfinite, signbit, M_PI, NAN
from scipy.special.cython_special cimport loggamma as _scipy_loggamma

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex clog(double complex)
    double complex conj(double complex)

from ._kernel_py import NODES, KRONROD, GAUSS

cnp.import_array()

BACKEND = "cython"

cdef double complex INV_2PI_I = 1.0 / (2j * M_PI)


# Stirling coefficients B_2k / (2k (2k-1)), highest order first
cdef double[8] STIRLING = [
    -2.955065359477124183e-2, 6.4102564102564102564e-3, -1.9175269175269175269e-3,
    8.4175084175084175084e-4, -5.952380952380952381e-4, 7.9365079365079365079e-4,
    -2.7777777777777777778e-3, 8.3333333333333333333e-2,
]
cdef double HALF_LOG_2PI = 0.91893853320467274178
cdef double STIRLING_MIN = 7.0
cdef int MAX_SHIFT = 2000


cdef inline double complex _stirling(double complex z) noexcept nogil:
    cdef double complex rz = 1.0 / z
    cdef double complex rzz = rz * rz
    cdef double complex acc = STIRLING[0]
    cdef int k
    for k in range(1, 8):
        acc = acc * rzz + STIRLING[k]
    return (z - 0.5) * clog(z) - z + HALF_LOG_2PI + rz * acc


cdef inline double complex _loggamma_upper(double complex z) noexcept nogil:
    # Im z >= 0; shift right until Stirling applies, counting the times the
    # running product's argument crosses pi so the branch matches the sum of logs
    cdef double complex prod, zz
    cdef int flips = 0, sb = 0, nsb, n = 0
    if z.real > STIRLING_MIN or z.imag > STIRLING_MIN:
        return _stirling(z)
    if z.real < -MAX_SHIFT:
        return _scipy_loggamma(z)
    prod = z
    zz = z + 1.0
    while zz.real <= STIRLING_MIN:
        prod = prod * zz
        nsb = signbit(prod.imag)
        if nsb != 0 and sb == 0:
            flips += 1
        sb = nsb
        zz = zz + 1.0
    return _stirling(zz) - clog(prod) - flips * 2.0 * M_PI * 1j


cdef inline double complex _loggamma(double complex z) noexcept nogil:
    """Principal-branch complex log-gamma, matching scipy.special.loggamma."""
    if z.real <= 0 and z.imag == 0 and z.real == floor(z.real):
        return NAN + NAN * 1j
    if z.imag < 0:
        return conj(_loggamma_upper(conj(z)))
    return _loggamma_upper(z)


def loggamma(z):
    """Vectorised :func:`_loggamma`, exposed for testing."""
    arr = np.asarray(z, dtype=complex)
    flat = np.ascontiguousarray(arr.ravel())
    out = np.empty_like(flat)
    cdef double complex[::1] zv = flat
    cdef double complex[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(zv.shape[0]):
            ov[i] = _loggamma(zv[i])
    return out.reshape(arr.shape)


cdef inline double complex _log_chi(double complex[::1] u, double[::1] v,
                                    double[::1] w, double complex s) noexcept nogil:
    cdef Py_ssize_t k
    cdef double complex acc = 0
    for k in range(u.shape[0]):
        acc = acc + w[k] * _loggamma(u[k] + v[k] * s)
    return acc


cdef inline double complex _g(double complex[::1] u, double[::1] v, double[::1] w,
                              double complex logz, double c, double curv,
                              double log_scale, double t) noexcept nogil:
    cdef double complex s = c + curv * t * t + 1j * t
    cdef double complex lg = _log_chi(u, v, w, s) - s * logz - log_scale
    cdef double complex val
    if not isfinite(lg.real) or not isfinite(lg.imag):
        return 0
    if lg.real < -745.0:
        return 0
    val = cexp(lg) * (2.0 * curv * t + 1j) * INV_2PI_I
    if not isfinite(val.real) or not isfinite(val.imag):
        return 0
    return val


def log_chi(u, v, w, s):
    cdef double complex[::1] uu = np.ascontiguousarray(u, dtype=complex)
    cdef double[::1] vv = np.ascontiguousarray(v, dtype=float)
    cdef double[::1] ww = np.ascontiguousarray(w, dtype=float)
    arr = np.asarray(s, dtype=complex)
    flat = np.ascontiguousarray(arr.ravel())
    out = np.empty_like(flat)
    cdef double complex[::1] sv = flat
    cdef double complex[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(sv.shape[0]):
            ov[i] = _log_chi(uu, vv, ww, sv[i])
    return out.reshape(arr.shape)


def integrand(u, v, w, logz, double c, double curv, double log_scale, t):
    cdef double complex[::1] uu = np.ascontiguousarray(u, dtype=complex)
    cdef double[::1] vv = np.ascontiguousarray(v, dtype=float)
    cdef double[::1] ww = np.ascontiguousarray(w, dtype=float)
    cdef double complex lz = logz
    arr = np.asarray(t, dtype=float)
    flat = np.ascontiguousarray(arr.ravel())
    out = np.empty(flat.shape[0], dtype=complex)
    cdef double[::1] tv = flat
    cdef double complex[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(tv.shape[0]):
            ov[i] = _g(uu, vv, ww, lz, c, curv, log_scale, tv[i])
    return out.reshape(arr.shape)


def panels_gk15(u, v, w, logz, double c, double curv, double log_scale, a, b):
    cdef double complex[::1] uu = np.ascontiguousarray(u, dtype=complex)
    cdef double[::1] vv = np.ascontiguousarray(v, dtype=float)
    cdef double[::1] ww = np.ascontiguousarray(w, dtype=float)
    cdef double complex lz = logz
    cdef double[::1] av = np.ascontiguousarray(a, dtype=float)
    cdef double[::1] bv = np.ascontiguousarray(b, dtype=float)
    cdef double[::1] nodes = NODES
    cdef double[::1] wk = KRONROD
    cdef double[::1] wgs = GAUSS
    cdef Py_ssize_t npan = av.shape[0]
    kron_arr = np.empty(npan, dtype=complex)
    err_arr = np.empty(npan, dtype=float)
    abs_arr = np.empty(npan, dtype=float)
    cdef double complex[::1] kron = kron_arr
    cdef double[::1] err = err_arr
    cdef double[::1] absint = abs_arr
    cdef Py_ssize_t i, j
    cdef double mid, half, t
    cdef double complex g, ks, gs
    cdef double asum
    with nogil:
        for i in range(npan):
            mid = 0.5 * (av[i] + bv[i])
            half = 0.5 * (bv[i] - av[i])
            ks = 0
            gs = 0
            asum = 0
            for j in range(15):
                t = mid + half * nodes[j]
                g = _g(uu, vv, ww, lz, c, curv, log_scale, t)
                ks = ks + wk[j] * g
                gs = gs + wgs[j] * g
                asum = asum + wk[j] * hypot(g.real, g.imag)
            kron[i] = ks * half
            err[i] = abs((ks - gs) * half)
            absint[i] = asum * half
    return kron_arr, err_arr, abs_arr
