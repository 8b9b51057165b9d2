# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, exp, log, fabs, copysign, INFINITY

cnp.import_array()

cdef double _BIG = 1e150
cdef double _LOG_BIG = log(1e150)
cdef double _SQRT2 = sqrt(2.0)
cdef double _LOG2 = log(2.0)


cpdef double hermite_fn_paper(long n, double x):
    cdef double log_scale = -0.5 * x * x
    cdef double a = 1.0, b, t
    cdef long m
    if n == 0:
        return exp(log_scale)
    b = _SQRT2 * x
    for m in range(1, n):
        t = x * sqrt(2.0 / (m + 1)) * b - sqrt(<double>m / (m + 1)) * a
        a = b
        b = t
        if fabs(b) > _BIG:
            a /= _BIG
            b /= _BIG
            log_scale += _LOG_BIG
    if b == 0.0:
        return 0.0
    return copysign(exp(log(fabs(b)) + log_scale), b)


def hermite_fn_table(long nmax, xs):
    cdef cnp.ndarray[cnp.double_t, ndim=1] xv = np.ascontiguousarray(xs, dtype=np.float64)
    cdef Py_ssize_t npts = xv.shape[0], i
    cdef cnp.ndarray[cnp.double_t, ndim=2] out = np.empty((nmax + 1, npts))
    cdef double x, a, b, t, log_scale, c1, c2
    cdef long m
    for i in range(npts):
        x = xv[i]
        log_scale = -0.5 * x * x
        a = 1.0
        out[0, i] = exp(log_scale)
        if nmax == 0:
            continue
        b = _SQRT2 * x
        out[1, i] = b * exp(log_scale)
        for m in range(1, nmax):
            c1 = sqrt(2.0 / (m + 1))
            c2 = sqrt(<double>m / (m + 1))
            t = x * c1 * b - c2 * a
            a = b
            b = t
            if fabs(b) > _BIG:
                a /= _BIG
                b /= _BIG
                log_scale += _LOG_BIG
            out[m + 1, i] = b * exp(log_scale)
    return out


def hermite_fn_pair(long n, xs):
    cdef cnp.ndarray[cnp.double_t, ndim=1] xv = np.ascontiguousarray(xs, dtype=np.float64)
    cdef Py_ssize_t npts = xv.shape[0], i
    cdef cnp.ndarray[cnp.double_t, ndim=1] lo = np.empty(npts)
    cdef cnp.ndarray[cnp.double_t, ndim=1] hi = np.empty(npts)
    cdef double x, a, b, t, log_scale, f
    cdef long m
    for i in range(npts):
        x = xv[i]
        log_scale = -0.5 * x * x
        a = 1.0
        b = _SQRT2 * x
        for m in range(1, n):
            t = x * sqrt(2.0 / (m + 1)) * b - sqrt(<double>m / (m + 1)) * a
            a = b
            b = t
            if fabs(b) > _BIG:
                a /= _BIG
                b /= _BIG
                log_scale += _LOG_BIG
        f = exp(log_scale)
        lo[i] = a * f
        hi[i] = b * f
    return lo, hi


def w2_log_abs_grid(log_fact, long jmax):
    cdef cnp.ndarray[cnp.double_t, ndim=1] lf = np.ascontiguousarray(log_fact, dtype=np.float64)
    cdef cnp.ndarray[cnp.double_t, ndim=2] out = np.empty((jmax + 1, jmax + 1))
    cdef long j, k, n
    for j in range(jmax + 1):
        for k in range(jmax + 1):
            n = j + k
            if n % 2:
                out[j, k] = -INFINITY
            else:
                out[j, k] = lf[n] - lf[n // 2] - n * _LOG2 - 0.5 * (lf[j] + lf[k])
    return out
