"""Pure-Python/NumPy implementations of the hot loops.

These mirror ``_ckernels.pyx`` function for function and are used when the
compiled extension is unavailable or ``HERMPROD_PURE_PYTHON`` is set.
"""
import math

import numpy as np

# Rescale the recurrence once an iterate exceeds this magnitude.
_BIG = 1e150
_LOG_BIG = math.log(_BIG)


def hermite_fn_paper(n, x):
    """h_n(x) = H_n(x) e^{-x^2/2} / sqrt(2^n n!) by the normalized recurrence."""
    log_scale = -0.5 * x * x
    a = 1.0
    if n == 0:
        return math.exp(log_scale)
    b = math.sqrt(2.0) * x
    for m in range(1, n):
        a, b = b, x * math.sqrt(2.0 / (m + 1)) * b - math.sqrt(m / (m + 1)) * a
        if abs(b) > _BIG:
            a /= _BIG
            b /= _BIG
            log_scale += _LOG_BIG
    if b == 0.0:
        return 0.0
    return math.copysign(math.exp(math.log(abs(b)) + log_scale), b)


def hermite_fn_table(nmax, xs):
    """Array ``T[n, i] = h_n(xs[i])`` (PaperWeight) for ``0 <= n <= nmax``."""
    xs = np.asarray(xs, dtype=float)
    out = np.empty((nmax + 1, xs.size))
    log_scale = -0.5 * xs * xs
    a = np.ones_like(xs)
    out[0] = np.exp(log_scale)
    if nmax == 0:
        return out
    b = math.sqrt(2.0) * xs
    out[1] = b * np.exp(log_scale)
    for m in range(1, nmax):
        a, b = b, xs * math.sqrt(2.0 / (m + 1)) * b - math.sqrt(m / (m + 1)) * a
        big = np.abs(b) > _BIG
        if big.any():
            a = np.where(big, a / _BIG, a)
            b = np.where(big, b / _BIG, b)
            log_scale = np.where(big, log_scale + _LOG_BIG, log_scale)
        with np.errstate(under="ignore"):
            out[m + 1] = b * np.exp(log_scale)
    return out


def hermite_fn_pair(n, xs):
    """``(h_{n-1}(xs), h_n(xs))`` in the PaperWeight normalization, ``n >= 1``."""
    xs = np.asarray(xs, dtype=float)
    log_scale = -0.5 * xs * xs
    a = np.ones_like(xs)
    b = math.sqrt(2.0) * xs
    for m in range(1, n):
        a, b = b, xs * math.sqrt(2.0 / (m + 1)) * b - math.sqrt(m / (m + 1)) * a
        big = np.abs(b) > _BIG
        if big.any():
            a = np.where(big, a / _BIG, a)
            b = np.where(big, b / _BIG, b)
            log_scale = np.where(big, log_scale + _LOG_BIG, log_scale)
    with np.errstate(under="ignore"):
        f = np.exp(log_scale)
        return a * f, b * f


def w2_log_abs_grid(log_fact, jmax):
    """``G[j, k] = log|W_{j00k}| - log sqrt(pi/2)`` for even ``j+k``, ``-inf`` otherwise."""
    lf = np.asarray(log_fact, dtype=float)
    j = np.arange(jmax + 1)
    jj, kk = np.meshgrid(j, j, indexing="ij")
    n = jj + kk
    even = (n % 2) == 0
    half = n // 2
    g = lf[n] - lf[half] - n * math.log(2.0) - 0.5 * (lf[jj] + lf[kk])
    return np.where(even, g, -np.inf)
