"""Floating-point Hermite polynomials and Hermite functions.

Two normalizations of the Hermite functions are offered:

``Convention.PAPER``
    ``h_n(x) = H_n(x) exp(-x**2/2) / sqrt(2**n n!)``, so that
    ``int h_m h_n dx = sqrt(pi) delta_mn``.
``Convention.ORTHONORMAL``
    The same times ``pi**(-1/4)``; ``int h_m h_n dx = delta_mn``.

A product of four functions picks up a factor ``1/pi`` when going from
the first to the second.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from . import _config, kernels
from .errors import DomainError

__all__ = [
    "Convention",
    "hermite_poly",
    "hermite_fn",
    "hermite_fn_table",
    "parse_convention",
]

_PI_QUARTER = math.pi ** -0.25


class Convention(enum.Enum):
    PAPER = "paper"
    ORTHONORMAL = "unit"

    @property
    def factor(self):
        """Per-function multiplier relative to the PAPER normalization."""
        return 1.0 if self is Convention.PAPER else _PI_QUARTER


def parse_convention(value):
    if isinstance(value, Convention):
        return value
    v = str(value).lower()
    if v in ("paper", "paperweight", "paper_weight"):
        return Convention.PAPER
    if v in ("unit", "orthonormal"):
        return Convention.ORTHONORMAL
    raise DomainError(f"unknown convention {value!r}")


def _check_degree(n, max_degree):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError(f"degree must be an integer, got {n!r}")
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    limit = _config.MAX_DEGREE if max_degree is None else max_degree
    if n > limit:
        raise DomainError(f"degree {n} exceeds max degree {limit}")
    return int(n)


def _check_point(x):
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"evaluation point must be finite, got {x}")
    return x


def hermite_poly(n, x, *, max_degree=None):
    """Physicists' Hermite polynomial ``H_n(x)`` by the three-term recurrence.

    Raises :class:`OverflowError` when the value leaves the float range;
    use :func:`hermite_fn` for large degrees.
    """
    n = _check_degree(n, max_degree)
    x = _check_point(x)
    if n == 0:
        return 1.0
    prev, cur = 1.0, 2.0 * x
    for m in range(1, n):
        prev, cur = cur, 2.0 * x * cur - 2.0 * m * prev
        if not math.isfinite(cur):
            raise OverflowError(f"H_{n}({x}) overflows double precision (at degree {m + 1})")
    return cur


def hermite_fn(n, x, conv=Convention.PAPER, *, max_degree=None):
    """Hermite function ``h_n(x)`` in the requested normalization.

    The Gaussian factor is carried through a normalized recurrence with
    periodic rescaling, so large degrees do not overflow.
    """
    n = _check_degree(n, max_degree)
    x = _check_point(x)
    conv = parse_convention(conv)
    return kernels.hermite_fn_paper(n, x) * conv.factor


def hermite_fn_table(nmax, xs, conv=Convention.PAPER, *, max_degree=None):
    """``T[n, i] = h_n(xs[i])`` for every ``0 <= n <= nmax``."""
    nmax = _check_degree(nmax, max_degree)
    xs = np.asarray(xs, dtype=float).ravel()
    if not np.all(np.isfinite(xs)):
        raise DomainError("evaluation points must be finite")
    table = kernels.hermite_fn_table(nmax, xs)
    conv = parse_convention(conv)
    if conv is not Convention.PAPER:
        table *= conv.factor
    return table


def hermite_fn_via_poly(n, x, conv=Convention.PAPER):
    """``H_n(x)`` times the normalized Gaussian weight (unnormalized path).

    Cross-check for :func:`hermite_fn`; raises OverflowError when
    ``H_n(x)`` itself does not fit in a double.
    """
    h = hermite_poly(n, x)
    log_norm = -0.5 * (n * math.log(2.0) + math.lgamma(n + 1)) - 0.5 * x * x
    return h * math.exp(log_norm) * parse_convention(conv).factor
