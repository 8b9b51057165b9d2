"""Gauss-Hermite quadrature used as an independent oracle for ``W_jpqk``.

Nodes come from the eigenvalues of the symmetric tridiagonal Jacobi
matrix and are then polished by Newton's method on the orthonormal
Hermite function.  Besides the ordinary weights for ``exp(-y**2)`` the
rule keeps ``scaled_weights = weights * exp(y**2)``, which stay
representable for every node count (the ordinary weights of the
outermost nodes underflow past a few hundred points).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import kernels
from .errors import ConvergenceError, DomainError
from .hermite import Convention, parse_convention
from .linearize import Index4

__all__ = ["QuadratureRule", "gauss_hermite_rule", "w4_quadrature", "auto_npoints"]

MAX_POINTS = 2000
NODE_TOL = 1e-14

_PI_QUARTER = math.pi ** -0.25


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    scaled_weights: np.ndarray
    npoints: int

    @property
    def degree_exact(self):
        return 2 * self.npoints - 1

    def integrate(self, f):
        """``int f(y) exp(-y**2) dy`` for a vectorized callable ``f``."""
        return float(np.dot(self.weights, f(self.nodes)))


def _psi_pair(n, ys):
    lo, hi = kernels.hermite_fn_pair(n, ys)
    return lo * _PI_QUARTER, hi * _PI_QUARTER


@lru_cache(maxsize=64)
def gauss_hermite_rule(npoints):
    """Gauss-Hermite rule with ``npoints`` nodes for the weight ``exp(-y**2)``."""
    if isinstance(npoints, bool) or not isinstance(npoints, (int, np.integer)):
        raise DomainError(f"npoints must be an integer, got {npoints!r}")
    n = int(npoints)
    if not 1 <= n <= MAX_POINTS:
        raise DomainError(f"npoints must be in [1, {MAX_POINTS}], got {n}")
    if n == 1:
        nodes = np.array([0.0])
        w = np.array([math.sqrt(math.pi)])
        return _freeze(QuadratureRule(nodes, w, w.copy(), 1))

    off = np.sqrt(np.arange(1, n) / 2.0)
    eig = eigh_tridiagonal(np.zeros(n), off, eigvals_only=True)
    eig = np.sort(eig)
    y = 0.5 * (eig[(n + 1) // 2 :] - eig[: n // 2][::-1])
    sqrt2n = math.sqrt(2.0 * n)
    for _ in range(20):
        lo, hi = _psi_pair(n, y)
        step = hi / (sqrt2n * lo - y * hi)
        y -= step
        if np.all(np.abs(step) <= NODE_TOL * np.maximum(1.0, y)):
            break
    else:
        worst = float(np.max(np.abs(step)))
        raise ConvergenceError(f"node refinement for n={n} stalled at step {worst:.3e}")

    lo, _ = _psi_pair(n, y)
    scaled = 1.0 / (n * lo * lo)
    if n % 2:
        lo0, _ = _psi_pair(n, np.array([0.0]))
        s0 = 1.0 / (n * lo0[0] ** 2)
        nodes = np.concatenate([-y[::-1], [0.0], y])
        scaled_w = np.concatenate([scaled[::-1], [s0], scaled])
    else:
        nodes = np.concatenate([-y[::-1], y])
        scaled_w = np.concatenate([scaled[::-1], scaled])
    with np.errstate(under="ignore"):
        weights = scaled_w * np.exp(-nodes * nodes)
    return _freeze(QuadratureRule(nodes, weights, scaled_w, n))


def _freeze(rule):
    for arr in (rule.nodes, rule.weights, rule.scaled_weights):
        arr.setflags(write=False)
    return rule


def auto_npoints(total_degree):
    """Node count integrating a polynomial of ``total_degree`` exactly, plus 4."""
    return -(-(total_degree + 2) // 2) + 4


@lru_cache(maxsize=32)
def _node_table(npoints, nmax):
    rule = gauss_hermite_rule(npoints)
    xs = rule.nodes / math.sqrt(2.0)
    table = kernels.hermite_fn_table(nmax, xs)
    # dx = dy / sqrt(2)
    table.setflags(write=False)
    return rule.scaled_weights / math.sqrt(2.0), table


def w4_quadrature(idx, conv=Convention.PAPER, npoints="auto"):
    """``int h_j h_p h_q h_k dx`` by Gauss-Hermite quadrature in ``y = sqrt(2) x``."""
    idx = Index4.of(idx)
    total = sum(idx)
    if npoints in (None, "auto"):
        npoints = auto_npoints(total)
    # round the table height up so nearby calls share one cached table
    nmax = max(idx)
    nmax = -(-(nmax + 1) // 32) * 32
    w, table = _node_table(int(npoints), nmax)
    prod = table[idx.j] * table[idx.p] * table[idx.q] * table[idx.k]
    val = float(np.dot(w, prod))
    if parse_convention(conv) is not Convention.PAPER:
        val /= math.pi
    return val
