"""Truncated matrices ``M[j, k] = W_jpqk`` at fixed ``(p, q)`` and their norms.

The Schur test bounds the spectral norm of a symmetric matrix by its
largest absolute row sum; :func:`operator_norm` estimates the spectral
norm itself so the two can be compared.
"""
from __future__ import annotations

import io
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import _config
from .asymptotics import w2_abs_grid
from .errors import ConvergenceError, DomainError, ResourceError
from .hermite import Convention, parse_convention
from .linearize import _index, w4_float

__all__ = ["WMatrix", "NormReport", "build_wmatrix", "schur_norm", "operator_norm"]

MAX_SIZE = 5000
#: Above this size the ``p = q = 0`` matrix is filled from log-factorials.
LOG_PATH_SIZE = 400


@dataclass(frozen=True, eq=False)
class WMatrix:
    p: int
    q: int
    size: int
    entries: np.ndarray
    convention: Convention = Convention.PAPER

    def to_csv(self, fh=None):
        """Row-major CSV preceded by a ``# p=.. q=.. N=.. convention=..`` line."""
        out = io.StringIO() if fh is None else fh
        out.write(f"# p={self.p} q={self.q} N={self.size} convention={self.convention.value}\n")
        for row in self.entries:
            out.write(",".join(repr(float(v)) for v in row))
            out.write("\n")
        return out.getvalue() if fh is None else None

    @classmethod
    def from_csv(cls, text):
        lines = text.strip().splitlines()
        head = dict(item.split("=", 1) for item in lines[0].lstrip("# ").split())
        rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
        entries = np.array(rows, dtype=float).reshape(int(head["N"]), int(head["N"]))
        entries.setflags(write=False)
        return cls(int(head["p"]), int(head["q"]), int(head["N"]), entries,
                   parse_convention(head["convention"]))


@dataclass
class NormReport:
    schur_norm: float
    opnorm: float
    ratio: float
    iterations: int
    residual: float
    p: int | None = None
    q: int | None = None
    size: int | None = None

    def to_json(self):
        return asdict(self)


def build_wmatrix(p, q, size, conv=Convention.PAPER):
    """Dense symmetric ``size x size`` matrix of ``W_jpqk`` for ``j, k < size``."""
    p, q, size = _index(p, "p"), _index(q, "q"), _index(size, "size")
    if size > MAX_SIZE:
        raise ResourceError(f"matrix size {size} exceeds {MAX_SIZE}")
    conv = parse_convention(conv)
    if p == q == 0 and size > LOG_PATH_SIZE:
        a = w2_abs_grid(size - 1)
        j = np.arange(size)
        diff = j[:, None] - j[None, :]
        sign = np.where((diff // 2) % 2 == 0, 1.0, -1.0)
        entries = a * sign
    else:
        _config.check_budget(size * (size + 1) // 2, "matrix fill")
        entries = np.zeros((size, size))
        parity = (p + q) % 2
        for j in range(size):
            for k in range(j % 2 ^ parity, j + 1, 2):
                v = w4_float((j, p, q, k))
                entries[j, k] = v
                entries[k, j] = v
    if conv is not Convention.PAPER:
        entries = entries / math.pi
    entries.setflags(write=False)
    return WMatrix(p, q, size, entries, conv)


def _as_array(m):
    return m.entries if isinstance(m, WMatrix) else np.asarray(m, dtype=float)


def schur_norm(m):
    """Largest absolute row sum."""
    a = _as_array(m)
    if a.size == 0:
        return 0.0
    return float(np.abs(a).sum(axis=1).max())


def _power(a, x, tol, max_iter):
    """Power iteration on ``a.T a``; returns (sigma**2, iterations, last change)."""
    rho_old = None
    change = math.inf
    for it in range(1, max_iter + 1):
        y = a @ x
        rho = float(y @ y)
        if rho == 0.0:
            return 0.0, it, 0.0
        z = a.T @ y
        x = z / np.linalg.norm(z)
        if rho_old is not None:
            change = abs(rho - rho_old)
            if change <= tol * rho:
                return rho, it, change / rho
        rho_old = rho
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps "
                           f"(last relative change {change / rho:.3e})")


def operator_norm(m, tol=1e-10, max_iter=200_000):
    """Spectral norm by power iteration with a deterministic start.

    The iteration runs on ``A^T A`` because the matrices with odd ``p + q``
    have spectra symmetric about zero, where plain power iteration on ``A``
    never settles.  The start vector is all ones; if it is annihilated the
    alternating-sign vector is tried once.
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    a = _as_array(m)
    n = a.shape[0]
    schur = schur_norm(a)
    if n == 0 or schur == 0.0:
        return NormReport(schur, 0.0, 1.0, 0, 0.0, *_meta(m))
    rho, iters, resid = 0.0, 0, 0.0
    for start in (np.ones(n), np.where(np.arange(n) % 2, -1.0, 1.0)):
        x = start / np.linalg.norm(start)
        if not np.any(a @ x):
            continue
        rho, iters, resid = _power(a, x, tol, max_iter)
        break
    sigma = math.sqrt(rho)
    ratio = schur / sigma if sigma > 0 else math.inf
    return NormReport(schur, sigma, ratio, iters, resid, *_meta(m))


def _meta(m):
    if isinstance(m, WMatrix):
        return m.p, m.q, m.size
    return None, None, None
