"""Stirling asymptotics and decay bounds for ``W_jpqk``.

Everything here is floating point.  Values of ``W`` enter either through
the exact path (rounded once) or through :func:`~hermprod.linearize.w4_float`,
never through a floating-point alternating sum.

The three-tier decay bound comes in two exponent families:

``"d2"``
    ``(j-k)**2 / (2(j+k))`` in the first tier and ``(j-k)**2 / (3(j+k))``
    in the second, the form in which the three-tier estimate is quoted.
``"d4"``
    Half of those, ``(j-k)**2 / (4(j+k))`` and ``(j-k)**2 / (6(j+k))``,
    which is what the ``p = q = 0`` bound ``exp(-K**2/2J)/sqrt(J)``
    actually gives after substituting ``J = (j+k)/2, K = (j-k)/2``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import _config, kernels
from .errors import DomainError
from .linearize import Index4, _index, inv_sqrt_factorials, w4_exact, w4_float
from .radical import factorial

__all__ = [
    "JKCoords",
    "BoundReport",
    "CpqFit",
    "log_factorial",
    "log_factorial_table",
    "w2_asymptotic",
    "w2_bound",
    "phi",
    "f1_exact",
    "f1_bound",
    "theorem_bound",
    "cpq_fit",
    "PairScan",
    "scan_pair",
    "EXPONENTS",
    "f1_exact_radical",
    "i_pq_bound",
    "w2_abs_grid",
    "w2_bound_grid",
]

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_EXACT_BELOW = 256

# Bernoulli-number coefficients B_{2m} / (2m (2m-1)) of the Stirling series.
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
)

#: Gaussian exponent denominators (tier 1, tier 2) per exponent family.
EXPONENTS = {"d2": (2.0, 3.0), "d4": (4.0, 6.0)}


@dataclass(frozen=True)
class JKCoords:
    J: Fraction
    K: Fraction
    X: float

    @classmethod
    def of(cls, j, k):
        j, k = _index(j, "j"), _index(k, "k")
        n = j + k
        x = (j - k) / math.sqrt(n) if n else 0.0
        return cls(Fraction(n, 2), Fraction(j - k, 2), x)


def log_factorial(n):
    """``log(n!)``: exact for small ``n``, Stirling series with five corrections beyond."""
    n = _index(n, "n")
    if n < _EXACT_BELOW:
        return math.log(factorial(n)) if n > 1 else 0.0
    x = float(n)
    inv = 1.0 / x
    inv2 = inv * inv
    corr = 0.0
    power = inv
    for c in _STIRLING:
        corr += c * power
        power *= inv2
    return (x + 0.5) * math.log(x) - x + _LOG_SQRT_2PI + corr


def log_factorial_table(nmax):
    """Array ``[log(0!), ..., log(nmax!)]``."""
    return np.array([log_factorial(n) for n in range(nmax + 1)])


def _even_pair(j, k):
    j, k = _index(j, "j"), _index(k, "k")
    if (j + k) % 2:
        raise DomainError(f"j+k must be even, got j={j}, k={k}")
    if j + k < 2:
        raise DomainError("j+k must be at least 2")
    return j, k


def w2_asymptotic(j, k):
    """Leading large-J term ``(-1)^K J! / sqrt(2J (J+K)! (J-K)!)`` of ``W_j00k``."""
    j, k = _even_pair(j, k)
    big_j = (j + k) // 2
    big_k = abs(j - k) // 2
    logv = log_factorial(big_j) - 0.5 * (
        math.log(2.0 * big_j) + log_factorial(big_j + big_k) + log_factorial(big_j - big_k)
    )
    sign = -1.0 if ((j - k) // 2) % 2 else 1.0
    return sign * math.exp(logv)


def w2_bound(j, k):
    """Gaussian envelope ``exp(-K**2 / 2J) / sqrt(J)`` for ``|W_j00k|``."""
    j, k = _even_pair(j, k)
    big_j = (j + k) / 2.0
    big_k = (j - k) / 2.0
    return math.exp(-big_k * big_k / (2.0 * big_j)) / math.sqrt(big_j)


def phi(x):
    """``(1+x) log(1+x) + (1-x) log(1-x)`` on ``[0, 1]``, with ``phi(1) = 2 log 2``."""
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"phi is defined on [0, 1], got {x}")
    if x == 1.0:
        return 2.0 * math.log(2.0)
    return (1.0 + x) * math.log1p(x) + (1.0 - x) * math.log1p(-x)


def _check_ell(j, k, ell):
    j, k, ell = _index(j, "j"), _index(k, "k"), _index(ell, "l")
    if ell > j + k or (j + k - ell) % 2:
        raise DomainError(f"l={ell} must satisfy l <= j+k with the parity of j+k={j + k}")
    return j, k, ell


def f1_exact_radical(j, k, ell):
    """``((j+k-l)! / ((j+k-l)/2)!) * l! / (2**(j+k) sqrt(j! k!))`` exactly."""
    j, k, ell = _check_ell(j, k, ell)
    n = j + k - ell
    rat = Fraction(factorial(n) * factorial(ell), factorial(n // 2) << (j + k))
    return inv_sqrt_factorials((j, k), 0, 0) * rat


def f1_exact(j, k, ell):
    """Float value of the first factor of the I-factor, ``I = (-1)^k F1 F2``."""
    return float(f1_exact_radical(j, k, ell))


def _log_i0(j, k):
    n = j + k
    return (
        math.lgamma(n + 1.0)
        - math.lgamma(n / 2.0 + 1.0)
        - n * math.log(2.0)
        - 0.5 * (log_factorial(j) + log_factorial(k))
    )


def f1_bound(j, k, ell):
    """``|I^(0)| * l! / 2**(l/2) * e**(l/2) / (j+k)**[l/2]``."""
    j, k, ell = _check_ell(j, k, ell)
    n = j + k
    logv = _log_i0(j, k) + log_factorial(ell) - 0.5 * ell * math.log(2.0) + 0.5 * ell
    if ell // 2:
        logv -= (ell // 2) * math.log(n)
    return math.exp(logv)


@dataclass
class BoundReport:
    idx: tuple
    absW: float
    tier1: float
    tier2: float | None
    tier3: float
    cpq_used: float
    ok: dict = field(default_factory=dict)
    exponent: str = "d2"

    def to_json(self):
        d = asdict(self)
        d["idx"] = list(self.idx)
        return d


def _tier_shapes(j, k, m, exponent):
    """Tier shapes without the constant: (tier1, tier2 or None, tier3)."""
    d1, d2 = EXPONENTS[exponent]
    n = j + k
    diff2 = float((j - k) * (j - k))
    y = diff2 / (d1 * n)
    inv_sqrt = 1.0 / math.sqrt(n)
    # sum_{l <= [m/2]} y^l / l!
    poly, term = 1.0, 1.0
    for ell in range(1, m // 2 + 1):
        term *= y / ell
        poly += term
    t1 = poly * math.exp(-y) * inv_sqrt
    x = abs(j - k) / math.sqrt(n)
    t2 = math.exp(-diff2 / (d2 * n)) * inv_sqrt if x >= math.sqrt(m) else None
    return t1, t2, inv_sqrt


def _log_tier_shapes(j, k, m, exponent):
    """Logarithms of :func:`_tier_shapes`, finite where the shapes underflow."""
    d1, d2 = EXPONENTS[exponent]
    n = j + k
    diff2 = float((j - k) * (j - k))
    y = diff2 / (d1 * n)
    half_log_n = 0.5 * math.log(n)
    if y > 0:
        logs = [ell * math.log(y) - math.lgamma(ell + 1) for ell in range(m // 2 + 1)]
        top = max(logs)
        log_poly = top + math.log(sum(math.exp(v - top) for v in logs))
    else:
        log_poly = 0.0
    l1 = log_poly - y - half_log_n
    x = abs(j - k) / math.sqrt(n)
    l2 = -diff2 / (d2 * n) - half_log_n if x >= math.sqrt(m) else None
    return l1, l2, -half_log_n


def _pair_roles(idx):
    idx = Index4.of(idx)
    if idx.j + idx.k == 0:
        idx = Index4(idx.p, idx.j, idx.k, idx.q)
    if idx.j + idx.k == 0:
        raise DomainError("bounds need j+k > 0")
    return idx


def theorem_bound(idx, cpq, *, exponent="d2", absw=None, rel_tol=1e-12):
    """Evaluate the three-tier decay bound for one tuple with constant ``cpq``.

    ``(j, k)`` are the running indices, ``(p, q)`` the fixed ones; the pairs
    are only swapped when ``j + k == 0``.
    """
    if exponent not in EXPONENTS:
        raise DomainError(f"exponent must be one of {sorted(EXPONENTS)}, got {exponent!r}")
    if not cpq > 0:
        raise DomainError(f"cpq must be positive, got {cpq}")
    idx = _pair_roles(idx)
    j, p, q, k = idx
    if absw is None:
        absw = abs(float(w4_exact(idx)))
    t1, t2, t3 = _tier_shapes(j, k, p + q, exponent)
    tiers = {"tier1": cpq * t1, "tier2": None if t2 is None else cpq * t2, "tier3": cpq * t3}
    # compare logarithms so that shapes which underflow are still judged correctly
    logs = dict(zip(tiers, _log_tier_shapes(j, k, p + q, exponent)))
    slack = math.log(cpq) + math.log1p(rel_tol)
    log_w = math.log(absw) if absw > 0 else -math.inf
    ok = {
        name: (value is None) or log_w <= logs[name] + slack
        for name, value in tiers.items()
    }
    return BoundReport(tuple(idx), absw, tiers["tier1"], tiers["tier2"], tiers["tier3"],
                       cpq, ok, exponent)


@dataclass
class CpqFit:
    """Fitted constants of the three-tier bound over a scanned grid."""

    constants: dict
    a: float
    tier1_needed: dict
    tier2_needed: dict
    tier3_needed: dict
    jkmax: int
    exponent: str

    def to_json(self):
        key = lambda pq: f"{pq[0]},{pq[1]}"  # noqa: E731
        return {
            "constants": {key(pq): c for pq, c in sorted(self.constants.items())},
            "a": self.a,
            "tier1_needed": {key(pq): c for pq, c in sorted(self.tier1_needed.items())},
            "tier2_needed": {key(pq): c for pq, c in sorted(self.tier2_needed.items())},
            "tier3_needed": {key(pq): c for pq, c in sorted(self.tier3_needed.items())},
            "jkmax": self.jkmax,
            "exponent": self.exponent,
        }


@dataclass
class PairScan:
    """``|W_jpqk|`` over ``jkmax >= j >= k`` for one ``(p, q)`` and the constants each tier needs."""

    p: int
    q: int
    entries: list
    tier1_needed: float
    tier2_needed: float
    tier3_needed: float
    exponent: str

    @property
    def constant(self):
        return max(self.tier1_needed, self.tier3_needed)


#: Above this ``jkmax`` the ``p = q = 0`` scan reads the log-factorial grid.
_LOG_SCAN_JK = 400


def scan_pair(p, q, jkmax, exponent="d2"):
    """Scan the nonzero even-sum tuples ``(j, p, q, k)`` with ``jkmax >= j >= k``."""
    p, q, jkmax = _index(p, "p"), _index(q, "q"), _index(jkmax, "jkmax")
    if exponent not in EXPONENTS:
        raise DomainError(f"exponent must be one of {sorted(EXPONENTS)}, got {exponent!r}")
    m = p + q
    grid = w2_abs_grid(jkmax) if m == 0 and jkmax > _LOG_SCAN_JK else None
    entries = []
    c3 = c1 = c2 = -math.inf
    for j in range(jkmax + 1):
        for k in range(j % 2 ^ m % 2, j + 1, 2):
            if j + k == 0:
                continue
            w = float(grid[j, k]) if grid is not None else abs(w4_float((j, p, q, k)))
            entries.append((j, k, w))
            if w == 0.0:
                continue
            lw = math.log(w)
            l1, l2, l3 = _log_tier_shapes(j, k, m, exponent)
            c3 = max(c3, lw - l3)
            c1 = max(c1, lw - l1)
            if l2 is not None:
                c2 = max(c2, lw - l2)
    need = [_exp_or_inf(c) for c in (c1, c2, c3)]
    return PairScan(p, q, entries, *need, exponent)


def _exp_or_inf(v):
    if v == -math.inf:
        return 0.0
    try:
        return math.exp(v)
    except OverflowError:
        return math.inf


def cpq_fit(pmax, qmax, jkmax=1000, *, exponent="d2"):
    """Fit the constants ``C_{p,q}`` over ``0 <= j, k <= jkmax``.

    ``C_{p,q}`` is the smallest constant for which tiers 3 and 1 both hold
    on the grid.  The constant each tier needs on its own is recorded as
    well (tier 2 is never used for fitting), together with the smallest
    ``a`` such that ``C_{p,q} <= a**(p+q)`` for every ``p + q >= 1``.
    """
    pmax, qmax, jkmax = _index(pmax, "pmax"), _index(qmax, "qmax"), _index(jkmax, "jkmax")
    if exponent not in EXPONENTS:
        raise DomainError(f"exponent must be one of {sorted(EXPONENTS)}, got {exponent!r}")
    pairs = [(p, q) for p in range(pmax + 1) for q in range(qmax + 1)]
    unique = {tuple(sorted(pq)) for pq in pairs}
    _config.check_budget(len(unique) * (jkmax + 1) * (jkmax + 2) // 2, "cpq_fit grid")
    fitted = {pq: scan_pair(*pq, jkmax, exponent) for pq in sorted(unique)}
    constants, need1, need2, need3 = {}, {}, {}, {}
    for p, q in pairs:
        scan = fitted[tuple(sorted((p, q)))]
        constants[(p, q)] = scan.constant
        need1[(p, q)] = scan.tier1_needed
        need2[(p, q)] = scan.tier2_needed
        need3[(p, q)] = scan.tier3_needed
    a = 0.0
    for (p, q), c in constants.items():
        if p + q:
            a = max(a, c ** (1.0 / (p + q)))
    return CpqFit(constants, a, need1, need2, need3, jkmax, exponent)


def w2_abs_grid(jmax):
    """``|W_j00k|`` for all ``0 <= j, k <= jmax`` via log-factorials (zeros on odd sums)."""
    lf = log_factorial_table(2 * jmax)
    g = kernels.w2_log_abs_grid(lf, jmax)
    with np.errstate(under="ignore"):
        return np.exp(g) * math.sqrt(math.pi / 2.0)


def w2_bound_grid(jmax):
    """``exp(-K**2/2J)/sqrt(J)`` on the same grid (``nan`` where undefined)."""
    j = np.arange(jmax + 1, dtype=float)
    jj, kk = np.meshgrid(j, j, indexing="ij")
    big_j = (jj + kk) / 2.0
    big_k = (jj - kk) / 2.0
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.exp(-big_k ** 2 / (2.0 * big_j)) / np.sqrt(big_j)
    odd = ((jj + kk) % 2) == 1
    out[odd | (big_j == 0)] = np.nan
    return out


def i_pq_bound(ell):
    """Norm estimate ``sqrt(l! / 2**l)`` for the small-pair I-factor."""
    return math.sqrt(math.exp(log_factorial(ell) - ell * math.log(2.0)))
