"""Exact linearization coefficients and four-function integrals.

The product ``H_j(x) H_k(x)`` expands in the rescaled polynomials
``H_l(sqrt(2) x)`` with coefficients ``a_l`` (zero unless ``l`` has the
parity of ``j + k``).  Pairing two such expansions against the weight
``exp(-2 x**2)`` gives

    W_jpqk = sum_l a_l(j, k) a_l(p, q) c_l / sqrt(2**(j+p+q+k) j! p! q! k!)

with ``c_l = 2**(l - 1/2) l! sqrt(pi)``.  All arithmetic here is exact;
results are :class:`~hermprod.radical.ExactRadical` values.  Three
independent assemblies of ``W`` are provided (:func:`w4_exact`,
:func:`w4_single_sum`, :func:`w4_via_ifactors`) and must agree exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .errors import DomainError
from .hermite import Convention, parse_convention
from .radical import ExactRadical, factorial, factorial_kernel, sqrt_float

__all__ = [
    "Index4",
    "LinearizationExpansion",
    "a_coeff",
    "linearize",
    "c_integral",
    "w4_exact",
    "w4_single_sum",
    "w2_00",
    "i_factor",
    "w4_via_ifactors",
    "f2_sum",
    "w4_float",
    "normalize_pairs",
]


class Index4(NamedTuple):
    j: int
    p: int
    q: int
    k: int

    @classmethod
    def of(cls, idx):
        if isinstance(idx, cls):
            return idx
        try:
            j, p, q, k = idx
        except (TypeError, ValueError):
            raise DomainError(f"expected four indices, got {idx!r}") from None
        return cls(*(_index(v, name) for v, name in zip((j, p, q, k), "jpqk")))


def _index(v, name="index"):
    if isinstance(v, bool) or not isinstance(v, int):
        try:
            import numpy as np

            if isinstance(v, np.integer):
                v = int(v)
            else:
                raise TypeError
        except TypeError:
            raise DomainError(f"{name} must be an integer, got {v!r}") from None
    if v < 0:
        raise DomainError(f"{name} must be non-negative, got {v}")
    return v


def _sgn(e):
    return -1 if e % 2 else 1


def normalize_pairs(idx):
    """Order the pairs so that ``p + q <= j + k``."""
    idx = Index4.of(idx)
    if idx.p + idx.q > idx.j + idx.k:
        return Index4(idx.p, idx.j, idx.k, idx.q)
    return idx


# -- radicals of factorial products -----------------------------------

def _factorial_product(ns):
    out = 1
    for n in ns:
        out *= factorial(n)
    return out


def _sqrt_parts(ns, two_power):
    """``(c, s)`` with ``sqrt(2**two_power * prod n!) == c * sqrt(s)``, ``s`` squarefree."""
    half, odd = divmod(two_power, 2)
    m = _factorial_product(ns) << odd
    s = factorial_kernel(ns, odd)
    t = math.isqrt(m // s)
    c = Fraction(t) * (Fraction(2) ** half)
    return c, s


def sqrt_factorials(ns, two_power=0, pi_power=0):
    """ExactRadical for ``sqrt(2**two_power * prod n!) * pi**(pi_power/2)``."""
    c, s = _sqrt_parts(ns, two_power)
    return ExactRadical(c, s, pi_power)


def inv_sqrt_factorials(ns, two_power=0, pi_power=0):
    """ExactRadical for ``pi**(pi_power/2) / sqrt(2**two_power * prod n!)``."""
    c, s = _sqrt_parts(ns, two_power)
    return ExactRadical(1 / (c * s), s, pi_power)


# -- linearization coefficients ---------------------------------------

def _inner_sum(j, k, ell):
    """sum_r (-1)^(k-r) C(l, r) C(j+k-l, k-r): the t^j s^k coefficient."""
    n = j + k - ell
    total = 0
    for r in range(max(0, k - n), min(ell, k) + 1):
        term = math.comb(ell, r) * math.comb(n, k - r)
        total += -term if (k - r) % 2 else term
    return total


@lru_cache(maxsize=1 << 16)
def a_coeff(j, k, ell):
    """Coefficient of ``H_l(sqrt 2 x)`` in ``H_j(x) H_k(x)``.

    Rational when ``j + k`` is even and a rational multiple of
    ``sqrt(2)`` when it is odd, so the result is an ExactRadical without
    ``pi``.  Zero outside ``l = j+k, j+k-2, ..., >= 0``.
    """
    j, k, ell = _index(j, "j"), _index(k, "k"), _index(ell, "l")
    n = j + k
    if ell > n or (n - ell) % 2:
        return ExactRadical.zero(0)
    u = (n - ell) // 2
    num = _sgn(u) * factorial(j) * factorial(k) * _inner_sum(j, k, ell)
    den = factorial(ell) * factorial(u)
    if n % 2 == 0:
        return ExactRadical.from_rational(Fraction(num, den << (n // 2)), 0)
    # 2**(-n/2) = sqrt(2) / 2**((n+1)/2)
    return ExactRadical._canon(Fraction(num, den << ((n + 1) // 2)), 2, 0)


def _hermite_sqrt2(ell, x):
    """``H_l(sqrt(2) x)`` for rational ``x`` as ``(p, q)`` meaning ``p + q sqrt 2``."""
    prev = (Fraction(1), Fraction(0))
    if ell == 0:
        return prev
    cur = (Fraction(0), 2 * x)
    for m in range(1, ell):
        # 2 sqrt(2) x * (p + q sqrt 2) = 4 x q + 2 x p sqrt 2
        nxt = (4 * x * cur[1] - 2 * m * prev[0], 2 * x * cur[0] - 2 * m * prev[1])
        prev, cur = cur, nxt
    return cur


def _hermite_exact(n, x):
    prev, cur = Fraction(1), 2 * x
    if n == 0:
        return prev
    for m in range(1, n):
        prev, cur = cur, 2 * x * cur - 2 * m * prev
    return cur


@dataclass(frozen=True)
class LinearizationExpansion:
    """``H_j(x) H_k(x) = sum_l coeffs[l] * H_l(sqrt(2) x)``."""

    j: int
    k: int
    coeffs: dict = field(hash=False)

    def evaluate(self, x):
        """Exact value of the expansion at a rational point."""
        x = Fraction(x)
        rat = Fraction(0)
        irr = Fraction(0)
        for ell, a in self.coeffs.items():
            p, q = _hermite_sqrt2(ell, x)
            if a.kernel == 1:
                rat += a.scale * p
                irr += a.scale * q
            else:
                rat += 2 * a.scale * q
                irr += a.scale * p
        if irr != 0:
            raise ArithmeticError("expansion has an irrational value at a rational point")
        return rat

    def target(self, x):
        """``H_j(x) H_k(x)`` computed directly."""
        x = Fraction(x)
        return _hermite_exact(self.j, x) * _hermite_exact(self.k, x)


def linearize(j, k):
    j, k = _index(j, "j"), _index(k, "k")
    n = j + k
    coeffs = {ell: a_coeff(j, k, ell) for ell in range(n % 2, n + 1, 2)}
    return LinearizationExpansion(j, k, coeffs)


def c_integral(ell):
    """``int H_l(sqrt 2 x)**2 exp(-2 x**2) dx = 2**(l - 1/2) l! sqrt(pi)``."""
    ell = _index(ell, "l")
    return ExactRadical.make(Fraction(factorial(ell) << ell), Fraction(1, 2), 1)


# -- four-function integrals ------------------------------------------

def _apply_convention(value, conv):
    conv = parse_convention(conv)
    return value if conv is Convention.PAPER else value.divide_by_pi()


def w4_exact(idx, conv=Convention.PAPER):
    """Exact ``W_jpqk`` from the linearization coefficients and ``c_l``."""
    idx = normalize_pairs(idx)
    j, p, q, k = idx
    total = j + p + q + k
    if total % 2:
        return _apply_convention(ExactRadical.zero(1), conv)
    m = p + q
    acc = Fraction(0)
    for ell in range(m % 2, m + 1, 2):
        a = a_coeff(j, k, ell)
        if a.is_zero:
            continue
        b = a_coeff(p, q, ell)
        # a and b share parity, so a*b is rational
        prod = (a * b).as_fraction()
        acc += prod * (factorial(ell) << ell)
    if acc == 0:
        return _apply_convention(ExactRadical.zero(1), conv)
    # c_l = 2^l l! sqrt(pi/2); prefactor 1/sqrt(2^total j!p!q!k!)
    pref = inv_sqrt_factorials(idx, total + 1, 1)
    return _apply_convention(pref * acc, conv)


def w4_single_sum(idx):
    """Consolidated single-sum form of ``W_jpqk`` (PaperWeight)."""
    idx = normalize_pairs(idx)
    j, p, q, k = idx
    total = j + p + q + k
    if total % 2:
        return ExactRadical.zero(1)
    nj, m = j + k, p + q
    acc = Fraction(0)
    for ell in range(m % 2, m + 1, 2):
        sj = _inner_sum(j, k, ell)
        if sj == 0:
            continue
        sp = _inner_sum(p, q, ell)
        den = factorial((nj - ell) // 2) * factorial((m - ell) // 2) * factorial(ell)
        acc += Fraction(_sgn(total // 2 - ell) * (sj * sp << ell), den)
    if acc == 0:
        return ExactRadical.zero(1)
    pref = sqrt_factorials(idx, -1, 1) / (1 << total)
    return pref * acc


def w2_00(j, k):
    """Closed form of ``W_j00k`` (PaperWeight)."""
    j, k = _index(j, "j"), _index(k, "k")
    n = j + k
    if n % 2:
        return ExactRadical.zero(1)
    big = Fraction(factorial(n), factorial(n // 2) << n)
    return inv_sqrt_factorials((j, k), 1, 1) * (_sgn((j - k) // 2) * big)


def i_factor(j, k, ell):
    """``sqrt(j! k!) / 2**(j+k) / ((j+k-l)/2)! * sum_r (-1)^(k-r) C(l,r) C(j+k-l,k-r)``."""
    j, k, ell = _index(j, "j"), _index(k, "k"), _index(ell, "l")
    n = j + k
    if ell > n or (n - ell) % 2:
        return ExactRadical.zero(0)
    s = _inner_sum(j, k, ell)
    if s == 0:
        return ExactRadical.zero(0)
    return sqrt_factorials((j, k), 0, 0) * Fraction(s, factorial((n - ell) // 2) << n)


def w4_via_ifactors(idx):
    """``W_jpqk`` assembled from I-factors of both pairs (PaperWeight)."""
    idx = normalize_pairs(idx)
    j, p, q, k = idx
    total = j + p + q + k
    if total % 2:
        return ExactRadical.zero(1)
    m = p + q
    acc = ExactRadical.zero(0)
    for ell in range(m % 2, m + 1, 2):
        term = i_factor(j, k, ell) * i_factor(p, q, ell)
        if term.is_zero:
            continue
        acc = acc + term * Fraction(_sgn(total // 2 - ell) << ell, factorial(ell))
    return acc * ExactRadical.make(1, Fraction(1, 2), 1)


def f2_sum(j, k, ell, form="A"):
    """Alternating binomial sum, two equivalent forms.

    ``A``: ``sum_r (-1)^r C(k, r) C(j, l-r)``;
    ``B``: ``sum_r (-1)^r C(k, r) C(j-k, l-2r)``, defined for ``j >= k``.
    """
    j, k, ell = _index(j, "j"), _index(k, "k"), _index(ell, "l")
    form = str(form).upper()
    total = 0
    if form == "A":
        for r in range(0, min(ell, k) + 1):
            t = math.comb(k, r) * math.comb(j, ell - r)
            total += -t if r % 2 else t
    elif form == "B":
        if j < k:
            raise DomainError(f"form B needs j >= k, got j={j}, k={k}")
        for r in range(0, min(ell // 2, k) + 1):
            t = math.comb(k, r) * math.comb(j - k, ell - 2 * r)
            total += -t if r % 2 else t
    else:
        raise DomainError(f"unknown form {form!r}")
    return total


# -- fast float path --------------------------------------------------

@lru_cache(maxsize=1 << 20)
def _pair_scale(j, k, m):
    """float sqrt(D**2 / (4**N j! k!)) with D = (N-m)!/((N-m)/2)!, N = j+k."""
    n = j + k
    nmin = n - m
    d = factorial(nmin) // factorial(nmin // 2)
    return sqrt_float(Fraction(d * d, (factorial(j) * factorial(k)) << (2 * n)))


@lru_cache(maxsize=4096)
def _small_pair(p, q):
    m = p + q
    lo = m % 2
    lm = factorial((m - lo) // 2)
    scale = sqrt_float(Fraction(factorial(p) * factorial(q), 2 * lm * lm) / (1 << (2 * m)))
    terms = []
    for ell in range(lo, m + 1, 2):
        s = _inner_sum(p, q, ell)
        if s:
            terms.append((ell, s * (lm // factorial((m - ell) // 2))))
    return scale * math.sqrt(math.pi), tuple(terms)


def w4_float(idx, conv=Convention.PAPER):
    """``float(w4_exact(idx))`` without building the exact radical.

    The alternating sums are carried out in exact integers; only the
    common prefactor is rounded, so this agrees with the exact path to a
    few ulps while being far cheaper for large ``j, k``.
    """
    idx = normalize_pairs(idx)
    j, p, q, k = idx
    n, m = j + k, p + q
    if (n + m) % 2:
        return 0.0
    small_scale, terms = _small_pair(p, q)
    half = (n + m) // 2
    z = 0
    mu = 1
    prev_ell = m
    for ell, sv in reversed(terms):
        # mu_l = prod over l' from m down to l+2 of 2(n - l' + 1)
        for e in range(prev_ell, ell, -2):
            mu *= 2 * (n - e + 1)
        prev_ell = ell
        f2 = f2_sum(j, k, ell, "A")
        if f2:
            z += _sgn(half - ell) * (f2 * mu * sv << ell)
    if z == 0:
        return 0.0
    if k % 2:
        z = -z
    val = _pair_scale(j, k, m) * small_scale
    out = val * z
    if parse_convention(conv) is not Convention.PAPER:
        out /= math.pi
    return out
