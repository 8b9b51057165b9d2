"""Exact numbers of the form ``rational * sqrt(rational) * pi**(k/2)``.

Every integral handled by the package is a rational multiple of
``sqrt(pi * r)`` for a rational ``r``; the intermediate I-factors and
linearization coefficients have no ``pi`` at all.  :class:`ExactRadical`
keeps such numbers exact.  Internally a value is stored as
``scale * sqrt(kernel) * pi**(pi_power/2)`` with ``kernel`` a squarefree
positive integer, which makes the representation unique and lets plain
dataclass equality act as exact value equality.
"""
from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = [
    "ExactRadical",
    "factorial",
    "primes_upto",
    "squarefree_split",
    "sqrt_float",
]


class _FactorialTable:
    """Memoized exact factorials; fills are serialized, reads are lock-free."""

    def __init__(self):
        self._values = [1]
        self._lock = threading.Lock()

    def __call__(self, n):
        values = self._values
        if n < len(values):
            return values[n]
        if n < 0:
            raise ValueError("factorial of a negative number")
        with self._lock:
            values = self._values
            if n >= len(values):
                grown = list(values)
                acc = grown[-1]
                for i in range(len(grown), n + 1):
                    acc *= i
                    grown.append(acc)
                self._values = grown
            return self._values[n]


factorial = _FactorialTable()

_prime_lock = threading.Lock()
_primes = [2, 3, 5, 7, 11, 13]
_primes_limit = 13


def primes_upto(n):
    """All primes ``<= n`` (cached, grows on demand)."""
    global _primes, _primes_limit
    if n > _primes_limit:
        with _prime_lock:
            if n > _primes_limit:
                limit = max(n, 2 * _primes_limit)
                sieve = bytearray([1]) * (limit + 1)
                sieve[0:2] = b"\x00\x00"
                for i in range(2, math.isqrt(limit) + 1):
                    if sieve[i]:
                        sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
                _primes = [i for i, flag in enumerate(sieve) if flag]
                _primes_limit = limit
    primes = _primes
    if n >= primes[-1]:
        return primes
    import bisect

    return primes[: bisect.bisect_right(primes, n)]


def _legendre(n, p):
    e = 0
    while n:
        n //= p
        e += n
    return e


def factorial_kernel(ns, two_power=0):
    """Squarefree kernel of ``2**two_power * prod(n! for n in ns)``.

    Uses Legendre's formula, so no factoring of the (possibly huge)
    product is needed.
    """
    top = max(ns, default=0)
    kernel = 1
    for p in primes_upto(max(top, 2)):
        e = sum(_legendre(n, p) for n in ns)
        if p == 2:
            e += two_power
        if e & 1:
            kernel *= p
    return kernel


def squarefree_split(n):
    """Return ``(s, k)`` with ``n == s*s*k`` and ``k`` squarefree.

    Trial division by small primes followed by a perfect-square test of
    the cofactor.  Only meant for user-supplied radicands; factorial
    products go through :func:`factorial_kernel`.
    """
    if n <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    square, kernel = 1, 1
    rest = n
    for p in primes_upto(1 << 14):
        if p * p > rest:
            break
        if rest % p:
            continue
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        square *= p ** (e // 2)
        if e & 1:
            kernel *= p
    if rest > 1:
        r = math.isqrt(rest)
        if r * r == rest:
            square *= r
        else:
            # Cofactor has no prime factor below 2**14; any square factor it
            # still hides would need a prime >= 2**14 appearing twice.
            kernel *= rest
    return square, kernel


def sqrt_float(q):
    """``sqrt(q)`` for a non-negative Fraction of any size, nearly correctly rounded."""
    num, den = q.numerator, q.denominator
    if num == 0:
        return 0.0
    t = (num.bit_length() - den.bit_length()) // 2
    if t >= 0:
        ratio = num / (den << (2 * t))
    else:
        ratio = (num << (-2 * t)) / den
    return math.ldexp(math.sqrt(ratio), t)


def _fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True, eq=False)
class ExactRadical:
    """The real number ``scale * sqrt(kernel) * pi**(pi_power/2)``.

    ``kernel`` is squarefree; zero is ``scale == 0, kernel == 1``.  Build
    values with :meth:`make`, :meth:`from_rational` or
    :meth:`sqrt_of`; the raw constructor trusts its arguments.  Equality
    is value equality: all zeros compare equal whatever their ``pi_power``.
    """

    scale: Fraction
    kernel: int = 1
    pi_power: int = 1

    # -- construction -------------------------------------------------
    @classmethod
    def make(cls, coeff, radicand, pi_power=1):
        """``coeff * sqrt(radicand) * pi**(pi_power/2)`` for rational inputs."""
        coeff = _fraction(coeff)
        radicand = _fraction(radicand)
        if radicand < 0:
            raise ValueError("radicand must be non-negative")
        if coeff == 0 or radicand == 0:
            return cls.zero(pi_power)
        sn, kn = squarefree_split(radicand.numerator)
        sd, kd = squarefree_split(radicand.denominator)
        # sqrt(kn/kd) = sqrt(kn*kd)/kd
        return cls._canon(coeff * Fraction(sn, sd * kd), kn * kd, pi_power)

    @classmethod
    def from_rational(cls, value, pi_power=0):
        value = _fraction(value)
        if value == 0:
            return cls.zero(pi_power)
        return cls(value, 1, pi_power)

    @classmethod
    def sqrt_of(cls, radicand, pi_power=1):
        return cls.make(1, radicand, pi_power)

    @classmethod
    def zero(cls, pi_power=1):
        return cls(Fraction(0), 1, pi_power)

    @classmethod
    def _canon(cls, scale, kernel, pi_power):
        if scale == 0:
            return cls.zero(pi_power)
        return cls(scale, kernel, pi_power)

    def __eq__(self, other):
        if not isinstance(other, ExactRadical):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return (self.scale, self.kernel, self.pi_power) == (other.scale, other.kernel, other.pi_power)

    def __hash__(self):
        if self.is_zero:
            return hash(0)
        return hash((self.scale, self.kernel, self.pi_power))

    # -- canonical view ------------------------------------
    @property
    def coeff(self):
        """Rational ``c`` of the canonical form ``c * sqrt(pi**pi_power * r)``."""
        g = math.gcd(self.kernel, self.scale.denominator)
        return Fraction(self.scale.numerator, self.scale.denominator // g)

    @property
    def radicand(self):
        """Rational ``r`` with squarefree numerator and denominator."""
        g = math.gcd(self.kernel, self.scale.denominator)
        return Fraction(self.kernel // g, g)

    @property
    def is_zero(self):
        return self.scale == 0

    def sign(self):
        return (self.scale > 0) - (self.scale < 0)

    def square(self):
        """Exact ``value**2 / pi**pi_power`` as a Fraction."""
        return self.scale * self.scale * self.kernel

    # -- arithmetic -----------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, ExactRadical):
            if self.is_zero or other.is_zero:
                return ExactRadical.zero(self.pi_power + other.pi_power)
            g = math.gcd(self.kernel, other.kernel)
            kernel = (self.kernel // g) * (other.kernel // g)
            return ExactRadical(self.scale * other.scale * g, kernel,
                                self.pi_power + other.pi_power)
        if isinstance(other, (int, Rational)):
            return ExactRadical._canon(self.scale * _fraction(other), self.kernel, self.pi_power)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            other = _fraction(other)
            if other == 0:
                raise ZeroDivisionError("ExactRadical division by zero")
            return ExactRadical._canon(self.scale / other, self.kernel, self.pi_power)
        return NotImplemented

    def __neg__(self):
        return ExactRadical(-self.scale, self.kernel, self.pi_power)

    def __add__(self, other):
        if isinstance(other, (int, Rational)):
            other = ExactRadical.from_rational(other, self.pi_power)
        if not isinstance(other, ExactRadical):
            return NotImplemented
        if other.is_zero and other.pi_power == self.pi_power:
            return self
        if self.is_zero and other.pi_power == self.pi_power:
            return other
        if self.kernel != other.kernel or self.pi_power != other.pi_power:
            raise ValueError(f"cannot add incommensurable radicals {self} and {other}")
        return ExactRadical._canon(self.scale + other.scale, self.kernel, self.pi_power)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def divide_by_pi(self):
        """The value divided by ``pi`` (exact: lowers ``pi_power`` by two)."""
        return ExactRadical(self.scale, self.kernel, self.pi_power - 2)

    def as_fraction(self):
        """The value as a Fraction; only legal for ``pi``-free rational values."""
        if self.is_zero:
            return Fraction(0)
        if self.kernel != 1 or self.pi_power != 0:
            raise ValueError(f"{self} is not rational")
        return self.scale

    # -- conversion -----------------------------------------------------
    def __float__(self):
        if self.is_zero:
            return 0.0
        mag = sqrt_float(self.square())
        if self.pi_power:
            mag *= math.pi ** (self.pi_power / 2)
        return mag if self.scale > 0 else -mag

    def __abs__(self):
        return ExactRadical(abs(self.scale), self.kernel, self.pi_power)

    def __bool__(self):
        return not self.is_zero

    def to_text(self):
        """Canonical text, e.g. ``+(3/4)*sqrt(pi*(1/2))``; zero prints as ``0``."""
        if self.is_zero:
            return "0"
        c = self.coeff
        r = self.radicand
        sign = "+" if c > 0 else "-"
        c = abs(c)
        rad = f"({r.numerator}/{r.denominator})"
        if self.pi_power == 1:
            inner = f"pi*{rad}"
        elif self.pi_power == 0:
            inner = f"{r.numerator}/{r.denominator}"
        elif self.pi_power == -1:
            inner = f"{rad}/pi"
        else:
            inner = f"pi**({self.pi_power})*{rad}"
        return f"{sign}({c.numerator}/{c.denominator})*sqrt({inner})"

    _HEAD = re.compile(r"^([+-])\((\d+)/(\d+)\)\*sqrt\((.*)\)$")
    _INNER = (
        (re.compile(r"^pi\*\((\d+)/(\d+)\)$"), lambda m: 1),
        (re.compile(r"^\((\d+)/(\d+)\)/pi$"), lambda m: -1),
        (re.compile(r"^(\d+)/(\d+)$"), lambda m: 0),
        (re.compile(r"^pi\*\*\((-?\d+)\)\*\((\d+)/(\d+)\)$"), None),
    )

    @classmethod
    def from_text(cls, text):
        """Parse the output of :meth:`to_text`."""
        text = text.strip()
        if text == "0":
            return cls.zero()
        head = cls._HEAD.match(text)
        if head:
            sign, cn, cd, inner = head.groups()
            for pattern, power in cls._INNER:
                m = pattern.match(inner)
                if not m:
                    continue
                if power is None:
                    pp, rn, rd = (int(g) for g in m.groups())
                else:
                    pp = power(m)
                    rn, rd = (int(g) for g in m.groups())
                coeff = Fraction(int(cn), int(cd))
                return cls.make(coeff if sign == "+" else -coeff, Fraction(rn, rd), pp)
        raise ValueError(f"not a canonical radical: {text!r}")

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"ExactRadical({self.to_text()!r})"
