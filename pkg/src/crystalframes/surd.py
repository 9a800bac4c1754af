"""Exact arithmetic with rational combinations of square roots.

A ``SurdSum`` is a finite sum  sum_D  q_D * sqrt(D)  with rational q_D and
distinct square-free positive integers D.  Such sums form a ring (products
of square roots reduce back to the same shape) and, because the sqrt(D) are
linearly independent over Q, equality and rationality tests are exact.
Division is supported by iterated conjugation, one prime at a time.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import InputTooLargeError
from .ratmat import frac

_SQUARE_FREE_BOUND = 10**12


def square_free_part(n: int) -> tuple[int, int]:
    """Split n >= 1 as n = D * m**2 with D square-free; returns (D, m).

    Factoring is plain trial division, complete for n <= 10**12.
    """
    if n < 1:
        raise ValueError("square_free_part requires n >= 1")
    if n > _SQUARE_FREE_BOUND:
        raise InputTooLargeError(f"square_free_part bound is {_SQUARE_FREE_BOUND}")
    d, m = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            m *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    d *= n  # leftover is prime (or 1)
    return d, m


class SurdSum:
    """Immutable element of Q(sqrt(D1), sqrt(D2), ...)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        clean = {}
        if terms:
            for d, c in terms.items():
                c = frac(c)
                if c:
                    clean[int(d)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def of(cls, q) -> "SurdSum":
        return cls({1: frac(q)})

    @classmethod
    def sqrt(cls, q) -> "SurdSum":
        """sqrt of a nonnegative rational, as an exact SurdSum."""
        q = frac(q)
        if q < 0:
            raise ValueError("sqrt of a negative rational")
        if q == 0:
            return cls()
        d, m = square_free_part(q.numerator * q.denominator)
        return cls({d: Fraction(m, q.denominator)})

    # -- ring structure ------------------------------------------------------

    def __add__(self, other) -> "SurdSum":
        other = _coerce(other)
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms.get(d, Fraction(0)) + c
        return SurdSum(terms)

    __radd__ = __add__

    def __neg__(self) -> "SurdSum":
        return SurdSum({d: -c for d, c in self.terms.items()})

    def __sub__(self, other) -> "SurdSum":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "SurdSum":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "SurdSum":
        other = _coerce(other)
        terms: dict[int, Fraction] = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                # both square-free: sqrt(d1) sqrt(d2) = g sqrt((d1/g)(d2/g))
                g = gcd(d1, d2)
                d = (d1 // g) * (d2 // g)
                coeff = c1 * c2 * g
                terms[d] = terms.get(d, Fraction(0)) + coeff
        return SurdSum(terms)

    __rmul__ = __mul__

    def inverse(self) -> "SurdSum":
        if not self.terms:
            raise ZeroDivisionError("inverse of zero SurdSum")
        x, acc = self, SurdSum.of(1)
        while not x.is_rational():
            p = _some_prime_in_support(x)
            conj = x._conjugate_at(p)
            acc = acc * conj
            x = x * conj
        return acc * SurdSum.of(1 / x.rational_value())

    def __truediv__(self, other) -> "SurdSum":
        return self * _coerce(other).inverse()

    def _conjugate_at(self, p: int) -> "SurdSum":
        """Flip the sign of every term whose surd is divisible by prime p."""
        return SurdSum(
            {d: (-c if d % p == 0 else c) for d, c in self.terms.items()}
        )

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return set(self.terms) <= {1}

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.terms.get(1, Fraction(0))

    def single_term(self) -> tuple[Fraction, int] | None:
        """(coefficient, D) when the sum has exactly one term, else None."""
        if len(self.terms) == 1:
            (d, c), = self.terms.items()
            return c, d
        return None

    def __eq__(self, other) -> bool:
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __float__(self) -> float:
        return sum(float(c) * (d ** 0.5) for d, c in self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for d in sorted(self.terms):
            c = self.terms[d]
            parts.append(str(c) if d == 1 else f"{c}*sqrt({d})")
        return " + ".join(parts)


def _coerce(x) -> SurdSum:
    if isinstance(x, SurdSum):
        return x
    if isinstance(x, (int, Fraction)):
        return SurdSum.of(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to SurdSum")


def _some_prime_in_support(x: SurdSum) -> int:
    for d in sorted(x.terms):
        if d > 1:
            p = 2
            while d % p:
                p += 1 if p == 2 else 2
            return p
    raise ValueError("rational SurdSum has no prime support")


ZERO = SurdSum()
ONE = SurdSum.of(1)
