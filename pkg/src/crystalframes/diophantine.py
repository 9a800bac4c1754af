"""Arithmetic side conditions: three squares, quadric points on Q3,
coincidence rotations, Cayley parameterization, Pythagorean rotations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import ratmat
from .errors import (
    NotInLieAlgebraError,
    NotPrimitiveError,
    NotPythagoreanError,
    NotSquareFreeError,
    SingularIplusXError,
)
from .ratmat import frac
from .surd import SurdSum, square_free_part


@dataclass(frozen=True)
class SurdComplex:
    """re + im * sqrt(-D) with rational re, im and square-free D > 0."""

    re: Fraction
    im: Fraction
    D: int

    def __init__(self, re, im, d):
        object.__setattr__(self, "re", frac(re))
        object.__setattr__(self, "im", frac(im))
        object.__setattr__(self, "D", int(d))

    def __add__(self, other: "SurdComplex") -> "SurdComplex":
        self._check(other)
        return SurdComplex(self.re + other.re, self.im + other.im, self.D)

    def __sub__(self, other: "SurdComplex") -> "SurdComplex":
        self._check(other)
        return SurdComplex(self.re - other.re, self.im - other.im, self.D)

    def __mul__(self, other: "SurdComplex") -> "SurdComplex":
        self._check(other)
        return SurdComplex(
            self.re * other.re - self.D * self.im * other.im,
            self.re * other.im + self.im * other.re,
            self.D,
        )

    def scale(self, c) -> "SurdComplex":
        c = frac(c)
        return SurdComplex(self.re * c, self.im * c, self.D)

    def conjugate(self) -> "SurdComplex":
        return SurdComplex(self.re, -self.im, self.D)

    def norm(self) -> Fraction:
        return self.re * self.re + self.D * self.im * self.im

    def inverse(self) -> "SurdComplex":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return SurdComplex(self.re / n, -self.im / n, self.D)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def _check(self, other: "SurdComplex"):
        if self.D != other.D and not (self.is_zero() or other.is_zero()):
            raise ValueError(f"mixed fields sqrt(-{self.D}) vs sqrt(-{other.D})")

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im), "D": self.D}

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        return f"({self.re} + {self.im}*sqrt(-{self.D}))"


# -- three squares ---------------------------------------------------------------

def three_squares_representable(d: int) -> bool:
    """Whether n1^2 + n2^2 + n3^2 = D m^2 is nontrivially solvable.

    For square-free D this holds exactly when D is not congruent to 7
    mod 8 (Legendre / Gauss); non-square-free input is rejected.
    """
    if d < 1:
        raise NotSquareFreeError("D must be a positive integer")
    dd, m = square_free_part(d)
    if m != 1:
        raise NotSquareFreeError(f"{d} = {dd} * {m}^2 is not square-free")
    return d % 8 != 7


def three_squares_witness(d: int, window: int):
    """Brute-force oracle: a solution of n1^2+n2^2+n3^2 = D with entries
    in [0, window], or None."""
    for n1 in range(window + 1):
        if n1 * n1 > d:
            break
        for n2 in range(n1, window + 1):
            rest = d - n1 * n1 - n2 * n2
            if rest < 0:
                break
            n3 = _isqrt_exact(rest)
            if n3 is not None and n3 <= window:
                return (n1, n2, n3)
    return None


def _isqrt_exact(n: int):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


# -- Q3 rational points ------------------------------------------------------------

def q3_point(n) -> tuple[tuple, tuple, int]:
    """The pair of conjugate quadric points cut out by a primitive
    direction of Z^3, with D = square-free part of |n|^2.

    For n with (n2, n3) != (0, 0):
        z1 = n2^2 + n3^2,
        z2 = -n1 n2 + n3 w,   z3 = -n1 n3 - n2 w,     w = sqrt(-|n|^2),
    which satisfies both z1^2+z2^2+z3^2 = 0 and n . z = 0.  The remaining
    primitive direction (+-1, 0, 0) degenerates there and gets the point
    [0, 1, +-sqrt(-1)] directly.
    """
    n = [int(x) for x in n]
    if len(n) != 3 or all(x == 0 for x in n):
        raise NotPrimitiveError("need a nonzero integer 3-vector")
    g = 0
    for x in n:
        g = gcd(g, x)
    if g != 1:
        raise NotPrimitiveError(f"gcd of {tuple(n)} is {g}, not 1")
    n1, n2, n3 = n
    norm = n1 * n1 + n2 * n2 + n3 * n3
    d, m = square_free_part(norm)
    if n2 == 0 and n3 == 0:
        point = (
            SurdComplex(0, 0, 1),
            SurdComplex(1, 0, 1),
            SurdComplex(0, 1, 1),
        )
    else:
        # w = sqrt(-norm) = m sqrt(-D)
        point = (
            SurdComplex(n2 * n2 + n3 * n3, 0, d),
            SurdComplex(-n1 * n2, n3 * m, d),
            SurdComplex(-n1 * n3, -n2 * m, d),
        )
    conj = tuple(z.conjugate() for z in point)
    total = SurdComplex(0, 0, point[0].D)
    for z in point:
        total = total + z * z
    assert total.is_zero(), "quadric equation violated"
    ortho = SurdComplex(0, 0, point[0].D)
    for k, z in zip(n, point):
        ortho = ortho + z.scale(k)
    assert ortho.is_zero(), "hyperplane equation violated"
    return point, conj, d


# -- rational rotations -------------------------------------------------------------

@dataclass(frozen=True)
class RationalRotation:
    """Exact rotation: rational matrix M with M^t S M = S and det M = 1.

    S is the Gramm matrix of the coordinate frame (identity for Cartesian
    coordinates; the hexagonal-lattice rotations live in the oblique frame
    whose Gramm is [[1,-1/2],[-1/2,1]], absorbing the sqrt(3)).
    """

    matrix: tuple
    metric: tuple

    @classmethod
    def make(cls, matrix, metric=None) -> "RationalRotation":
        m = ratmat.mat(matrix)
        d = len(m)
        s = ratmat.mat(metric) if metric is not None else ratmat.ident(d)
        lhs = ratmat.matmul(ratmat.matmul(ratmat.transpose(m), s), m)
        if not ratmat.mat_eq(lhs, s):
            raise ValueError("matrix does not preserve the metric")
        if ratmat.det(m) != 1:
            raise ValueError("rotation must have determinant 1")
        return cls(
            tuple(tuple(row) for row in m), tuple(tuple(row) for row in s)
        )

    def compose(self, other: "RationalRotation") -> "RationalRotation":
        if self.metric != other.metric:
            raise ValueError("rotations in different frames")
        prod = ratmat.matmul(
            ratmat.mat([list(r) for r in self.matrix]),
            ratmat.mat([list(r) for r in other.matrix]),
        )
        return RationalRotation.make(prod, [list(r) for r in self.metric])


HC_METRIC = ((Fraction(1), Fraction(-1, 2)), (Fraction(-1, 2), Fraction(1)))


def coincidence_member(lattice_kind: str, p, q):
    """A rotation in the coincidence symmetry group, or None.

    Z2: [[p,-q],[q,p]] iff p^2+q^2 = 1.  HC: the hexagonal-frame matrix
    [[p,-q],[q,p-q]] iff p^2 - pq + q^2 = 1 (exactly the Cartesian matrix
    [[p-q/2, -sqrt(3)q/2], [sqrt(3)q/2, p-q/2]] conjugated into the
    oblique basis).
    """
    p, q = frac(p), frac(q)
    kind = lattice_kind.upper()
    if kind == "Z2":
        if p * p + q * q != 1:
            return None
        return RationalRotation.make([[p, -q], [q, p]])
    if kind == "HC":
        if p * p - p * q + q * q != 1:
            return None
        return RationalRotation.make([[p, -q], [q, p - q]], HC_METRIC)
    raise ValueError(f"unknown lattice kind {lattice_kind!r}")


def hc_rotation_cartesian(p, q):
    """The same hexagonal rotation as exact Cartesian SurdSum entries."""
    p, q = frac(p), frac(q)
    if p * p - p * q + q * q != 1:
        raise ValueError("p^2 - pq + q^2 must be 1")
    half = SurdSum.of(p - q / 2)
    s3 = SurdSum({3: q / 2})
    return [[half, SurdSum() - s3], [s3, half]]


def cayley_rotation(s, x) -> RationalRotation:
    """Cayley's parameterization (I - X)(I + X)^{-1} in the S-frame.

    X must satisfy X^t S + S X = 0; the output preserves S exactly and has
    determinant 1.
    """
    s = ratmat.mat(s)
    x = ratmat.mat(x)
    lhs = ratmat.mat_add(
        ratmat.matmul(ratmat.transpose(x), s), ratmat.matmul(s, x)
    )
    if any(v != 0 for row in lhs for v in row):
        raise NotInLieAlgebraError("X^t S + S X != 0")
    d = len(x)
    i_minus = ratmat.mat_sub(ratmat.ident(d), x)
    i_plus = ratmat.mat_add(ratmat.ident(d), x)
    if ratmat.det(i_plus) == 0:
        raise SingularIplusXError("I + X is singular")
    phi = ratmat.matmul(i_minus, ratmat.inverse(i_plus))
    return RationalRotation.make(phi, s)


def pythagorean_rotation(x: int, y: int, z: int) -> RationalRotation:
    """The (p, q) = (x/z, y/z) member of the coincidence group of Z^2."""
    if x <= 0 or y <= 0 or z <= 0 or x * x + y * y != z * z:
        raise NotPythagoreanError(f"({x},{y},{z}) is not a Pythagorean triple")
    if gcd(gcd(x, y), z) != 1:
        raise NotPythagoreanError(f"({x},{y},{z}) is not primitive")
    rot = coincidence_member("Z2", Fraction(x, z), Fraction(y, z))
    assert rot is not None
    return rot
