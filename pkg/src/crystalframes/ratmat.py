"""Exact linear algebra over the rationals.

Matrices are lists of row lists holding ``fractions.Fraction`` (plain ints
are accepted on input and promoted).  Everything here is dense and small:
the whole library works at desk scale, so clarity and exactness beat speed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vec = list[Fraction]
Mat = list[list[Fraction]]


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def mat(rows: Iterable[Iterable]) -> Mat:
    return [[frac(x) for x in row] for row in rows]


def vec(entries: Iterable) -> Vec:
    return [frac(x) for x in entries]


def ident(n: int) -> Mat:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Mat:
    return [[Fraction(0)] * n for _ in range(m)]


def shape(a: Sequence[Sequence]) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Mat, v: Sequence) -> Vec:
    return [sum(x * frac(y) for x, y in zip(row, v)) for row in a]


def mat_add(a: Mat, b: Mat) -> Mat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Mat, b: Mat) -> Mat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Mat, c) -> Mat:
    c = frac(c)
    return [[c * x for x in row] for row in a]


def mat_eq(a: Mat, b: Mat) -> bool:
    return shape(a) == shape(b) and all(
        x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum(frac(x) * frac(y) for x, y in zip(u, v))


def rref(a: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form; returns (R, pivot column indices)."""
    r = [[frac(x) for x in row] for row in a]
    m, n = shape(r)
    pivots: list[int] = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, m) if r[i][col] != 0), None)
        if piv is None:
            continue
        r[row], r[piv] = r[piv], r[row]
        inv = 1 / r[row][col]
        r[row] = [x * inv for x in r[row]]
        for i in range(m):
            if i != row and r[i][col] != 0:
                c = r[i][col]
                r[i] = [x - c * y for x, y in zip(r[i], r[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return r, pivots


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def rational_kernel(a: Mat) -> list[Vec]:
    """Basis of the right null space of a, deterministic from the RREF."""
    m, n = shape(a)
    r, pivots = rref(a)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def solve(a: Mat, b: Sequence) -> Vec:
    """Solve ax = b for the unique solution; raises ValueError otherwise."""
    m, n = shape(a)
    aug = [[frac(x) for x in row] + [frac(bv)] for row, bv in zip(a, b)]
    r, pivots = rref(aug)
    if n in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) < n:
        raise ValueError("underdetermined linear system")
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = r[i][n]
    return x


def det(a: Mat) -> Fraction:
    m, n = shape(a)
    if m != n:
        raise ValueError("determinant of a non-square matrix")
    r = [[frac(x) for x in row] for row in a]
    result = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if r[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            r[col], r[piv] = r[piv], r[col]
            result = -result
        result *= r[col][col]
        inv = 1 / r[col][col]
        for i in range(col + 1, n):
            if r[i][col] != 0:
                c = r[i][col] * inv
                r[i] = [x - c * y for x, y in zip(r[i], r[col])]
    return result


def inverse(a: Mat) -> Mat:
    m, n = shape(a)
    if m != n:
        raise ValueError("inverse of a non-square matrix")
    aug = [[frac(x) for x in row] + iden for row, iden in zip(a, ident(n))]
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in r]


def gram(columns: list[Vec], metric: Mat | None = None) -> Mat:
    """Gramm matrix of a list of vectors, optionally under a metric."""
    if metric is None:
        return [[dot(u, v) for v in columns] for u in columns]
    mu = [matvec(metric, v) for v in columns]
    return [[dot(u, mv) for mv in mu] for u in columns]


def gram_schmidt(vectors: list[Vec], metric: Mat | None = None) -> list[Vec]:
    """Orthogonalize (not normalize) vectors in order, exactly.

    Zero vectors produced by dependence are dropped.  With a metric G the
    inner product is u^t G v.
    """

    def ip(u, v):
        return dot(u, matvec(metric, v)) if metric is not None else dot(u, v)

    out: list[Vec] = []
    for v in vectors:
        w = vec(v)
        for u in out:
            c = ip(u, w) / ip(u, u)
            w = [x - c * y for x, y in zip(w, u)]
        if any(x != 0 for x in w):
            out.append(w)
    return out


def clear_denominators(v: Sequence) -> list[int]:
    """Scale a rational vector to a primitive integer vector (gcd 1).

    The direction (sign) is preserved; the zero vector maps to itself.
    """
    fv = vec(v)
    if all(x == 0 for x in fv):
        return [0] * len(fv)
    denom = 1
    for x in fv:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fv]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]


def to_float_matrix(a: Mat):
    return [[float(x) for x in row] for row in a]
