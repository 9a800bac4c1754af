"""Exact integer lattice algebra: normal forms, summands, complements.

Lattices are subgroups of Z^N given by an integer basis matrix (N rows,
one column per generator).  The canonical representative of a lattice is
the column-style Hermite normal form of any basis, which makes equality
testing and deduplication trivial.  All arithmetic is exact big-integer /
rational; numpy only supplies float eigenvalue bounds for search boxes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, pi

import numpy as np

from . import ratmat
from .errors import (
    BoundTooLargeError,
    DimensionMismatchError,
    NotFullColumnRankError,
)
from .ratmat import Mat, frac
from .surd import square_free_part  # re-exported, spec places it here

__all__ = [
    "hnf",
    "snf",
    "cokernel_invariants",
    "integer_kernel",
    "IntLattice",
    "AbelianInvariants",
    "saturate",
    "dual_quotient",
    "covolume_squared",
    "orth_complement_int",
    "lattice_sum_intersection",
    "enumerate_summands",
    "count_rank1_subspaces",
    "square_free_part",
]

IntMat = list[list[int]]


def _as_int_matrix(m) -> IntMat:
    out = []
    for row in m:
        r = []
        for x in row:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError("integer matrix expected")
                x = x.numerator
            r.append(int(x))
        out.append(r)
    return out


def hnf(m) -> tuple[IntMat, IntMat]:
    """Column-style Hermite normal form: returns (H, U) with H = M @ U.

    H is lower echelon: pivot rows strictly increase per column, pivots are
    positive, and entries left of a pivot in its row lie in [0, pivot).
    Zero columns are pushed to the end.  U is unimodular.
    """
    h = _as_int_matrix(m)
    rows = len(h)
    cols = len(h[0]) if rows else 0
    u = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def col_op(j, k, a, b, c, d):
        # (col_j, col_k) <- (a*col_j + b*col_k, c*col_j + d*col_k)
        for mat_ in (h, u):
            for row in mat_:
                row[j], row[k] = a * row[j] + b * row[k], c * row[j] + d * row[k]

    pivot_col = 0
    for row in range(rows):
        if pivot_col == cols:
            break
        # gcd-eliminate this row across columns pivot_col..cols-1
        for j in range(pivot_col + 1, cols):
            if h[row][j] == 0:
                continue
            a, b = h[row][pivot_col], h[row][j]
            g, x, y = _xgcd(a, b)
            col_op(pivot_col, j, x, y, -(b // g), a // g)
        if h[row][pivot_col] == 0:
            continue
        if h[row][pivot_col] < 0:
            for mat_ in (h, u):
                for r in mat_:
                    r[pivot_col] = -r[pivot_col]
        piv = h[row][pivot_col]
        for j in range(pivot_col):
            q = h[row][j] // piv  # floor keeps residue in [0, piv)
            if q:
                for mat_ in (h, u):
                    for r in mat_:
                        r[j] -= q * r[pivot_col]
        pivot_col += 1
    return h, u


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, x, y with x*a + y*b = g = gcd(a, b) >= 0.

    When a divides b the result is (|a|, sign(a), 0); clearing loops rely
    on this so that exact reductions never mix the pivot row/column.
    """
    if a != 0 and b % a == 0:
        return (abs(a), 1 if a > 0 else -1, 0)
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def snf(m) -> tuple[IntMat, IntMat, IntMat]:
    """Smith normal form: (P, D, Q) with P @ M @ Q = D diagonal,
    P and Q unimodular, and each diagonal entry dividing the next."""
    d = _as_int_matrix(m)
    rows = len(d)
    cols = len(d[0]) if rows else 0
    p = [[int(i == j) for j in range(rows)] for i in range(rows)]
    q = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, k, a, b, c, e):
        for mat_ in (d, p):
            mat_[i], mat_[k] = (
                [a * x + b * y for x, y in zip(mat_[i], mat_[k])],
                [c * x + e * y for x, y in zip(mat_[i], mat_[k])],
            )

    def col_op(j, k, a, b, c, e):
        for mat_ in (d, q):
            for row in mat_:
                row[j], row[k] = a * row[j] + b * row[k], c * row[j] + e * row[k]

    def pick_pivot(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < best[0]):
                    best = (abs(d[i][j]), i, j)
        return best

    t = 0
    while True:
        best = pick_pivot(t)
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_op(t, i, 0, 1, 1, 0)
        if j != t:
            col_op(t, j, 0, 1, 1, 0)
        while True:
            done = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    g, x, y = _xgcd(d[t][t], d[i][t])
                    a, b = d[t][t] // g, d[i][t] // g
                    row_op(t, i, x, y, -b, a)
                    done = False
            for j in range(t + 1, cols):
                if d[t][j]:
                    g, x, y = _xgcd(d[t][t], d[t][j])
                    a, b = d[t][t] // g, d[t][j] // g
                    col_op(t, j, x, y, -b, a)
                    done = False
            if done:
                break
        # divisibility fix-up: fold any non-multiple entry into position t
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if d[i][j] % d[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, 1, 1, 0, 1)  # add offending row to row t
            continue
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            p[t] = [-x for x in p[t]]
        t += 1
        if t == min(rows, cols):
            break
    return p, d, q


def cokernel_invariants(m) -> list[int]:
    """Finite invariant factors of Z^rows / (column span of m).

    Returns the diagonal of the SNF including ones; raises if the quotient
    is infinite (column span not of full row rank).
    """
    mm = _as_int_matrix(m)
    rows = len(mm)
    _, d, _ = snf(mm)
    diag = [d[i][i] for i in range(min(rows, len(d[0]) if rows else 0))]
    if len(diag) < rows or any(x == 0 for x in diag):
        raise NotFullColumnRankError("cokernel is infinite")
    return diag


def integer_kernel(m) -> IntMat:
    """Columns forming a basis of ker(M) ∩ Z^cols; always saturated."""
    mm = _as_int_matrix(m)
    rows = len(mm)
    cols = len(mm[0]) if rows else 0
    if cols == 0:
        return [[] for _ in range(cols)]
    _, d, q = snf(mm)
    r = sum(
        1
        for i in range(min(rows, cols))
        if d[i][i] != 0
    )
    return [[q[i][j] for j in range(r, cols)] for i in range(cols)]


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factor list (k_1, ..., k_b) with k_i | k_{i+1}."""

    factors: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a != 0:
                raise ValueError(f"broken divisibility chain {self.factors}")
        if any(k <= 0 for k in self.factors):
            raise ValueError("invariant factors must be positive")

    @property
    def order(self) -> int:
        out = 1
        for k in self.factors:
            out *= k
        return out

    def nontrivial(self) -> tuple[int, ...]:
        return tuple(k for k in self.factors if k != 1)

    def __iter__(self):
        return iter(self.factors)


class IntLattice:
    """Subgroup of Z^N with a canonical HNF basis (columns)."""

    __slots__ = ("ambient_dim", "basis", "_is_summand")

    def __init__(self, ambient_dim: int, columns: list[list[int]] | None = None):
        self.ambient_dim = int(ambient_dim)
        cols = [list(map(int, c)) for c in (columns or [])]
        for c in cols:
            if len(c) != self.ambient_dim:
                raise DimensionMismatchError(
                    f"column length {len(c)} != ambient {self.ambient_dim}"
                )
        if cols:
            m = [[c[i] for c in cols] for i in range(self.ambient_dim)]
            h, _ = hnf(m)
            kept = [
                [h[i][j] for i in range(self.ambient_dim)]
                for j in range(len(cols))
                if any(h[i][j] for i in range(self.ambient_dim))
            ]
        else:
            kept = []
        self.basis = tuple(tuple(c) for c in kept)
        self._is_summand: bool | None = None

    # -- basics --------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> IntMat:
        """N x rank matrix with basis vectors as columns."""
        return [[c[i] for c in self.basis] for i in range(self.ambient_dim)]

    def key(self) -> tuple:
        return (self.ambient_dim, self.basis)

    def __eq__(self, other):
        return isinstance(other, IntLattice) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"IntLattice(dim={self.ambient_dim}, basis={self.basis})"

    def contains(self, v) -> bool:
        """Membership of an integer vector, solved exactly over Q then Z."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError("vector/lattice dimension mismatch")
        if self.rank == 0:
            return all(x == 0 for x in v)
        try:
            coeffs = ratmat.solve(
                ratmat.mat(self.basis_matrix()), [frac(x) for x in v]
            )
        except ValueError:
            return False
        return all(c.denominator == 1 for c in coeffs)

    def contains_lattice(self, other: "IntLattice") -> bool:
        return all(self.contains(list(c)) for c in other.basis)

    def gram(self, metric: Mat | None = None) -> Mat:
        cols = [ratmat.vec(c) for c in self.basis]
        return ratmat.gram(cols, metric)

    def is_summand(self) -> bool:
        """True iff Z^N / L is free, i.e. all SNF invariants are 1."""
        if self._is_summand is None:
            if self.rank == 0:
                self._is_summand = True
            else:
                _, d, _ = snf(self.basis_matrix())
                self._is_summand = all(
                    d[i][i] in (1, -1) for i in range(self.rank)
                )
        return self._is_summand


def saturate(lat: IntLattice) -> IntLattice:
    """L_Q ∩ Z^N: the smallest direct summand containing L."""
    if lat.rank == 0:
        return lat
    return orth_complement_int(orth_complement_int(lat))


def orth_complement_int(lat: IntLattice) -> IntLattice:
    """H^{perp_Z} = {x in Z^N : <x, H> = 0}; always a direct summand."""
    if lat.rank == 0:
        return IntLattice(
            lat.ambient_dim,
            [[int(i == j) for i in range(lat.ambient_dim)] for j in range(lat.ambient_dim)],
        )
    bt = [list(c) for c in lat.basis]  # rank x N, rows are basis vectors
    ker = integer_kernel(bt)
    cols = [[ker[i][j] for i in range(lat.ambient_dim)] for j in range(len(ker[0]) if ker else 0)]
    return IntLattice(lat.ambient_dim, cols)


def covolume_squared(lat: IntLattice, metric: Mat | None = None) -> Fraction:
    """det of the basis Gramm matrix; this is vol(H_R / H)^2.

    The empty lattice has covolume 1 by convention.
    """
    if lat.rank == 0:
        return Fraction(1)
    g = lat.gram(metric)
    d = ratmat.det(g)
    if d == 0:
        raise NotFullColumnRankError("degenerate lattice basis")
    return d


def dual_quotient(lat: IntLattice, metric: Mat | None = None) -> AbelianInvariants:
    """Invariant factors of H^# / H, from the SNF of the basis Gramm."""
    if lat.rank == 0:
        return AbelianInvariants(())
    g = lat.gram(metric)
    if ratmat.det(g) == 0:
        raise NotFullColumnRankError("degenerate lattice basis")
    gi = _as_int_matrix(g) if all(
        x.denominator == 1 for row in g for x in row
    ) else None
    if gi is None:
        raise ValueError("dual_quotient needs an integral Gramm matrix")
    return AbelianInvariants(tuple(cokernel_invariants(gi)))


def lattice_sum_intersection(
    l1: IntLattice, l2: IntLattice
) -> tuple[IntLattice, IntLattice, bool]:
    """(L1 + L2, L1 ∩ L2, commensurable).

    Commensurable means the rational spans agree (then the intersection
    automatically has full rank in both).
    """
    if l1.ambient_dim != l2.ambient_dim:
        raise DimensionMismatchError("ambient dimensions differ")
    n = l1.ambient_dim
    cols = [list(c) for c in l1.basis] + [list(c) for c in l2.basis]
    total = IntLattice(n, cols)
    # intersection: solve B1 x = B2 y via the integer kernel of [B1 | -B2]
    k1, k2 = l1.rank, l2.rank
    if k1 == 0 or k2 == 0:
        inter = IntLattice(n, [])
    else:
        m = [
            [l1.basis[j][i] for j in range(k1)] + [-l2.basis[j][i] for j in range(k2)]
            for i in range(n)
        ]
        ker = integer_kernel(m)
        ncols = len(ker[0]) if ker and ker[0:] else 0
        vecs = []
        for j in range(ncols):
            x = [ker[t][j] for t in range(k1)]
            v = [sum(l1.basis[t][i] * x[t] for t in range(k1)) for i in range(n)]
            vecs.append(v)
        inter = IntLattice(n, vecs)
    commensurable = l1.rank == l2.rank == total.rank
    return total, inter, commensurable


# -- summand enumeration ------------------------------------------------------

# Upper bounds for (2^k / omega_k)^2 in Minkowski's second theorem, used to
# budget the recursive search; any safe over-estimate keeps completeness.
def _minkowski_margin_sq(k: int) -> Fraction:
    omega = pi ** (k / 2)
    g = 1.0
    x = 1 + k / 2
    while x > 1:  # Gamma(1 + k/2) by the recurrence, x ends at 1 or 1/2
        x -= 1
        g *= x
    if abs(x - 0.5) < 1e-9:
        g *= pi ** 0.5
    omega /= g
    val = (2.0 ** k / omega) ** 2
    return Fraction(int(val * 1.05 * 1024) + 1, 1024)


def _quad_form(v: list[int], metric: Mat | None) -> Fraction:
    if metric is None:
        return Fraction(sum(x * x for x in v))
    return ratmat.dot(v, ratmat.matvec(metric, v))


def _short_vectors(n: int, bound: Fraction, metric: Mat | None) -> list[list[int]]:
    """Primitive integer vectors with quadratic norm <= bound, up to sign.

    Canonical representative: first nonzero coordinate positive.  Sorted by
    (norm, coordinates) for deterministic downstream output.  The box walk
    prunes on the smallest metric eigenvalue, then filters exactly.
    """
    if bound < 1:
        return []
    if metric is None:
        lam_min = 1.0
    else:
        eigs = np.linalg.eigvalsh(np.array(ratmat.to_float_matrix(metric)))
        lam_min = float(eigs[0]) * (1 - 1e-9)
        if lam_min <= 0:
            raise ValueError("metric must be positive definite")
    budget = float(bound) / lam_min * (1 + 1e-9)
    radius = isqrt(int(budget)) + 1
    out = []

    def walk(prefix: list[int], partial_sq: int):
        if len(prefix) == n:
            first = next((x for x in prefix if x != 0), 0)
            if first <= 0:
                return
            g = 0
            for x in prefix:
                g = gcd(g, x)
            if g != 1:
                return
            q = _quad_form(prefix, metric)
            if q <= bound:
                out.append((q, list(prefix)))
            return
        for x in range(-radius, radius + 1):
            s = partial_sq + x * x
            if s <= budget:
                walk(prefix + [x], s)

    walk([], 0)
    out.sort(key=lambda t: (t[0], t[1]))
    return [v for _, v in out]


def enumerate_summands(
    ambient_dim: int,
    rank: int,
    max_height_sq,
    metric: Mat | None = None,
    max_results: int = 20000,
) -> list[IntLattice]:
    """All direct summands of the given rank with vol(H_R/H)^2 <= bound.

    Works in Z^N with the standard metric, or in an abstract integral
    lattice whose Gramm matrix is supplied as ``metric``.  Rank-1 summands
    come from a primitive-vector scan; higher ranks extend rank-(k-1)
    summands by short vectors, with search budgets from Minkowski's second
    theorem, then deduplicate by HNF.  Deterministic output order:
    ascending (vol^2, basis).
    """
    bound = frac(max_height_sq)
    if rank < 0 or rank > ambient_dim:
        raise ValueError("rank out of range")
    if rank == 0:
        return [IntLattice(ambient_dim, [])]
    if metric is not None:
        for row in metric:
            for x in row:
                if frac(x).denominator != 1:
                    raise ValueError("enumeration requires an integral metric")
    if rank == ambient_dim:
        full = IntLattice(
            ambient_dim,
            [[int(i == j) for i in range(ambient_dim)] for j in range(ambient_dim)],
        )
        return [full] if covolume_squared(full, metric) <= bound else []
    if rank > ambient_dim - rank:
        # enumerate the cheaper complements: vol(H^perp)^2 <= vol(H)^2 det G
        det_g = ratmat.det(ratmat.mat(metric)) if metric is not None else Fraction(1)
        comps = enumerate_summands(
            ambient_dim,
            ambient_dim - rank,
            bound * det_g,
            metric,
            max_results=max_results * 4,
        )
        found = []
        seen_keys = set()
        for c in comps:
            h = _metric_complement(c, metric)
            if h.key() in seen_keys:
                continue
            seen_keys.add(h.key())
            if covolume_squared(h, metric) <= bound:
                found.append(h)
        found.sort(key=lambda L: (covolume_squared(L, metric), L.basis))
        if len(found) > max_results:
            raise BoundTooLargeError(f"more than {max_results} summands below the bound")
        return found
    if rank == 1:
        found = [
            IntLattice(ambient_dim, [v])
            for v in _short_vectors(ambient_dim, bound, metric)
        ]
    else:
        margin = _minkowski_margin_sq(rank)
        sub = enumerate_summands(
            ambient_dim, rank - 1, bound * margin, metric, max_results=max_results * 4
        )
        shorts = _short_vectors(ambient_dim, bound * margin, metric)
        # a summand is determined by its rational span; dedupe candidate
        # spans by normalized Plucker minors before the expensive saturation
        seen_spans: set[tuple] = set()
        found = []
        for s in sub:
            base_rows = [list(c) for c in s.basis]
            for v in shorts:
                key = _span_key(base_rows + [v])
                if key is None or key in seen_spans:
                    continue
                seen_spans.add(key)
                cand = saturate(IntLattice(ambient_dim, base_rows + [v]))
                if covolume_squared(cand, metric) <= bound:
                    found.append(cand)
                if len(found) > max_results:
                    raise BoundTooLargeError(
                        f"more than {max_results} summands below the bound"
                    )
    if len(found) > max_results:
        raise BoundTooLargeError(f"more than {max_results} summands below the bound")
    found.sort(key=lambda L: (covolume_squared(L, metric), L.basis))
    return found


def _metric_complement(lat: IntLattice, metric: Mat | None) -> IntLattice:
    """{y in Z^N : y^t G x = 0 for x in lat}; the G-orthogonal complement."""
    if metric is None:
        return orth_complement_int(lat)
    rows = [
        ratmat.clear_denominators(ratmat.matvec(ratmat.mat(metric), list(c)))
        for c in lat.basis
    ]
    ker = integer_kernel(rows)
    ncols = len(ker[0]) if ker and ker[0] else 0
    return IntLattice(
        lat.ambient_dim,
        [[ker[i][j] for i in range(lat.ambient_dim)] for j in range(ncols)],
    )


def _int_det(m: list[list[int]]) -> int:
    k = len(m)
    if k == 1:
        return m[0][0]
    if k == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(k):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _int_det(minor)
    return total


def _span_key(vectors: list[list[int]]):
    """Normalized Plucker coordinates of the row span, or None if the rows
    are dependent.  Equal keys <=> equal rational spans."""
    from itertools import combinations

    k = len(vectors)
    n = len(vectors[0])
    minors = [
        _int_det([[vectors[i][c] for c in cols] for i in range(k)])
        for cols in combinations(range(n), k)
    ]
    g = 0
    for x in minors:
        g = gcd(g, x)
    if g == 0:
        return None
    first = next(x for x in minors if x)
    if first < 0:
        g = -g
    return tuple(x // g for x in minors)


def _mobius_sieve(n: int) -> list[int]:
    mu = [1] * (n + 1)
    primes = []
    is_comp = [False] * (n + 1)
    for i in range(2, n + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            if i * p > n:
                break
            is_comp[i * p] = True
            if i % p == 0:
                mu[i * p] = 0
                break
            mu[i * p] = -mu[i]
    return mu


def _ball_points(n_dim: int, r_sq: int) -> int:
    """Number of integer points with |v|^2 <= r_sq, including the origin."""
    if r_sq < 0:
        return 0
    r = isqrt(r_sq)
    if n_dim == 1:
        return 2 * r + 1
    if n_dim == 2:
        return sum(2 * isqrt(r_sq - x * x) + 1 for x in range(-r, r + 1))
    if n_dim == 3:
        total = 0
        for x in range(-r, r + 1):
            rem = r_sq - x * x
            s = isqrt(rem)
            total += sum(2 * isqrt(rem - y * y) + 1 for y in range(-s, s + 1))
        return total
    raise ValueError("ball counting implemented for N <= 3")


def count_rank1_subspaces(ambient_dim: int, max_height: int) -> int:
    """|{W in Gr_1(Q^N) : h(W) <= max_height}| by a Moebius-inverted count.

    Counts primitive integer vectors with |v| <= max_height up to sign.
    Exact, and fast enough for max_height = 1000 at N = 2, 3.
    """
    h = int(max_height)
    mu = _mobius_sieve(max(h, 1))
    total = 0
    for m in range(1, h + 1):
        if mu[m] == 0:
            continue
        total += mu[m] * (_ball_points(ambient_dim, (h * h) // (m * m)) - 1)
    return total // 2
