"""Frames in d-space with exact arithmetic.

A frame is N vectors spanning R^d.  Exact frames hold every entry as a
SurdSum (rational multiple of a square root); the frames built here all
have per-column surd structure entry(j,k) = num_jk / (m_k sqrt(D_k)),
which keeps Gramm matrices rational.  Frames whose entries cannot be
expressed that way (regular N-gons for N not in {3,4,6}) fall back to a
float representation flagged `approximate`, with tolerance-based tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import ratmat
from .errors import (
    BadParametersError,
    DimensionMismatchError,
    NotAFrameError,
    NotASummandError,
    NotCrystallographicError,
    NotPythagoreanError,
    RankMismatchError,
    SizeTooLargeError,
)
from .exact_lattice import IntLattice, covolume_squared, hnf, integer_kernel
from .ratmat import frac
from .surd import SurdSum, square_free_part

FLOAT_TOL = 1e-9


class Frame:
    """N vectors in R^d; exact (SurdSum entries) or approximate (floats)."""

    def __init__(self, entries=None, float_rows=None):
        if (entries is None) == (float_rows is None):
            raise ValueError("provide exactly one of entries / float_rows")
        if entries is not None:
            self.entries = tuple(
                tuple(e if isinstance(e, SurdSum) else SurdSum.of(e) for e in row)
                for row in entries
            )
            self.float_rows = None
        else:
            self.entries = None
            self.float_rows = tuple(tuple(float(x) for x in row) for row in float_rows)
        rows = self.entries if entries is not None else self.float_rows
        self.size = len(rows)
        self.dim = len(rows[0]) if rows else 0
        self._column_form = _UNSET
        self._gram = None

    # -- basic views ----------------------------------------------------------

    @property
    def approximate(self) -> bool:
        return self.entries is None

    def float_matrix(self) -> list[list[float]]:
        if self.approximate:
            return [list(r) for r in self.float_rows]
        return [[float(x) for x in row] for row in self.entries]

    def vectors(self):
        return self.entries if not self.approximate else self.float_rows

    def norm_sq(self, i: int) -> SurdSum:
        row = self.entries[i]
        return sum((x * x for x in row), SurdSum())

    def gram(self):
        """N x N Gramm matrix: SurdSum entries (exact) or floats."""
        if self._gram is None:
            if self.approximate:
                m = np.array(self.float_rows)
                self._gram = (m @ m.T).tolist()
            else:
                self._gram = [
                    [
                        sum((a * b for a, b in zip(ri, rj)), SurdSum())
                        for rj in self.entries
                    ]
                    for ri in self.entries
                ]
        return self._gram

    def column_form(self):
        """Per-column surd data [(nums, m, D)] with entry = num/(m sqrt(D)),
        or None when some column mixes distinct surds."""
        if self._column_form is _UNSET:
            self._column_form = self._compute_column_form()
        return self._column_form

    def _compute_column_form(self):
        if self.approximate:
            return None
        cols = []
        for k in range(self.dim):
            column = [self.entries[j][k] for j in range(self.size)]
            d_val = None
            rationals = []
            for x in column:
                if x.is_zero():
                    rationals.append(Fraction(0))
                    continue
                st = x.single_term()
                if st is None:
                    return None
                coeff, d = st
                if d_val is None:
                    d_val = d
                elif d != d_val:
                    return None
                rationals.append(coeff)
            if d_val is None:
                d_val = 1
            # entry = coeff*sqrt(D) = (coeff*D)/sqrt(D); normalize numerators
            nums_frac = [c * d_val for c in rationals]
            denom = 1
            for x in nums_frac:
                denom = denom * x.denominator // _gcd(denom, x.denominator)
            nums = [int(x * denom) for x in nums_frac]
            cols.append((nums, Fraction(denom), d_val))
        return cols

    def apply_linear(self, matrix) -> "Frame":
        """Left-multiply every frame vector by a d x d matrix (rational or
        SurdSum entries); returns a new exact frame."""
        if self.approximate:
            raise NotAFrameError("apply_linear needs an exact frame")
        m = [
            [x if isinstance(x, SurdSum) else SurdSum.of(frac(x)) for x in row]
            for row in matrix
        ]
        new_rows = []
        for row in self.entries:
            new_rows.append(
                tuple(
                    sum((m[i][k] * row[k] for k in range(self.dim)), SurdSum())
                    for i in range(self.dim)
                )
            )
        return Frame(entries=new_rows)

    def scale_vector(self, index: int, factor) -> "Frame":
        """Scale one frame vector by a rational factor (test helper)."""
        rows = [list(r) for r in self.entries]
        rows[index] = [x * frac(factor) for x in rows[index]]
        return Frame(entries=rows)

    def __repr__(self):
        kind = "approx" if self.approximate else "exact"
        return f"Frame(N={self.size}, d={self.dim}, {kind})"


class _Unset:
    pass


_UNSET = _Unset()


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


def frame_from_columns(nums_matrix, col_surds) -> Frame:
    """Build an exact frame from integer numerators and per-column (m, D)."""
    n = len(nums_matrix)
    d = len(col_surds)
    rows = []
    for j in range(n):
        row = []
        for k in range(d):
            m, dd = col_surds[k]
            # num/(m sqrt(D)) = (num/(m D)) * sqrt(D)
            row.append(SurdSum({dd: frac(nums_matrix[j][k]) / (frac(m) * dd)}))
        rows.append(row)
    return Frame(entries=rows)


def frame_from_rational(rows) -> Frame:
    return Frame(entries=[[SurdSum.of(frac(x)) for x in row] for row in rows])


# -- rank over the surd field ---------------------------------------------------

def surd_rank(rows: list[list[SurdSum]]) -> int:
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if not m[i][col].is_zero()), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = m[rank][col].inverse()
        m[rank] = [x * inv for x in m[rank]]
        for i in range(nrows):
            if i != rank and not m[i][col].is_zero():
                c = m[i][col]
                m[i] = [x - c * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


# -- frame operator, tightness, Naimark ------------------------------------------

@dataclass
class FrameOperatorData:
    S: list                       # d x d, SurdSum (exact) or float entries
    gram: list                    # N x N
    tight_constant: object        # Fraction | float | None
    is_exact: bool


def frame_operator(f: Frame) -> FrameOperatorData:
    if f.approximate:
        m = np.array(f.float_rows)
        s = m.T @ m
        if np.linalg.matrix_rank(m, tol=FLOAT_TOL) < f.dim:
            raise NotAFrameError("rows do not span R^d")
        alpha = None
        diag = np.diag(s)
        if np.allclose(s, np.eye(f.dim) * diag[0], atol=FLOAT_TOL) and diag[0] > 0:
            alpha = float(diag[0])
        return FrameOperatorData(s.tolist(), f.gram(), alpha, False)
    if surd_rank([list(r) for r in f.entries]) < f.dim:
        raise NotAFrameError("rows do not span R^d")
    d = f.dim
    s = [
        [
            sum((row[i] * row[j] for row in f.entries), SurdSum())
            for j in range(d)
        ]
        for i in range(d)
    ]
    alpha = None
    off_zero = all(s[i][j].is_zero() for i in range(d) for j in range(d) if i != j)
    if off_zero and all(s[i][i] == s[0][0] for i in range(d)) and s[0][0].is_rational():
        val = s[0][0].rational_value()
        if val > 0:
            alpha = val
    return FrameOperatorData(s, f.gram(), alpha, True)


def is_tight(f: Frame):
    """The tight constant alpha with S = alpha I, or None."""
    data = frame_operator(f)
    if data.tight_constant is not None and data.is_exact:
        if data.tight_constant == 1:
            total = sum((f.norm_sq(i) for i in range(f.size)), SurdSum())
            assert total == SurdSum.of(f.dim), "trace identity violated"
    return data.tight_constant


def naimark_check(f: Frame) -> bool:
    """G^2 = G and rank G = d; equivalent to 1-tightness."""
    if f.approximate:
        g = np.array(f.gram())
        return bool(
            np.allclose(g @ g, g, atol=FLOAT_TOL)
            and np.linalg.matrix_rank(g, tol=FLOAT_TOL) == f.dim
        )
    g = f.gram()
    n = f.size
    for i in range(n):
        for j in range(n):
            acc = sum((g[i][k] * g[k][j] for k in range(n)), SurdSum())
            if acc != g[i][j]:
                return False
    return surd_rank([list(r) for r in g]) == f.dim


def congruent(f1: Frame, f2: Frame) -> bool:
    if (f1.size, f1.dim) != (f2.size, f2.dim):
        raise DimensionMismatchError("frames of different size or dimension")
    if f1.approximate or f2.approximate:
        g1 = np.array([[float(x) for x in row] for row in f1.gram()])
        g2 = np.array([[float(x) for x in row] for row in f2.gram()])
        return bool(np.allclose(g1, g2, atol=FLOAT_TOL))
    g1, g2 = f1.gram(), f2.gram()
    return all(g1[i][j] == g2[i][j] for i in range(f1.size) for j in range(f1.size))


# -- crystallographic structure ---------------------------------------------------

def is_crystallographic(f: Frame) -> bool:
    """Essential rationality of the Gramm matrix.

    Exact frames: every nonzero entry must be a single term q*sqrt(D) with
    one common D.  Approximate frames: rational reconstruction of entry
    ratios at tolerance 1e-12 with denominators <= 10^4 (quadratic
    irrationals are separated by ~1e-9 at that denominator scale).
    """
    if not f.approximate:
        common_d = None
        for row in f.gram():
            for x in row:
                if x.is_zero():
                    continue
                st = x.single_term()
                if st is None:
                    return False
                _, d = st
                if common_d is None:
                    common_d = d
                elif d != common_d:
                    return False
        return True
    g = [x for row in f.gram() for x in row]
    ref = next((x for x in g if abs(x) > FLOAT_TOL), None)
    if ref is None:
        return False
    for x in g:
        ratio = x / ref
        num, den = _rational_reconstruct(ratio, 10**4)
        if num is None or abs(ratio - num / den) > 1e-12:
            return False
    return True


def _rational_reconstruct(x: float, max_den: int):
    """Best continued-fraction approximation with bounded denominator."""
    f = Fraction(x).limit_denominator(max_den)
    return f.numerator, f.denominator


def vanishing_group(f: Frame) -> IntLattice:
    """H(S) = integer kernel of the frame projection, a direct summand."""
    if f.approximate:
        raise NotCrystallographicError("vanishing group needs an exact frame")
    if not is_crystallographic(f):
        raise NotCrystallographicError("frame is not crystallographic")
    rows = []
    for k in range(f.dim):
        surds = sorted(
            {d for j in range(f.size) for d in f.entries[j][k].terms}
        )
        for dd in surds:
            rows.append(
                [f.entries[j][k].terms.get(dd, Fraction(0)) for j in range(f.size)]
            )
    int_rows = [ratmat.clear_denominators(r) for r in rows]
    ker = integer_kernel(int_rows) if int_rows else []
    ncols = len(ker[0]) if ker and ker[0:] and ker[0] else 0
    cols = [[ker[i][j] for i in range(f.size)] for j in range(ncols)]
    return IntLattice(f.size, cols)


def frame_from_summand(h: IntLattice, n: int, d: int) -> Frame:
    """The unique crystallographic 1-tight frame with vanishing group h.

    Construction: a rational basis of the orthogonal complement of h is
    orthogonalized (deterministically, in RREF kernel order), scaled to
    primitive integer vectors n_i with |n_i|^2 = m_i^2 D_i, and the frame
    vectors are the rows of the column matrix (n_i / (m_i sqrt(D_i))).
    """
    if h.ambient_dim != n:
        raise DimensionMismatchError("summand lives in a different Z^N")
    if not h.is_summand():
        raise NotASummandError("lattice is not a direct summand")
    if h.rank != n - d:
        raise RankMismatchError(f"rank {h.rank} != N - d = {n - d}")
    if h.rank == 0:
        basis = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    else:
        rows = [list(c) for c in h.basis]      # rank x N constraint matrix
        basis = ratmat.rational_kernel(rows)
    cols = []
    surds = []
    for v in basis:
        w = ratmat.vec(v)
        for prev in cols:  # subtract projections onto the integer vectors so far
            c = ratmat.dot(prev, w) * Fraction(1, sum(x * x for x in prev))
            w = [x - c * y for x, y in zip(w, prev)]
        nvec = ratmat.clear_denominators(w)  # keeps numbers small step by step
        norm_sq = sum(x * x for x in nvec)
        dd, m = square_free_part(norm_sq)
        cols.append(nvec)
        surds.append((m, dd))
    nums = [[cols[k][j] for k in range(d)] for j in range(n)]
    return frame_from_columns(nums, surds)


def frame_period_covol_sq(f: Frame) -> Fraction:
    """vol(R^d / L_S)^2 for the lattice generated by the frame vectors.

    Needs per-column surd structure: scaling axis k by m_k sqrt(D_k) turns
    the frame vectors into integer vectors whose HNF gives the covolume.
    """
    cf = f.column_form()
    if cf is None:
        raise NotCrystallographicError("no per-column surd structure")
    d = f.dim
    cols_scaled = [
        [cf[k][0][j] for j in range(f.size)] for k in range(d)
    ]  # nums per column
    # lattice generated by the N scaled vectors, as columns of a d x N matrix
    m = [[cols_scaled[k][j] for j in range(f.size)] for k in range(d)]
    h, _ = hnf(m)
    cols = [
        [h[i][j] for i in range(d)]
        for j in range(f.size)
        if any(h[i][j] for i in range(d))
    ]
    if len(cols) < d:
        raise NotAFrameError("frame vectors do not generate a full lattice")
    basis = [[cols[j][i] for j in range(d)] for i in range(d)]
    det = ratmat.det(ratmat.mat(basis))
    scale = Fraction(1)
    for nums, m_k, d_k in cf:
        scale *= frac(m_k) ** 2 * d_k
    return det * det / scale


@dataclass
class EnergyGap:
    sum_norms_sq: Fraction        # lhs of the minimal principle
    bound_power_d: Fraction       # d^d * vol(R^d/L)^2 * h^2  (rhs^d)
    equality: bool


def minimal_energy_gap(f: Frame) -> EnergyGap:
    """Both sides of  sum |v_i|^2 >= d (vol^2 h^2)^{1/d}, powers cleared.

    Equality holds exactly when the frame is tight.
    """
    if f.approximate:
        raise NotCrystallographicError("minimal principle needs an exact frame")
    if not is_crystallographic(f):
        raise NotCrystallographicError("frame is not crystallographic")
    total = sum((f.norm_sq(i) for i in range(f.size)), SurdSum())
    if not total.is_rational():
        raise NotCrystallographicError("irrational total norm")
    lhs = total.rational_value()
    vol_sq = frame_period_covol_sq(f)
    h = vanishing_group(f)
    h_sq = covolume_squared(h) if h.rank else Fraction(1)
    d = f.dim
    rhs_power = Fraction(d) ** d * vol_sq * h_sq
    equality = lhs ** d == rhs_power
    assert lhs ** d >= rhs_power, "minimal principle violated"
    return EnergyGap(lhs, rhs_power, equality)


def join(f1: Frame, f2: Frame) -> Frame:
    """Concatenate two frames of the same dimension."""
    if f1.dim != f2.dim:
        raise DimensionMismatchError("joined frames must share the dimension")
    if f1.approximate or f2.approximate:
        return Frame(float_rows=list(f1.float_matrix()) + list(f2.float_matrix()))
    return Frame(entries=list(f1.entries) + list(f2.entries))


# -- the catalog ------------------------------------------------------------------

def regular_polygon(n: int) -> Frame:
    """Vertices of the regular N-gon scaled to a 1-tight frame.

    N = 3, 4, 6 are exact (the crystallographic cases); other N fall back
    to the float representation.
    """
    if n < 3:
        raise BadParametersError("polygon needs N >= 3")
    if n == 3:
        return frame_from_columns(
            [[2, 0], [-1, 1], [-1, -1]], [(1, 6), (1, 2)]
        )
    if n == 4:
        return frame_from_columns(
            [[1, 0], [0, 1], [-1, 0], [0, -1]], [(1, 2), (1, 2)]
        )
    if n == 6:
        return frame_from_columns(
            [[2, 0], [1, 1], [-1, 1], [-2, 0], [-1, -1], [1, -1]],
            [(2, 3), (2, 1)],
        )
    import math

    s = math.sqrt(2.0 / n)
    rows = [
        (s * math.cos(2 * math.pi * k / n), s * math.sin(2 * math.pi * k / n))
        for k in range(n)
    ]
    return Frame(float_rows=rows)


def simplex_frame(d: int) -> Frame:
    """The equilateral-simplex frame: d+1 vectors, Gramm = I - J/(d+1)."""
    if d < 1:
        raise BadParametersError("simplex needs d >= 1")
    return frame_from_summand(IntLattice(d + 1, [[1] * (d + 1)]), d + 1, d)


def root_system_frame(family: str, rank: int, positive_only: bool = True) -> Frame:
    """Positive roots of the classical families in standard coordinates.

    A_d is realized inside R^d through the simplex frame (the sum-zero
    hyperplane model re-expressed); B/C/D use the usual +-e_i +- e_j
    coordinates.  With positive_only=False the full root system is
    returned (positives first, then their negatives).
    """
    family = family.upper()
    rows: list[list] = []
    if family == "A":
        if rank < 1:
            raise BadParametersError("A_d needs d >= 1")
        simplex = simplex_frame(rank)
        u = [list(r) for r in simplex.entries]
        for i in range(rank + 1):
            for j in range(i + 1, rank + 1):
                rows.append([a - b for a, b in zip(u[i], u[j])])
        frame = Frame(entries=rows)
    elif family in ("B", "C", "D"):
        minimum = {"B": 2, "C": 3, "D": 4}[family]
        if rank < minimum:
            raise BadParametersError(f"{family}_d needs d >= {minimum}")
        for i in range(rank):
            for j in range(i + 1, rank):
                for sign in (+1, -1):
                    v = [0] * rank
                    v[i] = 1
                    v[j] = sign
                    rows.append(v)
        if family == "B":
            for i in range(rank):
                v = [0] * rank
                v[i] = 1
                rows.append(v)
        elif family == "C":
            for i in range(rank):
                v = [0] * rank
                v[i] = 2
                rows.append(v)
        frame = frame_from_rational(rows)
    elif family == "G2":
        # alpha = (1, 0), beta = (-3/2, sqrt(3)/2); positives are
        # alpha, beta, alpha+beta, 2alpha+beta, 3alpha+beta, 3alpha+2beta
        col1 = [1, Fraction(-3, 2), Fraction(-1, 2), Fraction(1, 2), Fraction(3, 2), 0]
        col2 = [0, 1, 1, 1, 1, 2]  # in units of sqrt(3)/2
        rows = [
            [SurdSum.of(a), SurdSum({3: Fraction(b, 2)})] for a, b in zip(col1, col2)
        ]
        frame = Frame(entries=rows)
    else:
        raise BadParametersError(f"unknown family {family!r}")
    if not positive_only:
        neg = [[-x for x in row] for row in frame.entries]
        frame = Frame(entries=list(frame.entries) + neg)
    return frame


def pythagorean_frame(x: int, y: int, z: int) -> Frame:
    """The 4-vector frame (e1, (x/z, y/z), e2, (-y/z, x/z))."""
    _check_pythagorean(x, y, z)
    rows = [
        [1, 0],
        [Fraction(x, z), Fraction(y, z)],
        [0, 1],
        [Fraction(-y, z), Fraction(x, z)],
    ]
    return frame_from_rational(rows)


def _check_pythagorean(x: int, y: int, z: int):
    from math import gcd

    if x * x + y * y != z * z or x <= 0 or y <= 0 or z <= 0:
        raise NotPythagoreanError(f"({x},{y},{z}) is not a Pythagorean triple")
    if gcd(gcd(x, y), z) != 1:
        raise NotPythagoreanError(f"({x},{y},{z}) is not primitive")


def platonic_frame(name: str) -> Frame:
    """1-tight frames from the crystallographic Platonic solids."""
    if name == "tetrahedron":
        return simplex_frame(3)
    if name == "octahedron":
        rows = []
        for sign in (+1, -1):
            for i in range(3):
                v = [0] * 3
                v[i] = sign
                rows.append(v)
        return frame_from_columns(rows, [(1, 2), (1, 2), (1, 2)])
    if name == "cube":
        rows = [
            [sx, sy, sz]
            for sx in (+1, -1)
            for sy in (+1, -1)
            for sz in (+1, -1)
        ]
        return frame_from_columns(rows, [(2, 2), (2, 2), (2, 2)])
    raise BadParametersError(f"unknown platonic solid {name!r}")


def catalog_frame(name: str, *params) -> Frame:
    """Dispatch by catalog name; see the individual constructors."""
    try:
        if name == "regular_polygon":
            return regular_polygon(int(params[0]))
        if name == "simplex":
            return simplex_frame(int(params[0]))
        if name == "root_system":
            family = str(params[0])
            if family.upper() == "G2":
                return root_system_frame("G2", 2)
            return root_system_frame(family, int(params[1]))
        if name == "pythagorean":
            return pythagorean_frame(int(params[0]), int(params[1]), int(params[2]))
        if name in ("tetrahedron", "cube", "octahedron"):
            return platonic_frame(name)
    except IndexError:
        raise BadParametersError(f"missing parameters for {name!r}") from None
    raise BadParametersError(f"unknown catalog frame {name!r}")


# -- wire format --------------------------------------------------------------------

def frame_to_json(f: Frame) -> str:
    """{dim, size, columns: [{D, m, entries: ["p/q", ...]}, ...]}.

    Only frames with per-column surd structure serialize exactly; others
    raise (the interchange format covers the crystallographic catalog).
    """
    import json

    cf = f.column_form()
    if cf is None:
        raise NotCrystallographicError("frame has no per-column surd structure")
    return json.dumps(
        {
            "dim": f.dim,
            "size": f.size,
            "columns": [
                {"D": d, "m": str(m), "entries": [str(frac(x)) for x in nums]}
                for nums, m, d in cf
            ],
        },
        sort_keys=True,
    )


def frame_from_json(text: str) -> Frame:
    import json

    data = json.loads(text)
    unknown = set(data) - {"dim", "size", "columns"}
    if unknown:
        raise BadParametersError(f"unknown fields {sorted(unknown)}")
    cols = data["columns"]
    if len(cols) != data["dim"]:
        raise BadParametersError("column count does not match dim")
    nums = [
        [Fraction(col["entries"][j]) for col in cols] for j in range(data["size"])
    ]
    surds = [(Fraction(col["m"]), int(col["D"])) for col in cols]
    return frame_from_columns(nums, surds)


# -- automorphisms -----------------------------------------------------------------

def automorphism_group(f: Frame, max_size: int = 8):
    """Permutations preserving the Gramm matrix, with isotropy flags.

    For the 1-tight frames this is exactly the stabilizer of the vanishing
    subspace.  Brute force over S_N, guarded by max_size.
    """
    if f.size > max_size:
        raise SizeTooLargeError(f"N = {f.size} exceeds bound {max_size}")
    if f.approximate:
        raise NotCrystallographicError("automorphism scan needs an exact frame")
    if is_tight(f) != 1:
        raise NotAFrameError("automorphism scan is defined for 1-tight frames")
    g = f.gram()
    n = f.size
    perms = []
    for sigma in itertools.permutations(range(n)):
        ok = True
        for i in range(n):
            for j in range(i, n):
                if g[sigma[i]][sigma[j]] != g[i][j]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            perms.append(sigma)
    orbit = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for sigma in perms:
            j = sigma[i]
            if j not in orbit:
                orbit.add(j)
                frontier.append(j)
    is_isotropic = len(orbit) == n
    import math

    is_strongly = len(perms) == math.factorial(n)
    return perms, is_isotropic, is_strongly
