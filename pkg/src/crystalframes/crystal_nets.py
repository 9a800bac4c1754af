"""Harmonic and standard realizations of topological crystals.

A topological crystal over a base graph is selected by a vanishing
summand H of the integer 1-homology lattice; the standard realization
projects the canonical harmonic cochain onto the orthogonal complement of
H.  All load-bearing quantities (bond Gramm matrices, period Gramm, energy
ingredients, quadric points) are exact: coordinates are rationals r_i
along axes scaled by 1/sqrt(q_i), with rational q_i from an exact
Gram-Schmidt in homology coordinates.  Floats appear only in patch
embeddings and eigenvalue ratios.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import ratmat
from .diophantine import SurdComplex
from .errors import (
    ClassKillsWrongSubgroupError,
    DegeneratePeriodLatticeError,
    ForceNotBalancedError,
    NotASummandError,
    NotPrimitiveError,
    NotTwoDimensionalError,
)
from .exact_lattice import IntLattice, covolume_squared
from .graph_core import FiniteGraph, HomologyBasis, homology_basis
from .graph_jacobian import tree_number
from .named_graphs import bouquet
from .ratmat import frac
from .surd import square_free_part

FLOAT_TOL = 1e-9


@dataclass
class VanishingSummand:
    """A direct summand H of the homology lattice, in cycle coordinates."""

    graph: FiniteGraph
    lattice: IntLattice
    basis: HomologyBasis

    @classmethod
    def make(cls, graph: FiniteGraph, columns, basis: HomologyBasis | None = None):
        hb = basis or homology_basis(graph)
        lat = IntLattice(hb.b1, columns)
        if not lat.is_summand():
            raise NotASummandError("vanishing subgroup must be a direct summand")
        if hb.b1 - lat.rank < 1:
            raise NotASummandError("crystal dimension would be zero")
        return cls(graph, lat, hb)

    @property
    def d(self) -> int:
        return self.basis.b1 - self.lattice.rank

    def height_sq(self) -> Fraction:
        """vol(H_R/H)^2 in the homology inner product."""
        if self.lattice.rank == 0:
            return Fraction(1)
        return covolume_squared(self.lattice, ratmat.mat(self.basis.gram))


@dataclass
class BuildingCochain:
    """Edge vectors of a periodic realization, in exact coordinates.

    With diagonal scales the Euclidean vector of forward edge e is
    (coords[e][i] / sqrt(q_i))_i; reversed edges carry the negated vector.
    A full rational metric matrix replaces the scales for cochains kept in
    non-orthogonal coordinates (the homology cochain v0).
    """

    graph: FiniteGraph
    d: int
    coords: dict
    axis_scales_sq: tuple
    metric: tuple | None = None   # full Gramm of the coordinate basis

    def vector(self, idx: int) -> tuple:
        return self.coords[idx]

    def bond_inner(self, e1: int, e2: int) -> Fraction:
        if self.metric is not None:
            row = ratmat.matvec(
                ratmat.mat([list(r) for r in self.metric]), list(self.coords[e2])
            )
            return ratmat.dot(list(self.coords[e1]), row)
        return sum(
            a * b / q
            for a, b, q in zip(self.coords[e1], self.coords[e2], self.axis_scales_sq)
        )

    def bond_gram(self):
        n = self.graph.n_edges
        return [[self.bond_inner(i, j) for j in range(n)] for i in range(n)]

    def resultant_force(self) -> dict:
        """f(x) = sum of edge vectors leaving x (exact coordinates)."""
        out = {}
        for x in range(self.graph.vertex_count):
            acc = [Fraction(0)] * self.d
            for idx, sign in self.graph.out_edges[x]:
                for i in range(self.d):
                    acc[i] += sign * self.coords[idx][i]
            out[x] = tuple(acc)
        return out

    def is_harmonic(self) -> bool:
        return all(
            all(c == 0 for c in f) for f in self.resultant_force().values()
        )

    def tight_core(self):
        """M with M[i][j] = sum_e r_i r_j over the orientation."""
        d = self.d
        m = [[Fraction(0)] * d for _ in range(d)]
        for r in self.coords.values():
            for i in range(d):
                for j in range(d):
                    m[i][j] += r[i] * r[j]
        return m

    def tight_constant(self):
        """alpha with sum_{E^o} <y, v(e)> v(e) = alpha y, or None (exact).

        Diagonal scales: M = alpha diag(q).  Full metric A: M A = alpha I.
        """
        m = self.tight_core()
        d = self.d
        if self.metric is not None:
            ma = ratmat.matmul(
                ratmat.mat(m), ratmat.mat([list(r) for r in self.metric])
            )
            alpha = ma[0][0]
            ok = all(
                ma[i][j] == (alpha if i == j else 0)
                for i in range(d)
                for j in range(d)
            )
            return alpha if ok and alpha > 0 else None
        q = self.axis_scales_sq
        alpha = m[0][0] / q[0]
        for i in range(d):
            for j in range(d):
                if i == j:
                    if m[i][i] != alpha * q[i]:
                        return None
                elif m[i][j] != 0:
                    return None
        return alpha if alpha > 0 else None


@dataclass
class Realization:
    """A building cochain with period lattice data and pinned positions."""

    summand: VanishingSummand
    cochain: BuildingCochain
    period_coords: tuple       # d generators, coordinates like the cochain's
    positions: dict            # vertex -> exact coordinate tuple, root at 0
    is_standard: bool = False

    @property
    def graph(self) -> FiniteGraph:
        return self.summand.graph

    @property
    def d(self) -> int:
        return self.cochain.d

    def period_gram(self):
        q = self.cochain.axis_scales_sq
        d = self.d
        return [
            [
                sum(a * b / qq for a, b, qq in zip(gi, gj, q))
                for gj in self.period_coords
            ]
            for gi in self.period_coords
        ]

    def vol_sq(self) -> Fraction:
        return ratmat.det(ratmat.mat(self.period_gram()))

    def axis_floats(self):
        return [1.0 / math.sqrt(float(q)) for q in self.cochain.axis_scales_sq]

    def position_float(self, vertex: int, offset=None):
        s = self.axis_floats()
        base = [float(c) * s[i] for i, c in enumerate(self.positions[vertex])]
        if offset:
            gens = self.period_float()
            for j, k in enumerate(offset):
                for i in range(self.d):
                    base[i] += k * gens[j][i]
        return tuple(base)

    def period_float(self):
        s = self.axis_floats()
        return [
            tuple(float(c) * s[i] for i, c in enumerate(g)) for g in self.period_coords
        ]

    def edge_shift(self, idx: int) -> tuple:
        """Lattice offset of the head copy reached by forward edge idx."""
        e = self.graph.edges[idx]
        w = [
            self.positions[e.tail][i] + self.cochain.coords[idx][i]
            - self.positions[e.head][i]
            for i in range(self.d)
        ]
        mat = [[self.period_coords[j][i] for j in range(self.d)] for i in range(self.d)]
        sol = ratmat.solve(mat, w)
        shift = []
        for x in sol:
            if x.denominator != 1:
                raise DegeneratePeriodLatticeError("edge shift is not integral")
            shift.append(int(x))
        return tuple(shift)


def harmonic_cochain_v0(g: FiniteGraph, basis: HomologyBasis | None = None) -> BuildingCochain:
    """The projection of each forward edge onto real homology, exactly.

    Coordinates are in the cycle basis; the Gramm matrix of the basis is
    the metric, so this cochain is returned with axis scales all 1 and a
    separate helper below for its exact bond Gramm.
    """
    hb = basis or homology_basis(g)
    gram_inv = ratmat.inverse(ratmat.mat(hb.gram)) if hb.b1 else []
    coords = {}
    for idx in range(g.n_edges):
        b = [c.coeffs.get(idx, Fraction(0)) for c in hb.cycles]
        coords[idx] = tuple(ratmat.matvec(gram_inv, b)) if hb.b1 else ()
    return BuildingCochain(
        g,
        hb.b1,
        coords,
        tuple([Fraction(1)] * hb.b1),
        metric=tuple(tuple(frac(x) for x in row) for row in hb.gram),
    )


def v0_bond_gram(g: FiniteGraph, basis: HomologyBasis | None = None):
    """Exact Gramm matrix <v0(e), v0(e')> over forward edges."""
    hb = basis or homology_basis(g)
    gram_inv = ratmat.inverse(ratmat.mat(hb.gram)) if hb.b1 else []
    n = g.n_edges
    bs = [
        [c.coeffs.get(idx, Fraction(0)) for c in hb.cycles] for idx in range(n)
    ]
    # <v0(e), v0(e')> = b_e^t A^{-1} b_e'
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        xi = ratmat.matvec(gram_inv, bs[i]) if hb.b1 else []
        for j in range(n):
            out[i][j] = ratmat.dot(bs[j], xi) if hb.b1 else Fraction(0)
    return out


def _complement_basis(vs: VanishingSummand):
    """Deterministic integer basis of the A-orthogonal complement of H,
    orthogonalized, plus the squared scales q_i."""
    a = ratmat.mat(vs.basis.gram)
    if vs.lattice.rank == 0:
        raw = [
            [Fraction(int(i == j)) for i in range(vs.basis.b1)]
            for j in range(vs.basis.b1)
        ]
    else:
        rows = [
            ratmat.matvec(a, list(col)) for col in vs.lattice.basis
        ]  # constraints <h, y>_A = 0
        raw = ratmat.rational_kernel(rows)
    ortho: list[list[int]] = []
    scales: list[Fraction] = []
    for v in raw:
        w = ratmat.vec(v)
        for prev, q in zip(ortho, scales):
            c = ratmat.dot(prev, ratmat.matvec(a, w)) / q
            w = [x - c * y for x, y in zip(w, prev)]
        nvec = ratmat.clear_denominators(w)
        ortho.append(nvec)
        scales.append(ratmat.dot(nvec, ratmat.matvec(a, nvec)))
    return ortho, scales


def _completed_generators(vs: VanishingSummand):
    """Integer vectors completing a basis of H to one of the full homology
    lattice; their projections generate the period lattice."""
    from .exact_lattice import snf

    b1 = vs.basis.b1
    k = vs.lattice.rank
    if k == 0:
        return [[int(i == j) for i in range(b1)] for j in range(b1)]
    basis_matrix = vs.lattice.basis_matrix()
    p, _, _ = snf(basis_matrix)
    p_inv = ratmat.inverse(ratmat.mat(p))
    # columns of P^{-1}: the first k span H up to the SNF column ops; the
    # remaining b1 - k complete the basis of Z^{b1}
    gens = []
    for j in range(k, b1):
        gens.append([int(p_inv[i][j]) for i in range(b1)])
    return gens


def standard_realization(vs: VanishingSummand) -> Realization:
    """The normalized standard realization of the crystal selected by H."""
    g = vs.graph
    hb = vs.basis
    ortho, scales = _complement_basis(vs)
    d = vs.d
    assert len(ortho) == d
    coords = {}
    for idx in range(g.n_edges):
        b = [c.coeffs.get(idx, Fraction(0)) for c in hb.cycles]
        coords[idx] = tuple(ratmat.dot(b, w) for w in ortho)
    cochain = BuildingCochain(g, d, coords, tuple(scales))
    a = ratmat.mat(hb.gram)
    period = tuple(
        tuple(ratmat.dot(gen, ratmat.matvec(a, w)) for w in ortho)
        for gen in _completed_generators(vs)
    )
    positions = _pin_positions(g, cochain)
    r = Realization(vs, cochain, period, positions, is_standard=True)
    assert cochain.is_harmonic(), "standard cochain must be harmonic"
    assert cochain.tight_constant() == 1, "standard cochain must be 1-tight"
    return r


def _pin_positions(g: FiniteGraph, cochain: BuildingCochain) -> dict:
    """Propagate positions along the BFS tree with the root at the origin."""
    positions = {0: tuple([Fraction(0)] * cochain.d)}
    seen = {0}
    queue = [0]
    while queue:
        x = queue.pop(0)
        for idx, sign in g.out_edges[x]:
            y = g.terminus(idx, sign)
            if y not in seen:
                seen.add(y)
                positions[y] = tuple(
                    positions[x][i] + sign * cochain.coords[idx][i]
                    for i in range(cochain.d)
                )
                queue.append(y)
    return positions


def harmonic_realization_from_force(
    vs: VanishingSummand, period_hom, force: dict | None
) -> BuildingCochain:
    """Unique building cochain with resultant force f and period data rho.

    period_hom is an exact d x b1 rational matrix on cycle coordinates; it
    must kill H.  force maps vertices to d-vectors summing to zero; None
    or missing vertices mean zero.  The cochain solves, per axis, the
    vertex equations sum_{e in E_x} v(e) = f(x) together with the cycle
    equations sum_e c_j(e) v(e) = period_hom[:, j].
    """
    g = vs.graph
    hb = vs.basis
    d = len(period_hom)
    rho = ratmat.mat(period_hom)
    if any(len(row) != hb.b1 for row in rho):
        raise ClassKillsWrongSubgroupError("period matrix has wrong shape")
    force = {x: tuple(frac(c) for c in v) for x, v in (force or {}).items()}
    total = [Fraction(0)] * d
    for v in force.values():
        for i in range(d):
            total[i] += v[i]
    if any(t != 0 for t in total):
        raise ForceNotBalancedError("force components must sum to zero")
    for col in vs.lattice.basis:
        img = ratmat.matvec(rho, list(col))
        if any(x != 0 for x in img):
            raise ClassKillsWrongSubgroupError("period matrix does not kill H")
    n = g.n_edges
    rows = []
    rhs_all = []
    for x in range(g.vertex_count):
        row = [Fraction(0)] * n
        for idx, sign in g.out_edges[x]:
            row[idx] += sign
        rows.append(row)
        rhs_all.append(force.get(x, tuple([Fraction(0)] * d)))
    for j, c in enumerate(hb.cycles):
        rows.append(c.dense(n))
        rhs_all.append(tuple(rho[i][j] for i in range(d)))
    coords = {idx: [] for idx in range(n)}
    for axis in range(d):
        rhs = [r[axis] for r in rhs_all]
        sol = ratmat.solve(rows, rhs)
        for idx in range(n):
            coords[idx].append(sol[idx])
    coords = {idx: tuple(v) for idx, v in coords.items()}
    return BuildingCochain(g, d, coords, tuple([Fraction(1)] * d))


def realization_from_cochain(
    vs: VanishingSummand, cochain: BuildingCochain, period_hom
) -> Realization:
    rho = ratmat.mat(period_hom)
    period = tuple(
        tuple(ratmat.matvec(rho, gen)) for gen in _completed_generators(vs)
    )
    positions = _pin_positions(vs.graph, cochain)
    return Realization(vs, cochain, period, positions)


def standard_period_hom(vs: VanishingSummand):
    """The standard projection as a rational d x b1 matrix.

    Row i is (A w_i)^t in cycle coordinates, i.e. the standard projection
    written in the axis-scaled frame (each row carries a hidden factor
    sqrt(q_i)).  Feeding this to the force solver with zero force returns
    exactly the standard cochain's rational coordinates.
    """
    ortho, _ = _complement_basis(vs)
    a = ratmat.mat(vs.basis.gram)
    return [list(ratmat.matvec(a, w)) for w in ortho]


def dstar_lattice(g: FiniteGraph) -> IntLattice:
    """The image of integer 0-chains under the adjoint boundary, inside
    Z^{E^o}; this is the vanishing group of the homology frame v0."""
    cols = []
    for x in range(g.vertex_count):
        col = [0] * g.n_edges
        for idx, e in enumerate(g.edges):
            col[idx] = int(e.head == x) - int(e.tail == x)
        cols.append(col)
    return IntLattice(g.n_edges, cols)


def cochain_integer_kernel(cochain: BuildingCochain) -> IntLattice:
    """Integer vectors k with sum_e k_e v(e) = 0: the frame vanishing group
    of the edge vectors, computed exactly from the coordinates."""
    from .exact_lattice import integer_kernel

    n = cochain.graph.n_edges
    rows = []
    for i in range(cochain.d):
        rows.append(
            ratmat.clear_denominators([cochain.coords[idx][i] for idx in range(n)])
        )
    ker = integer_kernel(rows)
    ncols = len(ker[0]) if ker and ker[0] else 0
    cols = [[ker[i][j] for i in range(n)] for j in range(ncols)]
    return IntLattice(n, cols)


# -- energy and distortion -------------------------------------------------------

def energy(r: Realization):
    """(sum of squared bond lengths over ALL directed edges, vol^2, float E).

    E = vol(R^d/L)^{-2/d} * sum; the exact ingredients come first so that
    energy comparisons can clear the 2/d power rationally.
    """
    vol_sq = r.vol_sq()
    if vol_sq == 0:
        raise DegeneratePeriodLatticeError("period lattice is degenerate")
    total = sum(
        (r.cochain.bond_inner(idx, idx) for idx in range(r.graph.n_edges)),
        Fraction(0),
    ) * 2
    e_float = float(vol_sq) ** (-1.0 / r.d) * float(total)
    return total, vol_sq, e_float


def energy_less(a: Realization, b: Realization) -> bool:
    """Exact comparison E(a) < E(b) with the 1/d powers cleared."""
    sa, va, _ = energy(a)
    sb, vb, _ = energy(b)
    d = a.d
    return sa ** d * vb < sb ** d * va


def distortion(r: Realization):
    """(resultant force cochain, eigenvalue ratio R of the frame operator).

    R == 1.0 exactly when the edge vectors over the orientation form a
    tight frame, i.e. for standard realizations up to similarity.
    """
    force = r.cochain.resultant_force()
    if r.cochain.tight_constant() is not None:
        return force, 1.0
    m = r.cochain.tight_core()
    q = r.cochain.axis_scales_sq
    d = r.d
    s = np.array(
        [
            [
                float(m[i][j]) / math.sqrt(float(q[i]) * float(q[j]))
                for j in range(d)
            ]
            for i in range(d)
        ]
    )
    eigs = np.linalg.eigvalsh(s)
    if eigs[0] <= 0:
        return force, math.inf
    return force, float(eigs[-1] / eigs[0])


def torus_volume(vs: VanishingSummand) -> Fraction:
    """vol(J(X0, H))^2 = kappa(X0) / vol(H_R/H)^2, exactly."""
    return Fraction(tree_number(vs.graph)) / vs.height_sq()


# -- patches and the realism predicate --------------------------------------------

@dataclass
class PatchVertex:
    vertex: int
    offset: tuple
    position: tuple


@dataclass
class Patch:
    vertices: list
    edges: list                 # (tail PatchVertex idx, head idx, edge id)
    index: dict                 # (vertex, offset) -> position in vertices


def realize_patch(r: Realization, radius: int) -> Patch:
    """All lattice translates with offset max-norm <= radius.

    Offsets in lexicographic order, vertices in index order; edges are
    listed when both endpoints lie inside the window.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    d = r.d
    offsets = sorted(itertools.product(range(-radius, radius + 1), repeat=d))
    vertices = []
    index = {}
    for off in offsets:
        for x in range(r.graph.vertex_count):
            index[(x, off)] = len(vertices)
            vertices.append(PatchVertex(x, off, r.position_float(x, off)))
    edges = []
    shifts = {idx: r.edge_shift(idx) for idx in range(r.graph.n_edges)}
    for off in offsets:
        for idx, e in enumerate(r.graph.edges):
            head_off = tuple(o + s for o, s in zip(off, shifts[idx]))
            key = (e.head, head_off)
            if key in index:
                edges.append((index[(e.tail, off)], index[key], e.id))
    return Patch(vertices, edges, index)


@dataclass
class RealismReport:
    injective: bool
    neighbors_only: bool
    min_vertex_distance: float
    bond_scale: float
    violations: list

    @property
    def passed(self) -> bool:
        return self.injective and self.neighbors_only


def realism_check(r: Realization, radius: int, c: float = 1.0) -> RealismReport:
    """Check the two finiteness-theorem conditions on a finite patch.

    (i) no two patch vertices coincide (tolerance 1e-9); (ii) for every
    interior vertex x, any vertex within c * max bond length at x is x
    itself or adjacent to it.  Violations are reported, not raised.
    """
    patch = realize_patch(r, radius)
    pts = [v.position for v in patch.vertices]
    violations = []
    min_dist = math.inf
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            dist = math.dist(pts[i], pts[j])
            min_dist = min(min_dist, dist)
            if dist <= FLOAT_TOL:
                violations.append(("collision", patch.vertices[i], patch.vertices[j]))
    injective = not any(v[0] == "collision" for v in violations)
    shifts = {idx: r.edge_shift(idx) for idx in range(r.graph.n_edges)}
    bond_len = {
        x: max(
            (
                math.sqrt(max(float(r.cochain.bond_inner(idx, idx)), 0.0))
                for idx, _ in r.graph.out_edges[x]
            ),
            default=0.0,
        )
        for x in range(r.graph.vertex_count)
    }
    neighbors_only = True
    scale_used = 0.0
    for pv_idx, pv in enumerate(patch.vertices):
        if max((abs(o) for o in pv.offset), default=0) > radius - 1:
            continue  # boundary vertices see a truncated neighborhood
        x, off = pv.vertex, pv.offset
        nbrs = {(x, off)}
        for idx, sign in r.graph.out_edges[x]:
            other = r.graph.terminus(idx, sign)
            shift = shifts[idx]
            noff = tuple(
                o + sign * s for o, s in zip(off, shift)
            )
            nbrs.add((other, noff))
        scale = c * bond_len[x]
        scale_used = max(scale_used, scale)
        for qv in patch.vertices:
            if (qv.vertex, qv.offset) in nbrs:
                continue
            if math.dist(pv.position, qv.position) <= scale + FLOAT_TOL:
                neighbors_only = False
                violations.append(("near_nonneighbor", pv, qv))
    return RealismReport(injective, neighbors_only, min_dist, scale_used, violations)


# -- the 2D quadric ---------------------------------------------------------------

@dataclass
class QuadricPoint2D:
    """Projective point with coordinates in Q(sqrt(-D)), one per edge."""

    D: int
    coords: tuple               # SurdComplex per forward edge (the + branch)
    conjugate: tuple
    canonical: tuple            # integer-cleared projective representative
    canonical_conjugate: tuple


def _canonical_projective(coords) -> tuple:
    """Scale so the first nonzero coordinate is 1, then clear denominators
    to a primitive integer-coefficient representative."""
    first = next((z for z in coords if not z.is_zero()), None)
    if first is None:
        raise ValueError("zero projective point")
    inv = first.inverse()
    scaled = [z * inv for z in coords]
    denom = 1
    for z in scaled:
        for part in (z.re, z.im):
            denom = denom * part.denominator // math.gcd(denom, part.denominator)
    nums = []
    for z in scaled:
        nums.append((int(z.re * denom), int(z.im * denom)))
    g = 0
    for a, b in nums:
        g = math.gcd(g, math.gcd(a, b))
    if g:
        nums = [(a // g, b // g) for a, b in nums]
    d_val = coords[0].D
    return tuple(SurdComplex(a, b, d_val) for a, b in nums)


def projective_equal(p1, p2) -> bool:
    """Projective equality of two coordinate tuples over the same field."""
    if len(p1) != len(p2):
        return False
    if any(z1.D != z2.D for z1, z2 in zip(p1, p2) if not (z1.is_zero() or z2.is_zero())):
        return False
    i = next((i for i, z in enumerate(p1) if not z.is_zero()), None)
    j = next((j for j, z in enumerate(p2) if not z.is_zero()), None)
    if i != j:
        return False
    return all(
        (p1[i] * p2[k]) == (p2[i] * p1[k]) for k in range(len(p1))
    )


def quadric_point_2d(vs: VanishingSummand) -> QuadricPoint2D:
    """The Q(sqrt(-D)) quadric point of a 2-dimensional realization.

    z(e) = v(e)_1 + i v(e)_2 is scaled by sqrt(q_1) (a positive real, so
    the oriented similarity class is unchanged) to land in Q(sqrt(-D))
    with D the square-free part of q_1 q_2; that D provably equals the
    square-free part of kappa * vol(H_R/H)^2, which is asserted.
    """
    if vs.d != 2:
        raise NotTwoDimensionalError(f"crystal dimension is {vs.d}, need 2")
    r = standard_realization(vs)
    q1, q2 = r.cochain.axis_scales_sq
    prod = q1 * q2
    d_val, m_val = square_free_part(prod.numerator * prod.denominator)
    # sqrt(q1/q2) = sqrt(q1 q2)/q2 = (m sqrt(D)/den)/q2
    im_scale = Fraction(m_val, prod.denominator) / q2
    coords = []
    for idx in range(r.graph.n_edges):
        a, b = r.cochain.coords[idx]
        coords.append(SurdComplex(a, b * im_scale, d_val))
    kappa = tree_number(vs.graph)
    hv = kappa * vs.height_sq()
    d_check, _ = square_free_part(hv.numerator * hv.denominator)
    assert d_check == d_val, "quadric D must match sqfree(kappa * h^2)"
    if all(z.is_zero() for z in coords):
        raise DegeneratePeriodLatticeError("all quadric coordinates vanish")
    total = SurdComplex(0, 0, d_val)
    for z in coords:
        total = total + z * z
    assert total.is_zero(), "quadric equation must hold"
    for x in range(r.graph.vertex_count):
        acc = SurdComplex(0, 0, d_val)
        for idx, sign in r.graph.out_edges[x]:
            acc = acc + coords[idx].scale(sign)
        assert acc.is_zero(), "harmonicity must hold on the quadric point"
    conj = tuple(z.conjugate() for z in coords)
    point, conjugate = tuple(coords), conj
    # order the pair: positive imaginary part at the first surd-bearing entry
    lead = next((z for z in point if z.im != 0), None)
    if lead is not None and lead.im < 0:
        point, conjugate = conjugate, point
    return QuadricPoint2D(
        d_val,
        point,
        conjugate,
        _canonical_projective(list(point)),
        _canonical_projective(list(conjugate)),
    )


# -- cubic lattice projections -----------------------------------------------------

@dataclass
class CubicProjection:
    direction: tuple
    summand: VanishingSummand
    realization: Realization
    quadric: QuadricPoint2D


def cubic_projection(n) -> CubicProjection:
    """The 2D crystal pattern seen along a primitive direction of Z^3.

    The cubic lattice is the maximal crystal over the 3-loop bouquet, whose
    homology lattice is Z^3 with the standard inner product; projecting
    along n realizes the vanishing summand Z n.
    """
    n = [int(x) for x in n]
    if len(n) != 3 or all(x == 0 for x in n):
        raise NotPrimitiveError("need a nonzero integer 3-vector")
    g = 0
    for x in n:
        g = math.gcd(g, x)
    if g != 1:
        raise NotPrimitiveError(f"gcd of {tuple(n)} is {g}, not 1")
    graph = bouquet(3)
    vs = VanishingSummand.make(graph, [n])
    return CubicProjection(
        tuple(n), vs, standard_realization(vs), quadric_point_2d(vs)
    )


# -- export -----------------------------------------------------------------------

def realization_to_json_obj(r: Realization, radius: int) -> dict:
    """JSON-ready dict with float geometry plus the exact data it came from."""
    patch = realize_patch(r, radius)
    gram = r.cochain.bond_gram()
    n = r.graph.n_edges
    return {
        "dimension": r.d,
        "vertices": [
            {
                "id": v.vertex,
                "offset": list(v.offset),
                "pos": [round(c, 12) for c in v.position],
            }
            for v in patch.vertices
        ],
        "edges": [[t, h, eid] for t, h, eid in patch.edges],
        "period_vectors": [list(g) for g in r.period_float()],
        "period_gram": [[str(x) for x in row] for row in r.period_gram()],
        "bond_gram": [[str(gram[i][j]) for j in range(n)] for i in range(n)],
        "axis_scales_sq": [str(q) for q in r.cochain.axis_scales_sq],
    }


def realization_to_obj(r: Realization, radius: int) -> str:
    """Wavefront OBJ with patch vertices and line elements."""
    patch = realize_patch(r, radius)
    lines = ["# crystalframes net export"]
    for v in patch.vertices:
        coords = list(v.position) + [0.0] * (3 - len(v.position))
        lines.append("v " + " ".join(f"{c:.9f}" for c in coords[:3]))
    for t, h, _ in patch.edges:
        lines.append(f"l {t + 1} {h + 1}")
    return "\n".join(lines) + "\n"
