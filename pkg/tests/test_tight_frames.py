"""Frame operators, tightness, Naimark, crystallographic structure, catalog."""

import json
import math
import random
from fractions import Fraction

import pytest

from crystalframes.errors import (
    BadParametersError,
    NotAFrameError,
    NotPythagoreanError,
    SizeTooLargeError,
)
from crystalframes.exact_lattice import IntLattice, covolume_squared, saturate
from crystalframes.diophantine import hc_rotation_cartesian, pythagorean_rotation
from crystalframes.surd import SurdSum
from crystalframes.tight_frames import (
    Frame,
    automorphism_group,
    catalog_frame,
    congruent,
    frame_from_columns,
    frame_from_json,
    frame_from_rational,
    frame_from_summand,
    frame_operator,
    frame_period_covol_sq,
    frame_to_json,
    is_crystallographic,
    is_tight,
    join,
    minimal_energy_gap,
    naimark_check,
    platonic_frame,
    regular_polygon,
    root_system_frame,
    simplex_frame,
    vanishing_group,
)


def orthonormal_frame(d):
    return frame_from_rational(
        [[int(i == j) for j in range(d)] for i in range(d)]
    )


def random_summand(rng, n_max=6):
    while True:
        n = rng.randint(2, n_max)
        k = rng.randint(0, n - 1)
        cols = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(k)]
        h = saturate(IntLattice(n, cols))
        if h.rank == k:
            return h, n


def test_frame_operator_orthonormal():
    data = frame_operator(orthonormal_frame(3))
    assert data.tight_constant == 1
    assert is_tight(orthonormal_frame(3)) == 1


def test_frame_operator_triangle():
    assert is_tight(regular_polygon(3)) == 1


def test_frame_operator_pythagorean_is_2I():
    f = catalog_frame("pythagorean", 3, 4, 5)
    data = frame_operator(f)
    assert data.tight_constant == 2


def test_trace_identity():
    for f in (regular_polygon(6), simplex_frame(3), root_system_frame("B", 2)):
        data = frame_operator(f)
        trace = sum((data.S[i][i] for i in range(f.dim)), SurdSum())
        total = sum((f.norm_sq(i) for i in range(f.size)), SurdSum())
        assert trace == total


def test_not_a_frame():
    f = frame_from_rational([[1, 0], [2, 0], [-1, 0]])
    with pytest.raises(NotAFrameError):
        frame_operator(f)


def test_two_orthonormal_copies_tight_constant_two():
    f = join(orthonormal_frame(2), orthonormal_frame(2))
    assert is_tight(f) == 2
    assert naimark_check(f) is False   # alpha-tight with alpha != 1


def test_perturbed_frame_not_tight():
    f = simplex_frame(2).scale_vector(0, 2)
    assert is_tight(f) is None


def test_naimark_iff_one_tight():
    rng = random.Random(41)
    frames = [
        regular_polygon(3),
        regular_polygon(4),
        regular_polygon(6),
        simplex_frame(2),
        simplex_frame(4),
        platonic_frame("cube"),
        platonic_frame("octahedron"),
        catalog_frame("pythagorean", 3, 4, 5),
        root_system_frame("A", 2),
        root_system_frame("G2", 2),
    ]
    for _ in range(15):
        h, n = random_summand(rng)
        frames.append(frame_from_summand(h, n, n - h.rank))
    for f in frames:
        alpha = is_tight(f)
        assert naimark_check(f) == (alpha == 1)


def test_congruence_under_rational_rotation():
    f = regular_polygon(4)
    rot = pythagorean_rotation(3, 4, 5)
    assert congruent(f, f.apply_linear([list(r) for r in rot.matrix]))


def test_congruence_breaks_under_permutation():
    f = catalog_frame("pythagorean", 3, 4, 5)
    swapped = Frame(entries=[f.entries[1], f.entries[0], f.entries[2], f.entries[3]])
    assert not congruent(f, swapped)


def test_frames_from_different_summands_not_congruent():
    f1 = frame_from_summand(IntLattice(3, [[1, 1, 1]]), 3, 2)
    f2 = frame_from_summand(IntLattice(3, [[1, 1, 2]]), 3, 2)
    assert not congruent(f1, f2)


def test_crystallographic_polygons():
    for n in range(3, 13):
        assert is_crystallographic(regular_polygon(n)) == (n in (3, 4, 6))


def test_crystallographic_rational_gram():
    f = frame_from_rational([[Fraction(1, 7), 0], [0, Fraction(1, 7)], [Fraction(3, 7), Fraction(2, 7)]])
    assert is_crystallographic(f)


def test_vanishing_group_examples():
    # Pythagorean: the span of the displayed generators, saturated
    f = catalog_frame("pythagorean", 3, 4, 5)
    h = vanishing_group(f)
    assert h.rank == 2
    assert h.contains([5, -3, 0, 4])
    assert h.contains([0, 4, -5, 3])
    displayed = IntLattice(4, [[5, -3, 0, 4], [0, 4, -5, 3]])
    assert saturate(displayed) == h
    assert covolume_squared(displayed) / covolume_squared(h) == 25  # index 5
    # triangular-lattice frame
    tri = frame_from_summand(IntLattice(3, [[1, 1, 1]]), 3, 2)
    assert vanishing_group(tri) == IntLattice(3, [[1, 1, 1]])
    # orthonormal basis
    assert vanishing_group(orthonormal_frame(3)).rank == 0


def test_frame_from_summand_examples():
    # degenerate square-lattice picture: one zero vector plus an orthonormal pair
    f = frame_from_summand(IntLattice(3, [[1, 0, 0]]), 3, 2)
    assert all(x.is_zero() for x in f.entries[0])
    assert is_tight(f) == 1
    # triangle Gramm
    tri = frame_from_summand(IntLattice(3, [[1, 1, 1]]), 3, 2)
    g = tri.gram()
    for i in range(3):
        for j in range(3):
            want = Fraction(2, 3) if i == j else Fraction(-1, 3)
            assert g[i][j] == SurdSum.of(want)
    # H = 0 gives an orthonormal basis
    f = frame_from_summand(IntLattice(4, []), 4, 4)
    assert frame_operator(f).tight_constant == 1
    assert f.gram() == [[SurdSum.of(int(i == j)) for j in range(4)] for i in range(4)]


def test_roundtrip_and_rationality():
    rng = random.Random(42)
    for _ in range(20):
        h, n = random_summand(rng)
        f = frame_from_summand(h, n, n - h.rank)
        assert is_tight(f) == 1
        assert vanishing_group(f) == h
        assert all(x.is_rational() for row in f.gram() for x in row)


def test_minimal_energy_gap():
    tri = frame_from_summand(IntLattice(3, [[1, 1, 1]]), 3, 2)
    assert minimal_energy_gap(tri).equality
    doubled = tri.scale_vector(0, 2)
    gap = minimal_energy_gap(doubled)
    assert not gap.equality
    assert gap.sum_norms_sq ** doubled.dim > gap.bound_power_d
    ortho = orthonormal_frame(3)
    gap = minimal_energy_gap(ortho)
    assert gap.equality and gap.sum_norms_sq == 3 and gap.bound_power_d == 27


def test_heightvolume_identity():
    rng = random.Random(43)
    for _ in range(15):
        h, n = random_summand(rng)
        f = frame_from_summand(h, n, n - h.rank)
        h2 = covolume_squared(h) if h.rank else Fraction(1)
        assert frame_period_covol_sq(f) * h2 == 1


def test_join_tight_constants_add():
    tri = regular_polygon(3)
    assert is_tight(join(tri, tri)) == 2


def test_join_square_triangle_not_crystallographic():
    j = join(regular_polygon(4), regular_polygon(3))
    assert is_tight(j) == 2
    assert not is_crystallographic(j)


def test_join_with_hexagonal_coincidence_rotation():
    # unit triangle a1, a2, -a1-a2 in Cartesian coordinates
    half = Fraction(1, 2)
    tri = Frame(
        entries=[
            [SurdSum.of(1), SurdSum()],
            [SurdSum.of(-half), SurdSum({3: half})],
            [SurdSum.of(-half), SurdSum({3: -half})],
        ]
    )
    assert is_tight(tri) == Fraction(3, 2)
    g = hc_rotation_cartesian(Fraction(8, 13), Fraction(15, 13))
    joined = join(tri, tri.apply_linear(g))
    assert joined.size == 6
    assert is_tight(joined) == 3
    assert is_crystallographic(joined)


def test_catalog_simplex_gram():
    f = catalog_frame("simplex", 3)
    g = f.gram()
    for i in range(4):
        for j in range(4):
            want = Fraction(3, 4) if i == j else Fraction(-1, 4)
            assert g[i][j] == SurdSum.of(want)


def test_catalog_a2():
    f = catalog_frame("root_system", "A", 2)
    assert f.size == 3
    assert is_crystallographic(f)
    assert is_tight(f) == 3
    for i in range(3):
        assert f.norm_sq(i) == SurdSum.of(2)


def test_catalog_bad_parameters():
    with pytest.raises(BadParametersError):
        catalog_frame("root_system", "D", 3)
    with pytest.raises(BadParametersError):
        catalog_frame("dodecahedron")
    with pytest.raises(NotPythagoreanError):
        catalog_frame("pythagorean", 3, 4, 6)


def test_root_system_counts_and_constants():
    cases = {
        ("A", 2): (3, 3),
        ("A", 3): (6, 4),
        ("B", 2): (4, 3),
        ("B", 3): (9, 5),
        ("C", 3): (9, 8),
        ("D", 4): (12, 6),
    }
    for (fam, rank), (count, alpha) in cases.items():
        f = root_system_frame(fam, rank)
        assert f.size == count
        assert is_tight(f) == alpha
        assert is_crystallographic(f)
    g2 = root_system_frame("G2", 2)
    assert g2.size == 6 and is_tight(g2) == 6


def test_full_root_systems_sum_to_zero():
    for fam, rank in (("A", 2), ("A", 3), ("B", 2), ("C", 3), ("D", 4), ("G2", 2)):
        f = root_system_frame(fam, rank, positive_only=False)
        total = [
            sum((row[k] for row in f.entries), SurdSum()) for k in range(f.dim)
        ]
        assert all(x.is_zero() for x in total)


def test_invariant_catalog_sums_to_zero():
    for f in (
        regular_polygon(3),
        regular_polygon(4),
        regular_polygon(6),
        simplex_frame(2),
        simplex_frame(3),
        platonic_frame("cube"),
        platonic_frame("octahedron"),
    ):
        total = [
            sum((row[k] for row in f.entries), SurdSum()) for k in range(f.dim)
        ]
        assert all(x.is_zero() for x in total)


def test_automorphism_groups():
    perms, iso, strong = automorphism_group(simplex_frame(3))
    assert len(perms) == 24 and iso and strong
    perms, iso, strong = automorphism_group(regular_polygon(4))
    assert len(perms) == 8 and iso and not strong
    perms, iso, strong = automorphism_group(platonic_frame("octahedron"))
    assert len(perms) == 48 and iso and not strong


def test_automorphism_mixed_join_not_isotropic():
    mixed = join(regular_polygon(4), regular_polygon(3))
    scale = SurdSum.sqrt(Fraction(1, 2))
    one_tight = mixed.apply_linear([[scale, SurdSum()], [SurdSum(), scale]])
    assert is_tight(one_tight) == 1
    perms, iso, strong = automorphism_group(one_tight)
    assert not iso and not strong


def test_automorphism_size_guard():
    with pytest.raises(SizeTooLargeError):
        automorphism_group(root_system_frame("B", 3))  # 9 vectors


def test_stiefel_condition():
    # columns of the crystalpoint matrix are exactly orthonormal: S = I
    f = frame_from_summand(IntLattice(4, [[1, 1, 1, 1]]), 4, 3)
    data = frame_operator(f)
    for i in range(3):
        for j in range(3):
            assert data.S[i][j] == SurdSum.of(int(i == j))


def test_frame_json_roundtrip():
    for f in (regular_polygon(6), simplex_frame(3), catalog_frame("pythagorean", 3, 4, 5)):
        doc = frame_to_json(f)
        parsed = frame_from_json(doc)
        assert parsed.entries == f.entries
    with pytest.raises(BadParametersError):
        frame_from_json(json.dumps({"dim": 2, "size": 1, "columns": [], "x": 1}))


def test_approximate_pentagon_tight_but_not_crystallographic():
    f = regular_polygon(5)
    assert f.approximate
    alpha = is_tight(f)
    assert alpha is not None and math.isclose(alpha, 1.0, abs_tol=1e-9)
    assert not is_crystallographic(f)
