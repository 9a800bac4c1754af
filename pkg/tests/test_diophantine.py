"""Three squares, Q3 points, coincidence rotations, Cayley parameterization."""

import random
from fractions import Fraction

import pytest

from crystalframes import ratmat
from crystalframes.diophantine import (
    HC_METRIC,
    RationalRotation,
    SurdComplex,
    cayley_rotation,
    coincidence_member,
    hc_rotation_cartesian,
    pythagorean_rotation,
    q3_point,
    three_squares_representable,
    three_squares_witness,
)
from crystalframes.errors import (
    NotInLieAlgebraError,
    NotPrimitiveError,
    NotPythagoreanError,
    NotSquareFreeError,
    SingularIplusXError,
)
from crystalframes.surd import square_free_part


def test_three_squares_examples():
    assert three_squares_representable(7) is False
    assert three_squares_representable(3) is True
    with pytest.raises(NotSquareFreeError):
        three_squares_representable(12)


def test_three_squares_vs_bruteforce():
    for d in range(1, 101):
        dd, m = square_free_part(d)
        if m != 1:
            continue
        witness = three_squares_witness(d, 10)
        assert three_squares_representable(d) == (witness is not None), d
        if witness is not None:
            assert sum(x * x for x in witness) == d


def test_q3_point_111():
    point, conj, d = q3_point((1, 1, 1))
    assert d == 3
    assert point == (
        SurdComplex(2, 0, 3),
        SurdComplex(-1, 1, 3),
        SurdComplex(-1, -1, 3),
    )
    assert conj == tuple(z.conjugate() for z in point)


def test_q3_point_degenerate_direction():
    point, conj, d = q3_point((1, 0, 0))
    assert d == 1
    total = SurdComplex(0, 0, 1)
    for z in point:
        total = total + z * z
    assert total.is_zero()
    assert any(not z.is_zero() for z in point)


def test_q3_point_identities_random():
    rng = random.Random(61)
    from math import gcd

    for _ in range(40):
        n = [rng.randint(-6, 6) for _ in range(3)]
        g = gcd(gcd(n[0], n[1]), n[2])
        if g == 0:
            continue
        n = [x // g for x in n]
        point, conj, d = q3_point(n)   # constructor asserts both identities
        norm = sum(x * x for x in n)
        assert d == square_free_part(norm)[0]


def test_q3_point_rejects_imprimitive():
    with pytest.raises(NotPrimitiveError):
        q3_point((2, 4, 6))
    with pytest.raises(NotPrimitiveError):
        q3_point((0, 0, 0))


def test_coincidence_z2():
    rot = coincidence_member("Z2", Fraction(3, 5), Fraction(4, 5))
    assert rot is not None
    assert rot.matrix == (
        (Fraction(3, 5), Fraction(-4, 5)),
        (Fraction(4, 5), Fraction(3, 5)),
    )
    # image lattice basis: the columns
    assert [rot.matrix[i][0] for i in range(2)] == [Fraction(3, 5), Fraction(4, 5)]
    assert coincidence_member("Z2", 1, 0).matrix == ((1, 0), (0, 1))
    assert coincidence_member("Z2", Fraction(1, 2), Fraction(1, 2)) is None


def test_coincidence_hc():
    rot = coincidence_member("HC", 1, 1)
    assert rot is not None
    assert rot.metric == HC_METRIC
    assert rot.matrix != ((1, 0), (0, 1))
    assert coincidence_member("HC", Fraction(8, 13), Fraction(15, 13)) is not None
    assert coincidence_member("HC", 1, 2) is None


def test_rotation_group_closure():
    a = pythagorean_rotation(3, 4, 5)
    b = pythagorean_rotation(5, 12, 13)
    c = a.compose(b)
    m = ratmat.mat([list(r) for r in c.matrix])
    assert ratmat.mat_eq(
        ratmat.matmul(ratmat.transpose(m), m), ratmat.ident(2)
    )
    assert ratmat.det(m) == 1


def test_pythagorean_rotation_validation():
    rot = pythagorean_rotation(3, 4, 5)
    assert rot.matrix == (
        (Fraction(3, 5), Fraction(-4, 5)),
        (Fraction(4, 5), Fraction(3, 5)),
    )
    pythagorean_rotation(5, 12, 13)
    with pytest.raises(NotPythagoreanError):
        pythagorean_rotation(3, 4, 6)
    with pytest.raises(NotPythagoreanError):
        pythagorean_rotation(6, 8, 10)


def test_cayley_identity():
    rot = cayley_rotation([[1, 0], [0, 1]], [[0, 0], [0, 0]])
    assert rot.matrix == ((1, 0), (0, 1))


def test_cayley_half_turn_parameter():
    """X = [[0, -1/2], [1/2, 0]] maps to the rational rotation with
    (p, q) = (3/5, -4/5); its transpose is the (3/5, 4/5) member."""
    t = Fraction(1, 2)
    rot = cayley_rotation([[1, 0], [0, 1]], [[0, -t], [t, 0]])
    assert rot.matrix == (
        (Fraction(3, 5), Fraction(4, 5)),
        (Fraction(-4, 5), Fraction(3, 5)),
    )
    flipped = cayley_rotation([[1, 0], [0, 1]], [[0, t], [-t, 0]])
    assert flipped.matrix == pythagorean_rotation(3, 4, 5).matrix


def test_cayley_random_preserves_metric():
    rng = random.Random(62)
    for _ in range(10):
        d = rng.randint(2, 3)
        m = [[Fraction(rng.randint(-2, 2)) for _ in range(d)] for _ in range(d)]
        s = ratmat.mat_add(
            ratmat.matmul(ratmat.transpose(m), m), ratmat.ident(d)
        )  # SPD rational
        w = [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            for j in range(i + 1, d):
                w[i][j] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                w[j][i] = -w[i][j]
        x = ratmat.matmul(ratmat.inverse(s), w)   # X^t S + S X = 0
        try:
            rot = cayley_rotation(s, x)
        except SingularIplusXError:
            continue
        mm = ratmat.mat([list(r) for r in rot.matrix])
        lhs = ratmat.matmul(ratmat.matmul(ratmat.transpose(mm), ratmat.mat(s)), mm)
        assert ratmat.mat_eq(lhs, ratmat.mat(s))


def test_cayley_errors():
    # not S-antisymmetric
    with pytest.raises(NotInLieAlgebraError):
        cayley_rotation([[1, 0], [0, 1]], [[1, 0], [0, 0]])
    # a genuine S-antisymmetric X always has det(I + X) > 0 (imaginary
    # spectrum), so the singularity guard never fires on valid input
    rot = cayley_rotation([[1, 0], [0, 1]], [[0, -7], [7, 0]])
    m = ratmat.mat([list(r) for r in rot.matrix])
    assert ratmat.det(m) == 1


def test_hc_cartesian_matches_oblique():
    """The Cartesian SurdSum matrix and the oblique rational matrix describe
    the same rotation: conjugating by the basis (a1, a2) identifies them."""
    from crystalframes.surd import SurdSum

    p, q = Fraction(8, 13), Fraction(15, 13)
    cart = hc_rotation_cartesian(p, q)
    # basis a1 = (1, 0), a2 = (-1/2, sqrt(3)/2) as SurdSum columns
    half = Fraction(1, 2)
    basis = [
        [SurdSum.of(1), SurdSum.of(-half)],
        [SurdSum(), SurdSum({3: half})],
    ]
    oblique = coincidence_member("HC", p, q).matrix
    # cart @ basis == basis @ oblique, entrywise
    for i in range(2):
        for j in range(2):
            lhs = sum((cart[i][k] * basis[k][j] for k in range(2)), SurdSum())
            rhs = sum(
                (basis[i][k] * SurdSum.of(oblique[k][j]) for k in range(2)),
                SurdSum(),
            )
            assert lhs == rhs


def test_surd_complex_serialization():
    z = SurdComplex(Fraction(1, 2), Fraction(-3, 4), 5)
    assert z.to_json() == {"re": "1/2", "im": "-3/4", "D": 5}
