"""Machine-checkable verification suites, shared by the CLI and the tests.

Each suite returns {"suite", "checks": [{"name", "passed", "detail"}...],
"passed"}; all randomness is seeded, so reports are reproducible byte for
byte for a fixed seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import ratmat
from .crystal_nets import (
    VanishingSummand,
    cochain_integer_kernel,
    distortion,
    dstar_lattice,
    energy,
    harmonic_cochain_v0,
    standard_realization,
    torus_volume,
    v0_bond_gram,
)
from .diophantine import q3_point, three_squares_representable, three_squares_witness
from .errors import UnknownSuiteError
from .exact_lattice import (
    IntLattice,
    cokernel_invariants,
    covolume_squared,
    dual_quotient,
    orth_complement_int,
    saturate,
)
from .graph_core import homology_basis
from .graph_jacobian import abel_theorem_check, jacobian, tree_number
from .named_graphs import complete_graph, corpus, delta_graph, random_multigraph
from .diophantine import pythagorean_rotation
from .tight_frames import (
    catalog_frame,
    frame_from_summand,
    is_tight,
    naimark_check,
    vanishing_group,
)


def _check(checks, name, passed, detail=""):
    checks.append({"name": name, "passed": bool(passed), "detail": str(detail)})


def suite_jacobian(seed: int = 0) -> dict:
    checks = []
    for d in range(1, 7):
        jd = jacobian(delta_graph(d + 1))
        _check(
            checks,
            f"delta_{d + 1}_invariants",
            jd.invariants.nontrivial() == (d + 1,),
            jd.invariants.factors,
        )
    for n in range(3, 7):
        jd = jacobian(complete_graph(n))
        _check(
            checks,
            f"K{n}_invariants",
            jd.invariants.nontrivial() == tuple([n] * (n - 2)),
            jd.invariants.factors,
        )
    for name, g in corpus().items():
        jd = jacobian(g)
        _check(checks, f"order_equals_kappa_{name}", jd.order == jd.kappa, jd.kappa)
    rng = random.Random(seed)
    ok = True
    for _ in range(50):
        g = random_multigraph(rng.randrange(2**30))
        jd = jacobian(g)  # jacobian() asserts order == kappa internally
        ok = ok and jd.order == tree_number(g)
    _check(checks, "order_equals_kappa_random_50", ok)
    ok = all(abel_theorem_check(g) for g in corpus().values())
    _check(checks, "abel_theorem_corpus", ok)
    ok = all(
        abel_theorem_check(random_multigraph(rng.randrange(2**30), max_vertices=6))
        for _ in range(20)
    )
    _check(checks, "abel_theorem_random_20", ok)
    return _report("jacobian", checks)


def _catalog_corpus():
    frames = [
        ("triangle", catalog_frame("regular_polygon", 3)),
        ("square", catalog_frame("regular_polygon", 4)),
        ("hexagon", catalog_frame("regular_polygon", 6)),
        ("simplex2", catalog_frame("simplex", 2)),
        ("simplex3", catalog_frame("simplex", 3)),
        ("A2", catalog_frame("root_system", "A", 2)),
        ("A3", catalog_frame("root_system", "A", 3)),
        ("B2", catalog_frame("root_system", "B", 2)),
        ("C3", catalog_frame("root_system", "C", 3)),
        ("D4", catalog_frame("root_system", "D", 4)),
        ("G2", catalog_frame("root_system", "G2")),
        ("pythagorean345", catalog_frame("pythagorean", 3, 4, 5)),
        ("tetrahedron", catalog_frame("tetrahedron")),
        ("cube", catalog_frame("cube")),
        ("octahedron", catalog_frame("octahedron")),
    ]
    return frames


def suite_frames(seed: int = 0) -> dict:
    checks = []
    rng = random.Random(seed)
    frames = _catalog_corpus()
    for _ in range(20):
        n = rng.randint(2, 6)
        k = rng.randint(0, n - 1)
        cols = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(k)]
        h = saturate(IntLattice(n, cols))
        frames.append(
            (f"summand_{h.basis}", frame_from_summand(h, n, n - h.rank))
        )
    ok = True
    for name, f in frames:
        if f.approximate:
            continue
        alpha = is_tight(f)
        if naimark_check(f) != (alpha == 1):
            ok = False
            _check(checks, f"naimark_mismatch_{name}", False)
    _check(checks, "naimark_iff_1tight", ok)
    tri = catalog_frame("regular_polygon", 3)
    rot = pythagorean_rotation(3, 4, 5)
    rotated = tri.apply_linear([list(r) for r in rot.matrix])
    from .tight_frames import congruent

    _check(checks, "congruent_under_rational_rotation", congruent(tri, rotated))
    pyth = catalog_frame("pythagorean", 3, 4, 5)
    swapped = type(pyth)(
        entries=[pyth.entries[1], pyth.entries[0], pyth.entries[2], pyth.entries[3]]
    )
    _check(checks, "permutation_breaks_congruence", not congruent(pyth, swapped))
    ok = True
    for _ in range(10):
        n = rng.randint(2, 5)
        k = rng.randint(0, n - 1)
        cols = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(k)]
        h = saturate(IntLattice(n, cols))
        f = frame_from_summand(h, n, n - h.rank)
        ok = ok and vanishing_group(f) == h
    _check(checks, "summand_roundtrip", ok)
    return _report("frames", checks)


def suite_nets(seed: int = 0) -> dict:
    checks = []
    for name, g in corpus().items():
        hb = homology_basis(g)
        vs = VanishingSummand.make(g, [], hb)
        r = standard_realization(vs)
        _check(checks, f"harmonic_{name}", r.cochain.is_harmonic())
        _check(checks, f"tight_{name}", r.cochain.tight_constant() == 1)
        _, big_r = distortion(r)
        _check(checks, f"distortion_one_{name}", big_r == 1.0)
        kappa = tree_number(g)
        _check(
            checks,
            f"torus_volume_{name}",
            r.vol_sq() == torus_volume(vs) == Fraction(kappa),
            r.vol_sq(),
        )
        total, _, _ = energy(r)
        _check(checks, f"energy_trace_{name}", total == 2 * vs.d)
        # the homology frame v0 is exactly 1-tight (Gramm check)
        gram = v0_bond_gram(g, hb)
        a_inv = ratmat.inverse(ratmat.mat(hb.gram))
        non_tree = hb.non_tree_edges
        ok = all(
            gram[e][f] == a_inv[i][j]
            for i, e in enumerate(non_tree)
            for j, f in enumerate(non_tree)
        )
        _check(checks, f"v0_dual_gram_{name}", ok)
        v0 = harmonic_cochain_v0(g, hb)
        _check(
            checks,
            f"v0_vanishing_is_dstar_{name}",
            cochain_integer_kernel(v0) == dstar_lattice(g),
        )
    return _report("nets", checks)


def suite_arithmetic(seed: int = 0) -> dict:
    from .surd import square_free_part

    checks = []
    ok = True
    for d in range(1, 101):
        _, m = square_free_part(d)
        if m != 1:
            continue
        claim = three_squares_representable(d)
        witness = three_squares_witness(d, 10)
        if claim != (witness is not None):
            ok = False
            _check(checks, f"three_squares_mismatch_{d}", False)
    _check(checks, "three_squares_vs_bruteforce", ok)
    ok = True
    rng = random.Random(seed)
    for _ in range(25):
        n = [rng.randint(-4, 4) for _ in range(3)]
        from math import gcd

        g = gcd(gcd(n[0], n[1]), n[2])
        if g == 0:
            continue
        n = [x // g for x in n]
        point, conj, d = q3_point(n)  # raises on violation of its identities
        ok = ok and all(
            (z.conjugate() == w) for z, w in zip(point, conj)
        )
    _check(checks, "q3_points_random", ok)
    ok = True
    for _ in range(100):
        nn = rng.randint(2, 8)
        k = rng.randint(1, nn - 1)
        cols = [[rng.randint(-3, 3) for _ in range(nn)] for _ in range(k)]
        h = saturate(IntLattice(nn, cols))
        if h.rank == 0:
            continue
        comp = orth_complement_int(h)
        both = IntLattice(
            nn, [list(c) for c in h.basis] + [list(c) for c in comp.basis]
        )
        inv1 = tuple(x for x in cokernel_invariants(both.basis_matrix()) if x != 1)
        inv2 = dual_quotient(h).nontrivial()
        if inv1 != inv2:
            ok = False
        if covolume_squared(h) != dual_quotient(h).order:
            ok = False
    _check(checks, "complement_identity_random_100", ok)
    return _report("arithmetic", checks)


SUITES = {
    "jacobian": suite_jacobian,
    "frames": suite_frames,
    "nets": suite_nets,
    "arithmetic": suite_arithmetic,
}


def run_suite(name: str, seed: int = 0) -> dict:
    if name == "all":
        reports = [fn(seed) for fn in SUITES.values()]
        return {
            "suite": "all",
            "checks": [c for r in reports for c in r["checks"]],
            "passed": all(r["passed"] for r in reports),
        }
    if name not in SUITES:
        raise UnknownSuiteError(
            f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'"
        )
    return SUITES[name](seed)


def _report(name: str, checks: list) -> dict:
    return {
        "suite": name,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }
