"""Graph construction, chains, boundary operators, homology basis, formats."""

import random
from fractions import Fraction

import pytest

from crystalframes import ratmat
from crystalframes.errors import (
    DegreeTooLowError,
    DisconnectedGraphError,
    DuplicateEdgeIdError,
    GraphParseError,
)
from crystalframes.exact_lattice import IntLattice, hnf
from crystalframes.graph_core import (
    Chain0,
    Chain1,
    boundary,
    build_graph,
    coboundary_adjoint,
    graph_to_json,
    graph_to_text,
    homology_basis,
    parse_graph_json,
    parse_graph_text,
)
from crystalframes.named_graphs import (
    bouquet,
    complete_graph,
    corpus,
    delta_graph,
    k4_paper_labels,
    random_multigraph,
)


def test_k4_betti():
    g = complete_graph(4)
    assert g.betti() == 3


def test_low_degree_rejected():
    with pytest.raises(DegreeTooLowError) as info:
        build_graph([(1, 0, 1), (2, 0, 1)], 2)
    assert info.value.vertex in (0, 1)
    # explicitly relaxed
    g = build_graph([(1, 0, 1), (2, 0, 1)], 2, allow_low_degree=True)
    assert g.betti() == 1


def test_delta4_betti():
    assert delta_graph(4).betti() == 3


def test_duplicate_id_rejected():
    with pytest.raises(DuplicateEdgeIdError):
        build_graph([(1, 0, 1), (1, 1, 0), (2, 0, 1)], 2)


def test_disconnected_rejected():
    edges = [(1, 0, 1), (2, 0, 1), (3, 0, 1), (4, 2, 3), (5, 2, 3), (6, 2, 3)]
    with pytest.raises(DisconnectedGraphError):
        build_graph(edges, 4)


def test_boundary_single_edge_and_linearity():
    g = delta_graph(4)
    c = Chain1({0: Fraction(1)})
    assert boundary(g, c) == Chain0({1: Fraction(1), 0: Fraction(-1)})
    assert boundary(g, c.scale(2)) == Chain0({1: Fraction(2), 0: Fraction(-2)})


def test_boundary_kills_cycles():
    for g in corpus().values():
        hb = homology_basis(g)
        for c in hb.cycles:
            assert boundary(g, c).is_zero()


def test_coboundary_formula_on_bouquet_like():
    g = delta_graph(4)
    # vertex 0 has four outgoing forward edges: d* x0 = -(e1+e2+e3+e4)
    out = coboundary_adjoint(g, Chain0({0: Fraction(1)}))
    assert out == Chain1({i: Fraction(-1) for i in range(4)})
    # constants are in the kernel
    const = Chain0({0: Fraction(1), 1: Fraction(1)})
    assert coboundary_adjoint(g, const).is_zero()


def test_adjointness_random():
    rng = random.Random(21)
    for g in (k4_paper_labels(), delta_graph(5), bouquet(3)):
        for _ in range(100):
            c1 = Chain1(
                {
                    i: Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                    for i in range(g.n_edges)
                }
            )
            a0 = Chain0(
                {
                    v: Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                    for v in range(g.vertex_count)
                }
            )
            assert coboundary_adjoint(g, a0).inner(c1) == a0.inner(boundary(g, c1))


def test_homology_basis_dual_property():
    for name, g in corpus().items():
        hb = homology_basis(g)
        assert hb.b1 == g.betti()
        for i, ci in enumerate(hb.cycles):
            for j, ej in enumerate(hb.non_tree_edges):
                expected = Fraction(int(i == j))
                assert ci.coeffs.get(ej, Fraction(0)) == expected, name
        # gram symmetric positive definite with integer entries
        gram = hb.gram
        assert all(gram[i][j] == gram[j][i] for i in range(hb.b1) for j in range(hb.b1))
        for k in range(1, hb.b1 + 1):
            minor = [row[:k] for row in gram[:k]]
            assert ratmat.det(ratmat.mat(minor)) > 0, name


def test_betti_formula_random():
    for seed in range(15):
        g = random_multigraph(seed)
        assert g.betti() == g.n_edges - g.vertex_count + 1
        assert homology_basis(g).b1 == g.betti()


def test_delta_basis_matches_paper_span():
    """The consecutive-difference cycles e_i - e_{i+1} span the same lattice
    and have the tridiagonal (2, -1) Gramm after the change of basis."""
    d = 4
    g = delta_graph(d + 1)
    hb = homology_basis(g)
    ours = IntLattice(
        g.n_edges, [[int(x) for x in c.dense(g.n_edges)] for c in hb.cycles]
    )
    paper = []
    for i in range(d):
        v = [0] * g.n_edges
        v[i] = 1
        v[i + 1] = -1
        paper.append(v)
    assert ours == IntLattice(g.n_edges, paper)
    # p_1 = -c_1, p_i = c_{i-1} - c_i in our basis; conjugating the Gramm
    # produces the paper's tridiagonal matrix
    t = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        if i > 0:
            t[i - 1][i] = Fraction(1)
        t[i][i] = Fraction(-1)
    conj = ratmat.matmul(
        ratmat.matmul(ratmat.transpose(t), ratmat.mat(hb.gram)), t
    )
    for i in range(d):
        for j in range(d):
            expected = 2 if i == j else (-1 if abs(i - j) == 1 else 0)
            assert conj[i][j] == expected


def test_k4_paper_cycles():
    g = k4_paper_labels()
    hb = homology_basis(g)
    # our BFS basis reproduces the closed paths c1, c2, c3 exactly
    assert hb.cycles[0] == Chain1({3: Fraction(1), 2: Fraction(-1), 1: Fraction(1)})
    assert hb.cycles[1] == Chain1({4: Fraction(1), 0: Fraction(-1), 2: Fraction(1)})
    assert hb.cycles[2] == Chain1({5: Fraction(1), 1: Fraction(-1), 0: Fraction(1)})
    c4 = -(hb.cycles[0] + hb.cycles[1] + hb.cycles[2])
    assert c4 == Chain1({3: Fraction(-1), 4: Fraction(-1), 5: Fraction(-1)})
    all_cycles = list(hb.cycles) + [c4]
    for i in range(4):
        for j in range(4):
            expected = 3 if i == j else -1
            assert all_cycles[i].inner(all_cycles[j]) == expected


def test_text_format_roundtrip():
    g = k4_paper_labels()
    text = graph_to_text(g)
    g2 = parse_graph_text(text)
    assert [(e.id, e.tail, e.head) for e in g2.edges] == [
        (e.id, e.tail, e.head) for e in g.edges
    ]


def test_json_format_roundtrip_and_unknown_fields():
    g = delta_graph(4)
    g2 = parse_graph_json(graph_to_json(g))
    assert g2.vertex_count == 2 and g2.n_edges == 4
    with pytest.raises(GraphParseError):
        parse_graph_json('{"vertices": 2, "edges": [[1,0,1]], "color": "red"}')


def test_text_parse_errors_carry_line_numbers():
    with pytest.raises(GraphParseError) as info:
        parse_graph_text("V 2\nE 1 0 1\nE oops\n")
    assert info.value.line == 3
    with pytest.raises(GraphParseError) as info:
        parse_graph_text("E 1 0 1\n")
    assert info.value.line == 1
    with pytest.raises(GraphParseError):
        parse_graph_text("V 2\nX 1\n")


def test_loops_count_twice_in_degree():
    g = bouquet(2)
    assert g.degree(0) == 4
