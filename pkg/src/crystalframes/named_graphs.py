"""Named base graphs used throughout the tests, demos, and CLI suites."""

from __future__ import annotations

import random

from .graph_core import FiniteGraph, build_graph


def delta_graph(n_parallel: int) -> FiniteGraph:
    """Two vertices joined by n parallel edges, all oriented 0 -> 1.

    Delta_2 needs allow_low_degree since both vertices have degree 2.
    """
    edges = [(i + 1, 0, 1) for i in range(n_parallel)]
    return build_graph(edges, 2, allow_low_degree=n_parallel < 3)


def theta_graph() -> FiniteGraph:
    """Two vertices, three parallel edges (the honeycomb quotient)."""
    return delta_graph(3)


honeycomb_quotient = theta_graph


def complete_graph(n: int) -> FiniteGraph:
    edges = []
    eid = 1
    for a in range(n):
        for b in range(a + 1, n):
            edges.append((eid, a, b))
            eid += 1
    return build_graph(edges, n, allow_low_degree=n < 4)


def k4_paper_labels() -> FiniteGraph:
    """K4 with the spoke/triangle edge labelling used for the closed paths
    c1 = (e2, f1, e3bar), c2 = (e3, f2, e1bar), c3 = (e1, f3, e2bar),
    c4 = (f1bar, f2bar, f3bar): spokes e_i from the hub 0 to i, triangle
    f1: 2->3, f2: 3->1, f3: 1->2."""
    edges = [
        (1, 0, 1),  # e1
        (2, 0, 2),  # e2
        (3, 0, 3),  # e3
        (4, 2, 3),  # f1
        (5, 3, 1),  # f2
        (6, 1, 2),  # f3
    ]
    return build_graph(edges, 4)


def bouquet(n_loops: int) -> FiniteGraph:
    """Single vertex with n loop edges; its homology lattice is Z^n."""
    edges = [(i + 1, 0, 0) for i in range(n_loops)]
    return build_graph(edges, 1, allow_low_degree=n_loops < 2)


def kagome_quotient() -> FiniteGraph:
    """Quotient graph of the kagome lattice: a doubled triangle.

    Edge order/orientation matches the harmonicity relations
    z1+z6 = z3+z4, z2+z4 = z1+z5, z3+z5 = z2+z6 of the plane net.
    """
    edges = [
        (1, 0, 1),
        (2, 1, 2),
        (3, 2, 0),
        (4, 1, 0),
        (5, 2, 1),
        (6, 0, 2),
    ]
    return build_graph(edges, 3)


def dice_quotient() -> FiniteGraph:
    """Quotient graph of the dice (T3) lattice: triple edges 1->0 and 2->0,
    giving the relations z1+z2+z3 = 0 and z4+z5+z6 = 0."""
    edges = [
        (1, 1, 0),
        (2, 1, 0),
        (3, 1, 0),
        (4, 2, 0),
        (5, 2, 0),
        (6, 2, 0),
    ]
    return build_graph(edges, 3)


def cube_graph() -> FiniteGraph:
    """The 3-cube skeleton: 8 vertices, 12 edges, 3-regular."""
    edges = []
    eid = 1
    for v in range(8):
        for bit in range(3):
            w = v ^ (1 << bit)
            if v < w:
                edges.append((eid, v, w))
                eid += 1
    return build_graph(edges, 8)


def k33_graph() -> FiniteGraph:
    edges = []
    eid = 1
    for a in range(3):
        for b in range(3):
            edges.append((eid, a, 3 + b))
            eid += 1
    return build_graph(edges, 6)


def prism_graph() -> FiniteGraph:
    """Triangular prism: two triangles joined by a matching."""
    edges = [
        (1, 0, 1), (2, 1, 2), (3, 2, 0),
        (4, 3, 4), (5, 4, 5), (6, 5, 3),
        (7, 0, 3), (8, 1, 4), (9, 2, 5),
    ]
    return build_graph(edges, 6)


def corpus() -> dict[str, FiniteGraph]:
    """The standing example corpus (every graph satisfies degree >= 3)."""
    return {
        "theta": theta_graph(),
        "delta4": delta_graph(4),
        "delta5": delta_graph(5),
        "k4": k4_paper_labels(),
        "k5": complete_graph(5),
        "kagome": kagome_quotient(),
        "dice": dice_quotient(),
        "cube": cube_graph(),
        "k33": k33_graph(),
        "prism": prism_graph(),
        "bouquet3": bouquet(3),
    }


def random_multigraph(seed: int, max_vertices: int = 8) -> FiniteGraph:
    """Seeded random connected multigraph with min degree 3.

    Builds a random spanning tree, then adds random (possibly parallel or
    loop) edges until every vertex has degree >= 3, plus a couple extra.
    """
    rng = random.Random(seed)
    n = rng.randint(4, max_vertices)
    edges = []
    eid = 1
    for v in range(1, n):
        u = rng.randrange(v)
        edges.append((eid, u, v))
        eid += 1
    degree = [0] * n
    for _, a, b in edges:
        degree[a] += 1
        degree[b] += 1

    def add_edge(a, b):
        nonlocal eid
        edges.append((eid, a, b))
        eid += 1
        degree[a] += 1
        degree[b] += 1  # a loop counts twice at its vertex

    while min(degree) < 3:
        a = min(range(n), key=lambda v: (degree[v], v))
        b = rng.randrange(n)
        add_edge(a, b)
    for _ in range(rng.randint(1, 3)):
        add_edge(rng.randrange(n), rng.randrange(n))
    return build_graph(edges, n)
