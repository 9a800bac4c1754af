"""Finite multigraphs with chain groups, boundary operators, homology basis.

A graph is a connected multigraph (loops and parallel edges allowed) whose
undirected edges come with a fixed orientation: the forward directed edges
E^o, in input order.  The reverse of forward edge e is written ebar; chains
are stored over E^o only, with the convention that the coefficient of ebar
is minus the coefficient of e.  Every vertex must have degree >= 3 unless
construction is explicitly relaxed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BadVertexError,
    DegreeTooLowError,
    DimensionMismatchError,
    DisconnectedGraphError,
    DuplicateEdgeIdError,
    GraphParseError,
)
from .ratmat import frac


@dataclass(frozen=True)
class EdgeRecord:
    id: int
    tail: int   # o(e) for the forward direction
    head: int   # t(e)


class FiniteGraph:
    """Validated finite connected multigraph with a fixed orientation."""

    def __init__(self, vertex_count: int, edges: list[EdgeRecord]):
        self.vertex_count = vertex_count
        self.edges = tuple(edges)
        # E_x as (edge_index, sign): sign +1 when the forward edge leaves x,
        # -1 when it enters x (i.e. the reversed edge leaves x).
        out: list[list[tuple[int, int]]] = [[] for _ in range(vertex_count)]
        for i, e in enumerate(self.edges):
            out[e.tail].append((i, +1))
            out[e.head].append((i, -1))
        self.out_edges = tuple(tuple(o) for o in out)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def betti(self) -> int:
        return self.n_edges - self.vertex_count + 1

    def degree(self, x: int) -> int:
        return len(self.out_edges[x])

    def origin(self, idx: int, sign: int) -> int:
        e = self.edges[idx]
        return e.tail if sign > 0 else e.head

    def terminus(self, idx: int, sign: int) -> int:
        e = self.edges[idx]
        return e.head if sign > 0 else e.tail

    def check_vertex(self, x: int) -> None:
        if not (0 <= x < self.vertex_count):
            raise BadVertexError(f"vertex {x} out of range")

    def __repr__(self):
        return f"FiniteGraph(V={self.vertex_count}, E={self.n_edges})"


def build_graph(
    edge_list, vertex_count: int, allow_low_degree: bool = False
) -> FiniteGraph:
    """Validate and build a FiniteGraph from (id, tail, head) records."""
    records = []
    seen_ids = set()
    for item in edge_list:
        eid, a, b = item
        if eid in seen_ids:
            raise DuplicateEdgeIdError(f"duplicate edge id {eid}")
        seen_ids.add(eid)
        if not (0 <= a < vertex_count and 0 <= b < vertex_count):
            raise GraphParseError(f"edge {eid} endpoint out of range")
        records.append(EdgeRecord(int(eid), int(a), int(b)))
    g = FiniteGraph(vertex_count, records)
    # connectivity by undirected BFS
    if vertex_count > 0:
        seen = {0}
        queue = [0]
        while queue:
            x = queue.pop(0)
            for idx, sign in g.out_edges[x]:
                y = g.terminus(idx, sign)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != vertex_count:
            missing = sorted(set(range(vertex_count)) - seen)
            raise DisconnectedGraphError(f"vertices {missing} unreachable from 0")
    if not allow_low_degree:
        for x in range(vertex_count):
            if g.degree(x) < 3:
                raise DegreeTooLowError(x, g.degree(x))
    return g


# -- chains -------------------------------------------------------------------

@dataclass
class Chain1:
    """1-chain over the forward edges, rational coefficients."""

    coeffs: dict[int, Fraction] = field(default_factory=dict)

    @classmethod
    def from_dense(cls, values) -> "Chain1":
        return cls({i: frac(v) for i, v in enumerate(values) if v})

    def dense(self, n_edges: int) -> list[Fraction]:
        return [self.coeffs.get(i, Fraction(0)) for i in range(n_edges)]

    def __add__(self, other: "Chain1") -> "Chain1":
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            v = out.get(i, Fraction(0)) + c
            if v:
                out[i] = v
            else:
                out.pop(i, None)
        return Chain1(out)

    def __neg__(self) -> "Chain1":
        return Chain1({i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: "Chain1") -> "Chain1":
        return self + (-other)

    def scale(self, c) -> "Chain1":
        c = frac(c)
        return Chain1({i: c * v for i, v in self.coeffs.items()} if c else {})

    def inner(self, other: "Chain1") -> Fraction:
        """<.,.> with the orientation as an orthonormal basis."""
        small, big = sorted((self.coeffs, other.coeffs), key=len)
        return sum((c * big[i] for i, c in small.items() if i in big), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, Chain1) and self.coeffs == other.coeffs


@dataclass
class Chain0:
    """0-chain: rational coefficients on vertices."""

    coeffs: dict[int, Fraction] = field(default_factory=dict)

    @classmethod
    def from_dense(cls, values) -> "Chain0":
        return cls({i: frac(v) for i, v in enumerate(values) if v})

    def dense(self, n_vertices: int) -> list[Fraction]:
        return [self.coeffs.get(i, Fraction(0)) for i in range(n_vertices)]

    def augmentation(self) -> Fraction:
        return sum(self.coeffs.values(), Fraction(0))

    def inner(self, other: "Chain0") -> Fraction:
        small, big = sorted((self.coeffs, other.coeffs), key=len)
        return sum((c * big[i] for i, c in small.items() if i in big), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, Chain0) and self.coeffs == other.coeffs


def boundary(g: FiniteGraph, c: Chain1) -> Chain0:
    """d(e) = t(e) - o(e), extended linearly."""
    out: dict[int, Fraction] = {}
    for i, coeff in c.coeffs.items():
        if i >= g.n_edges:
            raise DimensionMismatchError(f"edge index {i} out of range")
        e = g.edges[i]
        for v, s in ((e.head, coeff), (e.tail, -coeff)):
            val = out.get(v, Fraction(0)) + s
            if val:
                out[v] = val
            else:
                out.pop(v, None)
    return Chain0(out)


def coboundary_adjoint(g: FiniteGraph, a: Chain0) -> Chain1:
    """The adjoint of the boundary: on a forward edge e the value is
    a(t(e)) - a(o(e))."""
    for v in a.coeffs:
        if v >= g.vertex_count:
            raise DimensionMismatchError(f"vertex {v} out of range")
    out = {}
    for i, e in enumerate(g.edges):
        val = a.coeffs.get(e.head, Fraction(0)) - a.coeffs.get(e.tail, Fraction(0))
        if val:
            out[i] = val
    return Chain1(out)


# -- homology -----------------------------------------------------------------

@dataclass
class HomologyBasis:
    spanning_tree: frozenset          # forward edge indices in the tree
    non_tree_edges: tuple             # forward edge indices, input order
    cycles: tuple                     # Chain1 per non-tree edge
    gram: list                        # integer b1 x b1 matrix of inner products

    @property
    def b1(self) -> int:
        return len(self.cycles)


def homology_basis(g: FiniteGraph) -> HomologyBasis:
    """Deterministic cycle basis from the BFS tree rooted at vertex 0.

    Cycle i traverses its non-tree edge forward, closing up through the
    tree, so <c_i, e_j> = delta_ij on non-tree edges.
    """
    parent: dict[int, tuple[int, int]] = {}  # vertex -> (edge_idx, sign) into it
    tree: set[int] = set()
    seen = {0}
    queue = [0]
    while queue:
        x = queue.pop(0)
        for idx, sign in g.out_edges[x]:
            y = g.terminus(idx, sign)
            if y not in seen:
                seen.add(y)
                tree.add(idx)
                parent[y] = (idx, sign)
                queue.append(y)

    def chain_to_root(v: int) -> Chain1:
        coeffs: dict[int, Fraction] = {}
        while v != 0:
            idx, sign = parent[v]
            # the tree edge carries v back toward the root: subtract it
            coeffs[idx] = coeffs.get(idx, Fraction(0)) - Fraction(sign)
            v = g.origin(idx, sign)
        return Chain1({i: c for i, c in coeffs.items() if c})

    non_tree = tuple(i for i in range(g.n_edges) if i not in tree)
    cycles = []
    for i in non_tree:
        e = g.edges[i]
        c = Chain1({i: Fraction(1)}) + chain_to_root(e.head) - chain_to_root(e.tail)
        cycles.append(c)
    gram = [[int(ci.inner(cj)) for cj in cycles] for ci in cycles]
    return HomologyBasis(frozenset(tree), non_tree, tuple(cycles), gram)


# -- external text/JSON format -------------------------------------------------

def parse_graph_text(text: str, allow_low_degree: bool = False) -> FiniteGraph:
    """Parse the line format: `V <n>` then one `E <id> <a> <b>` per edge."""
    vertex_count = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "V":
            if vertex_count is not None:
                raise GraphParseError("duplicate V record", lineno)
            if len(parts) != 2 or not parts[1].isdigit():
                raise GraphParseError("malformed V record", lineno)
            vertex_count = int(parts[1])
        elif parts[0] == "E":
            if vertex_count is None:
                raise GraphParseError("E record before V record", lineno)
            if len(parts) != 4:
                raise GraphParseError("malformed E record", lineno)
            try:
                eid, a, b = (int(p) for p in parts[1:])
            except ValueError:
                raise GraphParseError("non-integer E record", lineno) from None
            edges.append((eid, a, b))
        else:
            raise GraphParseError(f"unknown record type {parts[0]!r}", lineno)
    if vertex_count is None:
        raise GraphParseError("missing V record")
    return build_graph(edges, vertex_count, allow_low_degree=allow_low_degree)


def parse_graph_json(text: str, allow_low_degree: bool = False) -> FiniteGraph:
    """Parse {"vertices": n, "edges": [[id, a, b], ...]}; unknown keys rejected."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"invalid JSON: {exc}", exc.lineno) from None
    if not isinstance(data, dict):
        raise GraphParseError("top-level JSON must be an object")
    unknown = set(data) - {"vertices", "edges"}
    if unknown:
        raise GraphParseError(f"unknown fields {sorted(unknown)}")
    if "vertices" not in data or "edges" not in data:
        raise GraphParseError("missing 'vertices' or 'edges'")
    edges = []
    for rec in data["edges"]:
        if not (isinstance(rec, list) and len(rec) == 3):
            raise GraphParseError(f"malformed edge record {rec!r}")
        edges.append(tuple(int(x) for x in rec))
    return build_graph(edges, int(data["vertices"]), allow_low_degree=allow_low_degree)


def graph_to_text(g: FiniteGraph) -> str:
    lines = [f"V {g.vertex_count}"]
    lines += [f"E {e.id} {e.tail} {e.head}" for e in g.edges]
    return "\n".join(lines) + "\n"


def graph_to_json(g: FiniteGraph) -> str:
    return json.dumps(
        {"vertices": g.vertex_count, "edges": [[e.id, e.tail, e.head] for e in g.edges]},
        sort_keys=True,
    )
