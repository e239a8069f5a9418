"""Attributed graphs and the vertex-relabeling action on them.

A Graph holds a vertex count, a set of undirected edges (stored as (i, j)
tuples with i <= j; i == j only when self-loops are enabled), optional
categorical vertex attributes, and optional categorical edge attributes
covering every edge.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional, Sequence, Tuple

from .perms import DegreeMismatch, Perm

Edge = Tuple[int, int]


def _normalize_edge(e) -> Edge:
    i, j = e
    return (i, j) if i <= j else (j, i)


class Graph:
    """Immutable-by-convention attributed graph on vertex set {0..n-1}."""

    __slots__ = ("n", "edges", "vertex_attrs", "edge_attrs", "self_loops_allowed")

    def __init__(
        self,
        n: int,
        edges: Iterable = (),
        vertex_attrs: Optional[Sequence[int]] = None,
        edge_attrs: Optional[Mapping] = None,
        self_loops_allowed: bool = False,
    ):
        edge_list = [_normalize_edge(e) for e in edges]
        edge_set = frozenset(edge_list)
        if len(edge_list) != len(edge_set):
            raise ValueError("duplicate edges")
        for i, j in edge_set:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) outside vertex range [0, {n})")
            if i == j and not self_loops_allowed:
                raise ValueError(f"self-loop at {i} but self-loops are disabled")
        self.n = n
        self.edges = edge_set
        if vertex_attrs is not None:
            vertex_attrs = tuple(vertex_attrs)
            if len(vertex_attrs) != n:
                raise ValueError("vertex attribute count != vertex count")
            if any(a < 0 for a in vertex_attrs):
                raise ValueError("negative vertex attribute")
        self.vertex_attrs = vertex_attrs
        if edge_attrs is not None:
            edge_attrs = {_normalize_edge(e): a for e, a in edge_attrs.items()}
            if set(edge_attrs) != edge_set:
                raise ValueError("edge attributes must cover exactly the edge set")
            if any(a < 0 for a in edge_attrs.values()):
                raise ValueError("negative edge attribute")
        self.edge_attrs = edge_attrs

        self.self_loops_allowed = self_loops_allowed

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def has_vertex_attrs(self) -> bool:
        return self.vertex_attrs is not None

    @property
    def has_edge_attrs(self) -> bool:
        return self.edge_attrs is not None

    def key(self) -> tuple:
        """Total-order encoding: graphs are compared/canonized under this key."""
        return (
            self.n,
            self.vertex_attrs if self.vertex_attrs is not None else (),
            tuple(sorted(self.edges)),
            tuple(sorted(self.edge_attrs.items())) if self.edge_attrs else (),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.edges == other.edges
            and self.vertex_attrs == other.vertex_attrs
            and self.edge_attrs == other.edge_attrs
            and self.self_loops_allowed == other.self_loops_allowed
        )

    __hash__ = None  # not hashable: use key()

    def __repr__(self) -> str:
        return (
            f"Graph(n={self.n}, edges={sorted(self.edges)!r},"
            f" vertex_attrs={self.vertex_attrs!r}, edge_attrs={self.edge_attrs!r})"
        )


def apply_perm(s: Perm, g: Graph) -> Graph:
    """Relabel: edge {i, j} moves to {s(i), s(j)}; the attribute of vertex i
    moves to position s(i). A left group action."""
    if len(s) != g.n:
        raise DegreeMismatch(f"permutation degree {len(s)} != graph order {g.n}")
    edges = [(s[i], s[j]) for i, j in g.edges]
    vertex_attrs = None
    if g.vertex_attrs is not None:
        out = [0] * g.n
        for i, a in enumerate(g.vertex_attrs):
            out[s[i]] = a
        vertex_attrs = out
    edge_attrs = None
    if g.edge_attrs is not None:
        edge_attrs = {(s[i], s[j]): a for (i, j), a in g.edge_attrs.items()}
    return Graph(g.n, edges, vertex_attrs, edge_attrs, g.self_loops_allowed)


def graph_pairs(n: int, self_loops: bool = False):
    """Vertex pairs in the model coding order: for each i, all j <= i."""
    for i in range(n):
        for j in range(i + 1 if self_loops else i):
            yield (j, i) if j < i else (i, i)


def pair_count(n: int, self_loops: bool = False) -> int:
    return n * (n + 1) // 2 if self_loops else n * (n - 1) // 2
