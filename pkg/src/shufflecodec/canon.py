"""Canonical orderings and automorphism groups.

Graphs are canonized by color refinement plus individualization search: refine
to an equitable coloring, branch on a target cell, and take the minimum leaf
form under the fixed total order of Graph.key(). Equal-form leaves certify
automorphisms, which both prune the search and generate Aut. Sequences
(strings) are canonized by stable sorting.

The canonical form and the automorphism generators returned for a graph depend
only on its isomorphism class representative, never on the input labeling:
generators are recomputed on the canonical graph itself. That determinism is
what makes compressed bitstreams identical across isomorphic inputs.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .graphs import Graph, apply_perm
from .perms import (
    DegreeMismatch,
    Perm,
    PermGroup,
    StabilizerChain,
    compose,
    group_order,
    identity,
    inverse,
    schreier_sims,
)


@dataclass(frozen=True)
class Canonized:
    """Result of canonizing a graph: the class representative, a permutation
    mapping the input onto it, and the representative's automorphism group."""

    canon_graph: Graph
    canon_perm: Perm
    aut_generators: PermGroup
    aut_order: int
    chain: StabilizerChain


class SizeError(ValueError):
    pass


def _adjacency(g: Graph) -> List[List[Tuple[int, int]]]:
    adj: List[List[Tuple[int, int]]] = [[] for _ in range(g.n)]
    for i, j in g.edges:
        if i == j:
            continue  # loops are folded into vertex colors
        a = g.edge_attrs[(i, j)] if g.edge_attrs is not None else 0
        adj[i].append((j, a))
        adj[j].append((i, a))
    return adj


def _initial_colors(g: Graph) -> List[int]:
    loops = {i for i, j in g.edges if i == j}
    keys = [
        (g.vertex_attrs[v] if g.vertex_attrs is not None else 0, v in loops)
        for v in range(g.n)
    ]
    rank = {key: c for c, key in enumerate(sorted(set(keys)))}
    return [rank[k] for k in keys]


def _refine(adj: List[List[Tuple[int, int]]], colors: List[int]) -> List[int]:
    """1-WL refinement to the coarsest stable coloring finer than the input.

    Signatures are full sorted multisets of (neighbor color, edge attribute)
    pairs; new color ids follow signature order, so the result is canonical
    for isomorphic (graph, coloring) pairs.
    """
    n = len(colors)
    num = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted((colors[u], a) for u, a in adj[v])))
            for v in range(n)
        ]
        rank = {sig: c for c, sig in enumerate(sorted(set(sigs)))}
        new = [rank[sigs[v]] for v in range(n)]
        if len(rank) == num:
            return new
        colors, num = new, len(rank)


def _individualize(colors: List[int], v: int) -> List[int]:
    cv = colors[v]
    return [
        c if (c < cv or (c == cv and u == v)) else c + 1
        for u, c in enumerate(colors)
    ]


def _target_cell(colors: List[int]) -> List[int]:
    cells: Dict[int, List[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    candidates = [vs for vs in cells.values() if len(vs) > 1]
    return min(candidates, key=lambda vs: (len(vs), min(vs)))


def _orbit_closure(points: List[int], gens: List[Perm]) -> set:
    seen = set(points)
    frontier = list(points)
    while frontier:
        w = frontier.pop()
        for g in gens:
            img = g[w]
            if img not in seen:
                seen.add(img)
                frontier.append(img)
    return seen


def _leaf_key(g: Graph, perm: Perm) -> tuple:
    """Equals apply_perm(perm, g).key() without building the Graph."""
    edges = sorted(
        (perm[i], perm[j]) if perm[i] <= perm[j] else (perm[j], perm[i])
        for i, j in g.edges
    )
    if g.vertex_attrs is not None:
        vattrs = [0] * g.n
        for i, a in enumerate(g.vertex_attrs):
            vattrs[perm[i]] = a
        vattrs = tuple(vattrs)
    else:
        vattrs = ()
    if g.edge_attrs:
        eattrs = tuple(
            sorted(
                (
                    (perm[i], perm[j]) if perm[i] <= perm[j] else (perm[j], perm[i]),
                    a,
                )
                for (i, j), a in g.edge_attrs.items()
            )
        )
    else:
        eattrs = ()
    return (g.n, vattrs, tuple(edges), eattrs)


def _search(g: Graph) -> Tuple[Perm, List[Perm]]:
    """Individualization-refinement: returns the canonical labeling (the
    permutation minimizing apply(s, g).key() over the leaves) and a list of
    discovered automorphisms of g (complete as a generating set)."""
    adj = _adjacency(g)
    best: Optional[Tuple[tuple, Perm]] = None
    first: Optional[Tuple[tuple, Perm]] = None
    auts: List[Perm] = []
    aut_set = set()

    def note_aut(p1: Perm, p2: Perm) -> None:
        a = compose(inverse(p1), p2)
        if any(i != x for i, x in enumerate(a)) and a not in aut_set:
            aut_set.add(a)
            auts.append(a)

    def leaf(colors: List[int]) -> None:
        nonlocal best, first
        perm = tuple(colors)
        key = _leaf_key(g, perm)
        if first is None:
            first = (key, perm)
        elif key == first[0] and perm != first[1]:
            note_aut(first[1], perm)
        if best is None or key < best[0]:
            best = (key, perm)
        elif key == best[0] and perm != best[1]:
            note_aut(best[1], perm)

    def rec(colors: List[int], fixed: List[int]) -> None:
        if len(set(colors)) == len(colors):
            leaf(colors)
            return
        cell = _target_cell(colors)
        processed: List[int] = []
        prefix_gens: List[Perm] = []
        seen_auts = 0
        for v in sorted(cell):
            if processed:
                while seen_auts < len(auts):
                    a = auts[seen_auts]
                    seen_auts += 1
                    if all(a[u] == u for u in fixed):
                        prefix_gens.append(a)
                if prefix_gens and v in _orbit_closure(processed, prefix_gens):
                    continue
            rec(_refine(adj, _individualize(colors, v)), fixed + [v])
            processed.append(v)

    rec(_refine(adj, _initial_colors(g)), [])
    assert best is not None
    return best[1], auts


def canonize(g: Graph) -> Canonized:
    """Canonical form, canonical permutation, and Aut of the canonical form."""
    perm, auts = _search(g)
    canon_graph = apply_perm(perm, g)
    if not auts:
        chain = schreier_sims(PermGroup.trivial(g.n))
        return Canonized(canon_graph, perm, PermGroup.trivial(g.n), 1, chain)
    if perm == identity(g.n):
        canon_auts = auts
    else:
        _, canon_auts = _search(canon_graph)
    grp = PermGroup(g.n, tuple(canon_auts))
    chain = schreier_sims(grp)
    return Canonized(canon_graph, perm, grp, group_order(chain), chain)


def canon_equal(a: Graph, b: Graph) -> bool:
    """Isomorphism test via canonical forms."""
    if a.n != b.n:
        return False
    return canonize(a).canon_graph == canonize(b).canon_graph


def canonize_bruteforce(g: Graph) -> Canonized:
    """Oracle canonizer: minimum over all n! relabelings; n <= 9."""
    if g.n > 9:
        raise SizeError(f"brute-force canonization limited to n <= 9, got {g.n}")
    from itertools import permutations

    g_key = g.key()
    best_key = None
    best_perm = None
    auts = []
    for s in permutations(range(g.n)):
        key = apply_perm(s, g).key()
        if best_key is None or key < best_key:
            best_key, best_perm = key, s
        if key == g_key:
            auts.append(s)
    grp = PermGroup(g.n, tuple(a for a in auts if a != identity(g.n)))
    chain = schreier_sims(grp)
    assert group_order(chain) == len(auts)
    return Canonized(
        apply_perm(best_perm, g), best_perm, grp, len(auts), chain
    )


def embed_edge_colors(g: Graph) -> Tuple[Graph, Tuple[Tuple[int, int], ...]]:
    """Embed an edge-colored graph into a vertex-colored one.

    Each edge becomes a fresh vertex carrying the edge's attribute, adjacent
    to the edge's endpoints. Original vertex colors and edge colors live in
    disjoint ranges so no spurious symmetry arises. Returns the embedded graph
    and the edge order assigning edge k to vertex n + k.
    """
    if g.edge_attrs is None:
        raise ValueError("graph has no edge attributes to embed")
    base = (max(g.vertex_attrs) + 1) if g.vertex_attrs else 1
    edge_order = tuple(sorted(g.edges))
    attrs = list(g.vertex_attrs) if g.vertex_attrs is not None else [0] * g.n
    edges = []
    for k, (i, j) in enumerate(edge_order):
        ve = g.n + k
        attrs.append(base + g.edge_attrs[(i, j)])
        edges.append((i, ve))
        if j != i:
            edges.append((j, ve))
    return (
        Graph(g.n + len(edge_order), edges, attrs),
        edge_order,
    )


def canonize_via_embedding(g: Graph) -> Canonized:
    """Canonize an edge-attributed graph through its vertex-colored embedding.

    The embedding's canonical order restricted to the original vertices is a
    valid canonical order of the original, and Aut restricts isomorphically.
    """
    embedded, _ = embed_edge_colors(g)
    c = canonize(embedded)
    originals = list(range(g.n))
    rank = {v: r for r, v in enumerate(sorted(originals, key=lambda v: c.canon_perm[v]))}
    perm = tuple(rank[v] for v in originals)
    restricted = tuple(
        tuple(a[v] for v in originals) for a in c.aut_generators.generators
    )
    grp = PermGroup(g.n, restricted)
    chain = schreier_sims(grp)
    result = Canonized(apply_perm(perm, g), perm, grp, group_order(chain), chain)
    assert result.aut_order == c.aut_order
    return result


@dataclass(frozen=True)
class SequenceCanonized:
    """Canonized sequence: the stable sort, the permutation achieving it, and
    the automorphism group (a product of symmetric groups on equal runs)."""

    canon_seq: Sequence
    canon_perm: Perm
    aut_order: int
    aut_generators: PermGroup
    chain: StabilizerChain


def apply_sequence(s: Perm, x: Sequence) -> Sequence:
    """The rearrangement action: the element at position i moves to s(i)."""
    if len(s) != len(x):
        raise DegreeMismatch(
            f"permutation degree {len(s)} != sequence length {len(x)}"
        )
    out = [None] * len(x)
    for i, item in enumerate(x):
        out[s[i]] = item
    if isinstance(x, str):
        return "".join(out)
    return tuple(out)


def canonize_string(x: Sequence) -> SequenceCanonized:
    """Canonical ordering for sequences/multisets: stable sort.

    aut_order is the product of factorials of element multiplicities;
    generators are the adjacent transpositions within equal runs of the
    sorted sequence.
    """
    n = len(x)
    order = sorted(range(n), key=lambda i: (x[i], i))
    perm = [0] * n
    for pos, i in enumerate(order):
        perm[i] = pos
    perm = tuple(perm)
    canon = apply_sequence(perm, x)
    gens = []
    for k in range(n - 1):
        if canon[k] == canon[k + 1]:
            t = list(range(n))
            t[k], t[k + 1] = t[k + 1], t[k]
            gens.append(tuple(t))
    aut_order = 1
    for mult in Counter(canon).values():
        aut_order *= math.factorial(mult)
    grp = PermGroup(n, tuple(gens))
    chain = schreier_sims(grp)
    assert group_order(chain) == aut_order
    return SequenceCanonized(canon, perm, aut_order, grp, chain)
