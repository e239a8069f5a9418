"""Exchangeable ordered-object models: i.i.d.-categorical strings,
Erdős-Rényi graphs with i.i.d. attributes, and the Pólya-urn edge-sequence
model (preferential attachment) with an inner shuffle over the edge list.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .ans import (
    Codec,
    ContractViolation,
    Message,
    ParameterError,
    bernoulli_codec,
    categorical_codec,
    uniform_codec,
)
from .graphs import Graph, graph_pairs, pair_count

# Probability resolution for model parameters derived from data. Encoder and
# decoder rebuild identical tables from identical integer counts.
PARAM_PRECISION = 20

# Degenerate empirical edge probabilities are clamped into this open interval.
_P_FLOOR = Fraction(1, 1 << PARAM_PRECISION)


def clamp_probability(p) -> Fraction:
    p = Fraction(p)
    return min(max(p, _P_FLOOR), 1 - _P_FLOOR)


@dataclass(frozen=True)
class ErParams:
    """Erdős-Rényi model: edge probability plus optional i.i.d. attribute
    tables (fixed-point masses)."""

    n: int
    edge_p: Fraction
    vertex_attr_ps: Optional[Tuple[int, ...]] = None
    edge_attr_ps: Optional[Tuple[int, ...]] = None
    uniform_attrs: bool = False
    self_loops: bool = False

    def __post_init__(self):
        object.__setattr__(self, "edge_p", clamp_probability(self.edge_p))


@dataclass(frozen=True)
class PuParams:
    """Pólya-urn model: a fixed number of edges drawn sequentially with
    probability proportional to (degree + 1) products."""

    n: int
    num_edges: int
    allow_redraws: bool = False
    allow_self_loops: bool = False

    def __post_init__(self):
        if self.num_edges < 0:
            raise ParameterError("negative edge count")
        if not self.allow_redraws:
            cap = pair_count(self.n, self.allow_self_loops)
            if self.num_edges > cap:
                raise ParameterError(
                    f"{self.num_edges} edges exceed the {cap} available pairs"
                )


def string_codec(ps: Sequence[int], length: int) -> Codec:
    """Fixed-length strings of alphabet symbols, coded i.i.d. categorical."""
    if length < 0:
        raise ParameterError("negative length")
    char_codec = categorical_codec(ps)

    def encode(m: Message, string) -> None:
        if len(string) != length:
            raise ContractViolation(f"string length {len(string)} != {length}")
        for c in reversed(string):
            char_codec.encode(m, c)

    def decode(m: Message) -> Tuple[int, ...]:
        return tuple(char_codec.decode(m) for _ in range(length))

    def prob(string) -> Fraction:
        p = Fraction(1)
        for c in string:
            p *= char_codec.prob(c)
        return p

    return Codec(encode, decode, prob)


def _attr_codec(ps: Optional[Tuple[int, ...]], uniform_attrs: bool) -> Optional[Codec]:
    if ps is None:
        return None
    if uniform_attrs:
        return uniform_codec(len(ps))
    return categorical_codec(list(ps))


def erdos_renyi_codec(params: ErParams) -> Codec:
    """Graphs under G(n, p) with i.i.d. attributes.

    Decode order: one Bernoulli per vertex pair in row order, then vertex
    attributes, then one attribute per present edge in pair order. Pairwise
    symmetric probabilities make the model exchangeable.
    """
    n = params.n
    bern = bernoulli_codec(params.edge_p, PARAM_PRECISION)
    v_codec = _attr_codec(params.vertex_attr_ps, params.uniform_attrs)
    e_codec = _attr_codec(params.edge_attr_ps, params.uniform_attrs)
    pairs = list(graph_pairs(n, params.self_loops))

    def encode(m: Message, g: Graph) -> None:
        if not isinstance(g, Graph) or g.n != n:
            raise ContractViolation(f"expected a graph on {n} vertices")
        if (g.vertex_attrs is not None) != (v_codec is not None):
            raise ContractViolation("vertex attribute presence mismatch")
        if (g.edge_attrs is not None) != (e_codec is not None):
            raise ContractViolation("edge attribute presence mismatch")
        if e_codec is not None:
            for e in reversed([e for e in pairs if e in g.edges]):
                e_codec.encode(m, g.edge_attrs[e])
        if v_codec is not None:
            for v in reversed(range(n)):
                v_codec.encode(m, g.vertex_attrs[v])
        for e in reversed(pairs):
            bern.encode(m, 1 if e in g.edges else 0)

    def decode(m: Message) -> Graph:
        edges = [e for e in pairs if bern.decode(m)]
        vertex_attrs = None
        if v_codec is not None:
            vertex_attrs = [v_codec.decode(m) for v in range(n)]
        edge_attrs = None
        if e_codec is not None:
            edge_attrs = {e: e_codec.decode(m) for e in edges}
        return Graph(n, edges, vertex_attrs, edge_attrs, params.self_loops)

    def prob(g: Graph) -> Fraction:
        p = Fraction(1)
        p_edge = bern.prob(1)
        for e in pairs:
            p *= p_edge if e in g.edges else 1 - p_edge
        if v_codec is not None:
            for a in g.vertex_attrs:
                p *= v_codec.prob(a)
        if e_codec is not None:
            for e in pairs:
                if e in g.edges:
                    p *= e_codec.prob(g.edge_attrs[e])
        return p

    return Codec(encode, decode, prob)


class _Urn:
    """Mutable preferential-attachment state: per-vertex weights (degree + 1)
    and the set of already-drawn pairs."""

    def __init__(self, params: PuParams):
        self.params = params
        self.weights = [1] * params.n
        self.present = set()

    def eligible_pairs(self) -> List[Tuple[int, int]]:
        p = self.params
        out = []
        for pair in graph_pairs(p.n, p.allow_self_loops):
            if not p.allow_redraws and pair in self.present:
                continue
            out.append(pair)
        return out

    def pair_masses(self, pairs: List[Tuple[int, int]]) -> List[int]:
        w = self.weights
        return [w[i] * w[j] for i, j in pairs]

    def draw(self, pair: Tuple[int, int]) -> None:
        i, j = pair
        self.present.add(pair)
        self.weights[i] += 1
        self.weights[j] += 1


def pu_sequence_codec(params: PuParams) -> Codec:
    """Ordered codec over length-m edge sequences under the urn model.

    Each step codes one pair with a categorical whose masses are the weight
    products over currently eligible pairs. With redraws disabled the masses
    depend on the draw history, so the model is not edge-exchangeable; it
    stays exactly invertible either way.
    """
    m_edges = params.num_edges

    def step_codec(urn: _Urn):
        pairs = urn.eligible_pairs()
        if not pairs:
            raise ContractViolation("no eligible pairs left")
        return pairs, categorical_codec(urn.pair_masses(pairs))

    def encode(msg: Message, seq) -> None:
        if len(seq) != m_edges:
            raise ContractViolation(f"sequence length {len(seq)} != {m_edges}")
        urn = _Urn(params)
        plan = []
        for pair in seq:
            pairs, codec = step_codec(urn)
            try:
                index = pairs.index(tuple(pair))
            except ValueError:
                raise ContractViolation(f"pair {pair} not eligible") from None
            plan.append((codec, index))
            urn.draw(pairs[index])
        for codec, index in reversed(plan):
            codec.encode(msg, index)

    def decode(msg: Message) -> Tuple[Tuple[int, int], ...]:
        urn = _Urn(params)
        seq = []
        for _ in range(m_edges):
            pairs, codec = step_codec(urn)
            pair = pairs[codec.decode(msg)]
            seq.append(pair)
            urn.draw(pair)
        return tuple(seq)

    return Codec(encode, decode)


def with_attributes(
    base: Codec,
    n: int,
    vertex_attr_ps: Optional[Tuple[int, ...]] = None,
    edge_attr_ps: Optional[Tuple[int, ...]] = None,
    uniform_attrs: bool = False,
) -> Codec:
    """Layer i.i.d. attribute coding over a plain-graph codec.

    Decode order: the base graph, then vertex attributes, then one attribute
    per edge in sorted edge order.
    """
    v_codec = _attr_codec(vertex_attr_ps, uniform_attrs)
    e_codec = _attr_codec(edge_attr_ps, uniform_attrs)

    def encode(m: Message, g: Graph) -> None:
        if (g.vertex_attrs is not None) != (v_codec is not None):
            raise ContractViolation("vertex attribute presence mismatch")
        if (g.edge_attrs is not None) != (e_codec is not None):
            raise ContractViolation("edge attribute presence mismatch")
        if e_codec is not None:
            for e in reversed(sorted(g.edges)):
                e_codec.encode(m, g.edge_attrs[e])
        if v_codec is not None:
            for a in reversed(g.vertex_attrs):
                v_codec.encode(m, a)
        base.encode(m, Graph(g.n, g.edges, None, None, g.self_loops_allowed))

    def decode(m: Message) -> Graph:
        g = base.decode(m)
        vertex_attrs = None
        if v_codec is not None:
            vertex_attrs = [v_codec.decode(m) for _ in range(n)]
        edge_attrs = None
        if e_codec is not None:
            edge_attrs = {e: e_codec.decode(m) for e in sorted(g.edges)}
        return Graph(g.n, g.edges, vertex_attrs, edge_attrs, g.self_loops_allowed)

    return Codec(encode, decode)


def polya_urn_codec(params: PuParams) -> Codec:
    """Graphs coded as an unordered edge list under the urn model: the edge
    sequence codec wrapped in an inner shuffle codec over list order."""
    from .shuffle import ShuffleCodec, sequence_class

    inner = ShuffleCodec(pu_sequence_codec(params), sequence_class())

    def encode(m: Message, g: Graph) -> None:
        if not isinstance(g, Graph) or g.n != params.n:
            raise ContractViolation(f"expected a graph on {params.n} vertices")
        if g.num_edges != params.num_edges:
            raise ContractViolation(
                f"graph has {g.num_edges} edges, params say {params.num_edges}"
            )
        if any(i == j for i, j in g.edges) and not params.allow_self_loops:
            raise ContractViolation("graph has self-loops but params disallow them")
        inner.encode(m, tuple(sorted(g.edges)))

    def decode(m: Message) -> Graph:
        seq = inner.decode(m)
        return Graph(
            params.n, set(seq), self_loops_allowed=params.allow_self_loops
        )

    return Codec(encode, decode)
