"""Whole-dataset compression: parameter block plus shuffle-coded graphs in one
message, benchmark reporting, and the single-graph net-rate mode.

Graphs are coded largest-first, so the one object whose order discount cannot
be reclaimed (the first encoded, which is the smallest) wastes the least. By
default the dataset's original graph order is not stored (matching the
bits-per-edge accounting convention of run-length coded vertex counts);
keep_order=True additionally codes the ordering permutation so decompression
restores original positions.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .ans import (
    DEFAULT_PAD_SEED,
    Codec,
    Message,
    message_deserialize,
    message_init,
    message_serialize,
    pad_word,
    quantize_masses,
)
from .canon import canonize
from .datasets import Corpus, DatasetError
from .graphs import Graph, pair_count
from .models import (
    PARAM_PRECISION,
    ErParams,
    PuParams,
    clamp_probability,
    erdos_renyi_codec,
    polya_urn_codec,
    with_attributes,
)
from .params import DatasetParams, decode_dataset_params, encode_dataset_params
from .shuffle import CanonStats, ShuffleCodec, graph_class, log2_factorial

ATTR_MODES = ("auto", "none", "uniform")
MODELS = ("er", "pu")


@dataclass
class BenchmarkReport:
    dataset: str
    model: str
    attrs: str
    num_graphs: int
    total_edges: int
    total_bits: float
    param_bits: float
    ordered_bits_per_edge: float
    shuffle_bits_per_edge: float
    net_bits_per_edge: float
    initial_bits_per_edge: float
    discount_percent: float
    encode_seconds: float
    decode_seconds: float = 0.0
    canonize_seconds: float = 0.0
    canonize_share: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)


def _strip_attrs(g: Graph) -> Graph:
    return Graph(g.n, g.edges, None, None, g.self_loops_allowed)


def _prepared_graphs(corpus: Corpus, attrs: str) -> List[Graph]:
    if attrs not in ATTR_MODES:
        raise ValueError(f"attrs must be one of {ATTR_MODES}, got {attrs!r}")
    if attrs == "none":
        return [_strip_attrs(g) for g in corpus.graphs]
    return list(corpus.graphs)


def _attr_counts(values, alphabet_hint=0) -> Tuple[int, ...]:
    size = max(max(values, default=-1) + 1, alphabet_hint)
    counts = [0] * size
    for v in values:
        counts[v] += 1
    return tuple(counts)


def build_dataset_params(
    corpus: Corpus,
    model: str = "er",
    attrs: str = "auto",
    redraws: bool = False,
    keep_order: bool = False,
) -> Tuple[DatasetParams, List[int]]:
    """Empirical parameters plus the coding order (original indices,
    largest graph first, stable)."""
    if model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}, got {model!r}")
    graphs = _prepared_graphs(corpus, attrs)
    order = sorted(range(len(graphs)), key=lambda i: (-graphs[i].n, i))

    sizes = sorted(g.n for g in graphs)
    runs = []
    for n in sizes:
        if runs and runs[-1][0] == n:
            runs[-1][1] += 1
        else:
            runs.append([n, 1])
    self_loops = corpus.self_loops

    vertex_attr_counts = None
    edge_attr_counts = None
    if attrs != "none":
        if corpus.has_vertex_attrs:
            vertex_attr_counts = _attr_counts(
                [a for g in graphs for a in g.vertex_attrs]
            )
        if corpus.has_edge_attrs:
            edge_attr_counts = _attr_counts(
                [a for g in graphs for a in g.edge_attrs.values()]
            )

    er_counts = None
    pu_edge_counts = None
    if model == "er":
        edges = sum(g.num_edges for g in graphs)
        pairs = sum(pair_count(g.n, self_loops) for g in graphs)
        er_counts = (edges, pairs - edges)
    else:
        pu_edge_counts = tuple(graphs[i].num_edges for i in order)

    params = DatasetParams(
        model=model,
        vertex_count_runs=tuple((n, c) for n, c in runs),
        vertex_attr_counts=vertex_attr_counts,
        edge_attr_counts=edge_attr_counts,
        er_counts=er_counts,
        pu_edge_counts=pu_edge_counts,
        self_loops=self_loops,
        uniform_attrs=attrs == "uniform",
        redraws=redraws,
        order_perm=tuple(order) if keep_order else None,
    )
    return params, order


def validate_dataset_params(params: DatasetParams, corpus: Corpus, attrs: str) -> None:
    """Reject a parameter block that does not describe the corpus."""
    rebuilt, _ = build_dataset_params(
        corpus, params.model, attrs, params.redraws, params.order_perm is not None
    )
    if rebuilt != params:
        raise DatasetError("parameters inconsistent with corpus")


def _attr_masses(counts: Optional[Tuple[int, ...]]) -> Optional[Tuple[int, ...]]:
    if counts is None:
        return None
    return tuple(quantize_masses(counts, PARAM_PRECISION))


def _er_probability(params: DatasetParams) -> Fraction:
    edges, non_edges = params.er_counts
    total = edges + non_edges
    p = Fraction(edges, total) if total else Fraction(1, 2)
    return clamp_probability(p)


def graph_codec_for(params: DatasetParams, n: int, num_edges: Optional[int] = None) -> Codec:
    """The ordered-graph codec for one graph slot under the dataset params."""
    v_ps = _attr_masses(params.vertex_attr_counts)
    e_ps = _attr_masses(params.edge_attr_counts)
    if params.model == "er":
        return erdos_renyi_codec(
            ErParams(
                n,
                _er_probability(params),
                vertex_attr_ps=v_ps,
                edge_attr_ps=e_ps,
                uniform_attrs=params.uniform_attrs,
                self_loops=params.self_loops,
            )
        )
    base = polya_urn_codec(
        PuParams(
            n,
            num_edges,
            allow_redraws=params.redraws,
            allow_self_loops=params.self_loops,
        )
    )
    if v_ps is None and e_ps is None:
        return base
    return with_attributes(base, n, v_ps, e_ps, params.uniform_attrs)


def compress_corpus(
    corpus: Corpus,
    model: str = "er",
    attrs: str = "auto",
    redraws: bool = False,
    keep_order: bool = False,
    seed: int = DEFAULT_PAD_SEED,
) -> Tuple[bytes, BenchmarkReport]:
    """Compress a corpus into one SHUF message; returns bytes and a report."""
    started = time.perf_counter()
    params, order = build_dataset_params(corpus, model, attrs, redraws, keep_order)
    validate_dataset_params(params, corpus, attrs)
    graphs = _prepared_graphs(corpus, attrs)
    stats = CanonStats()
    pclass = graph_class(stats)

    m = message_init(pad_seed=seed)
    initial_bits = m.length_bits
    ordered_bits = discount_bits_total = 0.0
    # Encode in reverse coding order so decoding runs largest-first.
    for pos in reversed(range(len(order))):
        g = graphs[order[pos]]
        codec = ShuffleCodec(graph_codec_for(params, g.n, g.num_edges), pclass)
        report = codec.encode(m, g)
        ordered_bits += report.ordered_bits
        discount_bits_total += report.discount_bits
    before_params = m.length_bits
    encode_dataset_params(m, params)
    param_bits = m.length_bits - before_params
    data = message_serialize(m)
    encode_seconds = time.perf_counter() - started

    total_bits = m.length_bits - initial_bits
    pad_bits = 16.0 * m.pad_consumed
    edges = sum(g.num_edges for g in graphs)
    div = edges if edges else 1
    ordered_total = ordered_bits + param_bits
    report = BenchmarkReport(
        dataset=corpus.name,
        model=model,
        attrs=attrs,
        num_graphs=len(graphs),
        total_edges=edges,
        total_bits=total_bits,
        param_bits=param_bits,
        ordered_bits_per_edge=ordered_total / div,
        shuffle_bits_per_edge=total_bits / div,
        net_bits_per_edge=(total_bits - pad_bits) / div,
        initial_bits_per_edge=pad_bits / div,
        discount_percent=(
            100.0 * (1.0 - total_bits / ordered_total) if ordered_total else 0.0
        ),
        encode_seconds=encode_seconds,
        canonize_seconds=stats.seconds,
        canonize_share=stats.seconds / encode_seconds if encode_seconds else 0.0,
    )
    return data, report


def decompress_corpus(data: bytes, name: str = "decoded") -> Corpus:
    """Decode a SHUF message back into a corpus of canonical-form graphs.

    Graphs come back in coding order (largest first) unless the message
    carries an ordering permutation, in which case original positions are
    restored.
    """
    m = message_deserialize(data)
    params = decode_dataset_params(m)
    pclass = graph_class()
    graphs: List[Graph] = []
    sizes = params.sizes_in_coding_order()
    for pos, n in enumerate(sizes):
        num_edges = params.pu_edge_counts[pos] if params.model == "pu" else None
        codec = ShuffleCodec(graph_codec_for(params, n, num_edges), pclass)
        graphs.append(codec.decode(m))
    if params.order_perm is not None:
        restored: List[Optional[Graph]] = [None] * len(graphs)
        for pos, original in enumerate(params.order_perm):
            restored[original] = graphs[pos]
        if any(g is None for g in restored):
            raise DatasetError("ordering permutation is not a bijection")
        graphs = restored
    return Corpus(
        tuple(graphs),
        name,
        has_vertex_attrs=params.vertex_attr_counts is not None,
        has_edge_attrs=params.edge_attr_counts is not None,
    )


def net_rate_single(
    graph: Graph,
    model: str = "er",
    er_p=None,
    seed: int = DEFAULT_PAD_SEED,
) -> float:
    """Net cost in bits of shuffle-coding one graph into a message that
    already holds data: the fair single-graph comparison (model parameter
    bits excluded; p defaults to the graph's empirical edge density)."""
    c = canonize(graph)
    discount = log2_factorial(graph.n) - math.log2(c.aut_order)
    # The urn model's inner edge-list shuffle decodes up to log2(m!) more.
    prefill_bits = discount + 64
    if model == "pu":
        prefill_bits += log2_factorial(graph.num_edges)
    if model == "er":
        loops = any(i == j for i, j in graph.edges)
        pairs = pair_count(graph.n, loops)
        if er_p is None:
            er_p = Fraction(graph.num_edges, pairs) if pairs else Fraction(1, 2)
        v_ps = (
            _attr_masses(_attr_counts(graph.vertex_attrs))
            if graph.has_vertex_attrs
            else None
        )
        e_ps = (
            _attr_masses(_attr_counts(list(graph.edge_attrs.values())))
            if graph.has_edge_attrs
            else None
        )
        codec = erdos_renyi_codec(
            ErParams(graph.n, clamp_probability(er_p), v_ps, e_ps, False, loops)
        )
    elif model == "pu":
        loops = any(i == j for i, j in graph.edges)
        codec = polya_urn_codec(
            PuParams(graph.n, graph.num_edges, allow_self_loops=loops)
        )
    else:
        raise ValueError(f"model must be one of {MODELS}, got {model!r}")
    shuffler = ShuffleCodec(codec, graph_class())
    words = int(prefill_bits) // 16 + 1
    while True:
        m = Message(tail=[pad_word(seed, i) for i in range(words)], pad_seed=seed)
        before = m.length_bits
        shuffler.encode(m, graph)
        if m.pad_consumed == 0:
            return m.length_bits - before
        words *= 2
