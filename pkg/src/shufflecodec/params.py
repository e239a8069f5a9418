"""Per-dataset model parameter coding.

Everything the decoder needs is carried inside the single compressed message,
decoded before any graph: model and flag bits, run-length coded vertex counts,
attribute count tables, and the model's count parameters. Lists of naturals
are coded as: list length (46-bit uniform), the bit count B of the maximum
element (uniform over 0..32), then each element with a log-uniform code: a
bit-length k uniform on {0..B} followed by the k-1 free bits (k = 0 encodes
the value 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .ans import Codec, ContractViolation, Message, bernoulli_codec, uniform_codec
from .graphs import pair_count

_LENGTH_LIMIT = 1 << 46
_ELEMENT_LIMIT = 1 << 32

_length_codec = uniform_codec(_LENGTH_LIMIT)
_bitcount_codec = uniform_codec(33)
_bit = bernoulli_codec(Fraction(1, 2))


def natural_list_codec() -> Codec:
    """Codec over lists of naturals below 2**32, any length below 2**46."""

    def encode(m: Message, xs) -> None:
        xs = list(xs)
        if len(xs) >= _LENGTH_LIMIT:
            raise ContractViolation("list too long")
        top = max(xs, default=0)
        if any(x < 0 for x in xs) or top >= _ELEMENT_LIMIT:
            raise ContractViolation("element outside [0, 2**32)")
        bit_count = top.bit_length()
        k_codec = uniform_codec(bit_count + 1)
        for x in reversed(xs):
            k = x.bit_length()
            if k >= 2:
                uniform_codec(1 << (k - 1)).encode(m, x - (1 << (k - 1)))
            k_codec.encode(m, k)
        _bitcount_codec.encode(m, bit_count)
        _length_codec.encode(m, len(xs))

    def decode(m: Message) -> List[int]:
        length = _length_codec.decode(m)
        bit_count = _bitcount_codec.decode(m)
        k_codec = uniform_codec(bit_count + 1)
        xs = []
        for _ in range(length):
            k = k_codec.decode(m)
            if k == 0:
                xs.append(0)
            elif k == 1:
                xs.append(1)
            else:
                xs.append((1 << (k - 1)) + uniform_codec(1 << (k - 1)).decode(m))
        return xs

    return Codec(encode, decode)


_naturals = natural_list_codec()


@dataclass(frozen=True)
class DatasetParams:
    """Everything shared by encoder and decoder for one dataset.

    vertex_count_runs holds (vertex count, multiplicity) pairs ascending by
    count; graphs are coded largest-first, so the coding order is the runs
    expanded in reverse. pu_edge_counts and order_perm follow coding order.
    """

    model: str  # "er" | "pu"
    vertex_count_runs: Tuple[Tuple[int, int], ...]
    vertex_attr_counts: Optional[Tuple[int, ...]] = None
    edge_attr_counts: Optional[Tuple[int, ...]] = None
    er_counts: Optional[Tuple[int, int]] = None  # (edges, non-edges)
    pu_edge_counts: Optional[Tuple[int, ...]] = None
    self_loops: bool = False
    uniform_attrs: bool = False
    redraws: bool = False
    order_perm: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.model not in ("er", "pu"):
            raise ValueError(f"unknown model {self.model!r}")
        runs = self.vertex_count_runs
        if any(count <= 0 for _, count in runs):
            raise ValueError("non-positive run length")
        if list(runs) != sorted(runs) or len({n for n, _ in runs}) != len(runs):
            raise ValueError("runs must be strictly ascending in vertex count")
        if self.model == "er" and self.er_counts is None:
            raise ValueError("er model requires er_counts")
        if self.model == "pu" and self.pu_edge_counts is None:
            raise ValueError("pu model requires pu_edge_counts")

    @property
    def num_graphs(self) -> int:
        return sum(count for _, count in self.vertex_count_runs)

    def sizes_in_coding_order(self) -> List[int]:
        return sizes_largest_first(self.vertex_count_runs)


def sizes_largest_first(runs) -> List[int]:
    """Vertex counts expanded largest-first from ascending runs."""
    sizes = []
    for n, count in reversed(runs):
        sizes.extend([n] * count)
    return sizes


def _runs_to_lists(runs) -> Tuple[List[int], List[int]]:
    lengths = [count for _, count in runs]
    diffs = []
    prev = 0
    for n, _ in runs:
        diffs.append(n - prev)
        prev = n
    return lengths, diffs


def _lists_to_runs(lengths, diffs) -> Tuple[Tuple[int, int], ...]:
    if len(lengths) != len(diffs):
        raise ContractViolation("run/diff length mismatch")
    runs = []
    n = 0
    for count, diff in zip(lengths, diffs):
        n += diff
        runs.append((n, count))
    return tuple(runs)


def encode_dataset_params(m: Message, params: DatasetParams) -> None:
    """Push the parameter block; the reverse of decode_dataset_params."""
    if params.order_perm is not None:
        _naturals.encode(m, list(params.order_perm))
    if params.model == "er":
        _naturals.encode(m, list(params.er_counts))
    else:
        sizes = params.sizes_in_coding_order()
        counts = params.pu_edge_counts
        if len(counts) != len(sizes):
            raise ContractViolation("one edge count per graph required")
        for n, count in zip(reversed(sizes), reversed(counts)):
            uniform_codec(pair_count(n, params.self_loops) + 1).encode(m, count)
    if params.edge_attr_counts is not None:
        _naturals.encode(m, list(params.edge_attr_counts))
    _bit.encode(m, 1 if params.edge_attr_counts is not None else 0)
    if params.vertex_attr_counts is not None:
        _naturals.encode(m, list(params.vertex_attr_counts))
    _bit.encode(m, 1 if params.vertex_attr_counts is not None else 0)
    lengths, diffs = _runs_to_lists(params.vertex_count_runs)
    _naturals.encode(m, diffs)
    _naturals.encode(m, lengths)
    _bit.encode(m, 1 if params.order_perm is not None else 0)
    _bit.encode(m, 1 if params.redraws else 0)
    _bit.encode(m, 1 if params.uniform_attrs else 0)
    _bit.encode(m, 1 if params.self_loops else 0)
    _bit.encode(m, 1 if params.model == "pu" else 0)


def decode_dataset_params(m: Message) -> DatasetParams:
    model = "pu" if _bit.decode(m) else "er"
    self_loops = bool(_bit.decode(m))
    uniform_attrs = bool(_bit.decode(m))
    redraws = bool(_bit.decode(m))
    has_order = bool(_bit.decode(m))
    lengths = _naturals.decode(m)
    diffs = _naturals.decode(m)
    runs = _lists_to_runs(lengths, diffs)
    vertex_attr_counts = tuple(_naturals.decode(m)) if _bit.decode(m) else None
    edge_attr_counts = tuple(_naturals.decode(m)) if _bit.decode(m) else None
    er_counts = None
    pu_edge_counts = None
    if model == "er":
        pair = _naturals.decode(m)
        if len(pair) != 2:
            raise ContractViolation("er_counts must hold two numbers")
        er_counts = (pair[0], pair[1])
    else:
        pu_edge_counts = tuple(
            uniform_codec(pair_count(n, self_loops) + 1).decode(m)
            for n in sizes_largest_first(runs)
        )
    order_perm = tuple(_naturals.decode(m)) if has_order else None
    return DatasetParams(
        model,
        runs,
        vertex_attr_counts,
        edge_attr_counts,
        er_counts,
        pu_edge_counts,
        self_loops,
        uniform_attrs,
        redraws,
        order_perm,
    )
