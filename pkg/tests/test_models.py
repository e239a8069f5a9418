import math
import random
from fractions import Fraction

import pytest

from shufflecodec.ans import ContractViolation, message_init
from shufflecodec.generate import sample_er_graph, sample_pa_graph
from shufflecodec.graphs import Graph, apply_perm
from shufflecodec.models import (
    ErParams,
    PuParams,
    clamp_probability,
    erdos_renyi_codec,
    polya_urn_codec,
    pu_sequence_codec,
    string_codec,
)

from conftest import random_message


class TestStringCodec:
    def test_zero_length_free(self):
        m = message_init()
        codec = string_codec([1, 1], 0)
        before = m.length_bits
        codec.encode(m, ())
        assert m.length_bits == before
        assert codec.decode(m) == ()

    def test_uniform_256_four_chars(self):
        m = message_init()
        codec = string_codec([1] * 256, 4)
        before = m.length_bits
        codec.encode(m, (65, 0, 255, 17))
        assert abs((m.length_bits - before) - 32) <= 0.5
        assert codec.decode(m) == (65, 0, 255, 17)

    def test_entropy_rate(self, rng):
        codec = string_codec([3, 1], 10_000)
        s = tuple(0 if rng.random() < 0.75 else 1 for _ in range(10_000))
        m = message_init()
        before = m.length_bits
        codec.encode(m, s)
        expected = sum(-math.log2([0.75, 0.25][c]) for c in s)
        assert abs((m.length_bits - before) - expected) <= 0.001 * expected

    def test_wrong_length_rejected(self):
        with pytest.raises(ContractViolation):
            string_codec([1, 1], 3).encode(message_init(), (0, 1))

    def test_symbol_outside_alphabet(self):
        with pytest.raises(ContractViolation):
            string_codec([1, 1], 1).encode(message_init(), (2,))


class TestErdosRenyi:
    def test_fair_coin_costs_six_bits(self, rng):
        codec = erdos_renyi_codec(ErParams(4, Fraction(1, 2)))
        for edges in [[], [(0, 1)], [(0, 1), (2, 3)], [(0, 1), (0, 2), (0, 3)]]:
            m = message_init()
            before = m.length_bits
            codec.encode(m, Graph(4, edges))
            assert abs((m.length_bits - before) - 6) <= 0.01

    def test_single_edge_three_bits(self):
        codec = erdos_renyi_codec(ErParams(3, Fraction(1, 2)))
        m = message_init()
        before = m.length_bits
        codec.encode(m, Graph(3, [(0, 1)]))
        assert abs((m.length_bits - before) - 3) <= 0.01

    def test_aggregate_rate_g8(self, rng):
        codec = erdos_renyi_codec(ErParams(8, Fraction(3, 10)))
        m = message_init()
        graphs = [sample_er_graph(rng, 8, 0.3) for _ in range(1000)]
        before = m.length_bits
        expected = 0.0
        for g in graphs:
            codec.encode(m, g)
            e = g.num_edges
            expected += -e * math.log2(0.3) - (28 - e) * math.log2(0.7)
        added = m.length_bits - before
        assert abs(added - expected) <= 0.002 * expected
        # 10^3 * 28 * H(0.3) is about 24672 bits
        assert abs(expected - 24672) < 400

    def test_round_trip_with_attributes(self, rng):
        params = ErParams(
            6,
            Fraction(2, 5),
            vertex_attr_ps=(3, 1),
            edge_attr_ps=(1, 1, 2),
        )
        codec = erdos_renyi_codec(params)
        for _ in range(50):
            g = sample_er_graph(rng, 6, 0.4, vertex_alphabet=2, edge_alphabet=3)
            m = random_message(seed=3, tail_words=8)
            snapshot = m.copy()
            codec.encode(m, g)
            assert codec.decode(m) == g
            assert m == snapshot

    def test_round_trip_with_self_loops(self, rng):
        params = ErParams(5, Fraction(1, 3), self_loops=True)
        codec = erdos_renyi_codec(params)
        for _ in range(50):
            g = sample_er_graph(rng, 5, 0.3, self_loops=True)
            m = random_message(seed=4, tail_words=8)
            codec.encode(m, g)
            assert codec.decode(m) == g

    def test_exchangeable_exact(self, rng):
        codec = erdos_renyi_codec(
            ErParams(7, Fraction(1, 4), vertex_attr_ps=(2, 1, 1))
        )
        for _ in range(100):
            g = sample_er_graph(rng, 7, 0.25, vertex_alphabet=3)
            s = tuple(rng.sample(range(7), 7))
            assert codec.prob(g) == codec.prob(apply_perm(s, g))

    def test_probabilities_sum_to_one_n3(self):
        from itertools import combinations

        codec = erdos_renyi_codec(ErParams(3, Fraction(1, 2)))
        pairs = list(combinations(range(3), 2))
        total = Fraction(0)
        for bits in range(8):
            g = Graph(3, [e for k, e in enumerate(pairs) if bits >> k & 1])
            total += codec.prob(g)
        assert total == 1

    def test_vertex_count_mismatch(self):
        codec = erdos_renyi_codec(ErParams(4, Fraction(1, 2)))
        with pytest.raises(ContractViolation):
            codec.encode(message_init(), Graph(5))

    def test_probability_clamping(self):
        assert 0 < clamp_probability(0) < 1
        assert 0 < clamp_probability(1) < 1
        p = ErParams(4, Fraction(0)).edge_p
        assert 0 < p < 1


class TestPolyaUrn:
    def test_empty_graph(self):
        codec = polya_urn_codec(PuParams(4, 0))
        m = message_init()
        before = m.length_bits
        codec.encode(m, Graph(4))
        assert m.length_bits == before
        assert codec.decode(m) == Graph(4)

    def test_single_edge_net_rate_log2_3(self):
        codec = polya_urn_codec(PuParams(3, 1))
        m = random_message(seed=9, tail_words=32)
        before = m.length_bits
        codec.encode(m, Graph(3, [(0, 2)]))
        assert abs((m.length_bits - before) - math.log2(3)) <= 0.01

    @pytest.mark.parametrize("redraws,loops", [(False, False), (True, False), (False, True), (True, True)])
    def test_round_trips(self, rng, redraws, loops):
        for _ in range(250):
            n = rng.randint(2, 8)
            g = sample_er_graph(rng, n, 0.4, self_loops=loops)
            params = PuParams(n, g.num_edges, allow_redraws=redraws, allow_self_loops=loops)
            codec = polya_urn_codec(params)
            m = random_message(seed=n, tail_words=64)
            snapshot = m.copy()
            codec.encode(m, g)
            out = codec.decode(m)
            assert out == Graph(n, g.edges, self_loops_allowed=loops)
            assert m == snapshot

    def test_sequence_codec_tracks_urn_state(self, rng):
        params = PuParams(5, 4)
        codec = pu_sequence_codec(params)
        seq = ((0, 1), (1, 2), (1, 3), (0, 4))
        m = random_message(seed=6, tail_words=32)
        snapshot = m.copy()
        codec.encode(m, seq)
        assert codec.decode(m) == seq
        assert m == snapshot

    def test_ineligible_pair_rejected(self):
        codec = pu_sequence_codec(PuParams(3, 2))
        with pytest.raises(ContractViolation):
            codec.encode(message_init(), ((0, 1), (0, 1)))

    def test_edge_count_cap_validated(self):
        with pytest.raises(Exception):
            PuParams(3, 4)
        PuParams(3, 4, allow_redraws=True)

    def test_pu_beats_er_on_preferential_corpus(self, rng):
        # Directional: same graphs, net rates under PU vs ER with matched
        # empirical parameters.
        graphs = [sample_pa_graph(rng, 30, attachment=2) for _ in range(30)]
        pu_bits = er_bits = 0.0
        for g in graphs:
            m = random_message(seed=1, tail_words=512)
            before = m.length_bits
            polya_urn_codec(PuParams(g.n, g.num_edges)).encode(m, g)
            pu_bits += m.length_bits - before

            pairs = g.n * (g.n - 1) // 2
            p = clamp_probability(Fraction(g.num_edges, pairs))
            m = random_message(seed=2, tail_words=512)
            before = m.length_bits
            erdos_renyi_codec(ErParams(g.n, p)).encode(m, g)
            er_bits += m.length_bits - before
        assert pu_bits < er_bits

    def test_no_redraws_not_worse(self, rng):
        graphs = [sample_pa_graph(rng, 20, attachment=2) for _ in range(20)]
        strict = loose = 0.0
        for g in graphs:
            for redraws, acc in ((False, "strict"), (True, "loose")):
                m = random_message(seed=3, tail_words=512)
                before = m.length_bits
                codec = polya_urn_codec(
                    PuParams(g.n, g.num_edges, allow_redraws=redraws)
                )
                codec.encode(m, g)
                bits = m.length_bits - before
                if redraws:
                    loose += bits
                else:
                    strict += bits
        assert strict <= loose
