import math
import random
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shufflecodec.perms import (
    DegreeMismatch,
    NotInGroup,
    PermGroup,
    chain_elements,
    compose,
    coset_canon,
    element_rank,
    element_unrank,
    group_order,
    identity,
    inverse,
    orbit_of,
    schreier_sims,
    smallest_moved,
)


def closure(n, gens):
    """Brute-force group closure; the independent oracle for orders."""
    group = {identity(n)}
    frontier = list(group)
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                p = compose(g, h)
                if p not in group:
                    group.add(p)
                    nxt.append(p)
        frontier = nxt
    return group


def perm_strategy(n):
    return st.permutations(range(n)).map(tuple)


class TestPermOps:
    def test_compose_three_cycle(self):
        assert compose((2, 0, 1), (2, 0, 1)) == (1, 2, 0)

    @given(st.integers(1, 8).flatmap(lambda n: perm_strategy(n)))
    def test_identity_neutral(self, s):
        e = identity(len(s))
        assert compose(s, e) == s
        assert compose(e, s) == s

    @given(st.integers(1, 8).flatmap(lambda n: perm_strategy(n)))
    def test_inverse_law(self, s):
        assert compose(s, inverse(s)) == identity(len(s))
        assert compose(inverse(s), s) == identity(len(s))

    @given(
        st.integers(2, 7).flatmap(
            lambda n: st.tuples(perm_strategy(n), perm_strategy(n), perm_strategy(n))
        )
    )
    def test_associativity(self, sts):
        s, t, u = sts
        assert compose(compose(s, t), u) == compose(s, compose(t, u))

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            compose((0, 1), (0, 1, 2))

    def test_smallest_moved(self):
        assert smallest_moved((0, 1, 2)) is None
        assert smallest_moved((0, 2, 1)) == 1


class TestSchreierSims:
    def test_s3_from_generators(self):
        grp = PermGroup(3, ((1, 0, 2), (0, 2, 1)))
        chain = schreier_sims(grp)
        assert group_order(chain) == len(closure(3, grp.generators)) == 6

    def test_trivial_group(self):
        chain = schreier_sims(PermGroup.trivial(4))
        assert group_order(chain) == 1
        assert chain.levels == ()

    def test_klein_four(self):
        grp = PermGroup(4, ((1, 0, 3, 2), (2, 3, 0, 1)))
        chain = schreier_sims(grp)
        assert group_order(chain) == len(closure(4, grp.generators)) == 4

    def test_symmetric_group_order(self):
        chain = schreier_sims(PermGroup.symmetric(8))
        assert group_order(chain) == math.factorial(8)

    def test_random_generator_sets_vs_bruteforce(self):
        rng = random.Random(1234)
        for _ in range(100):
            n = rng.randint(1, 7)
            k = rng.randint(0, 3)
            gens = tuple(
                tuple(rng.sample(range(n), n)) for _ in range(k)
            )
            grp = PermGroup(n, gens)
            assert group_order(schreier_sims(grp)) == len(closure(n, gens))

    def test_orders_vs_sympy(self):
        from sympy.combinatorics import Permutation, PermutationGroup

        rng = random.Random(99)
        for _ in range(30):
            n = rng.randint(2, 9)
            gens = tuple(tuple(rng.sample(range(n), n)) for _ in range(2))
            ours = group_order(schreier_sims(PermGroup(n, gens)))
            theirs = PermutationGroup([Permutation(list(g)) for g in gens]).order()
            assert ours == theirs

    def test_deterministic_for_fixed_input(self):
        grp = PermGroup(6, ((1, 2, 3, 4, 5, 0), (1, 0, 2, 3, 4, 5)))
        a = schreier_sims(grp)
        b = schreier_sims(grp)
        assert [lvl.point for lvl in a.levels] == [lvl.point for lvl in b.levels]
        assert [lvl.orbit for lvl in a.levels] == [lvl.orbit for lvl in b.levels]
        assert [lvl.gens for lvl in a.levels] == [lvl.gens for lvl in b.levels]

    def test_base_points_strictly_increase(self):
        rng = random.Random(5)
        for _ in range(50):
            n = rng.randint(2, 8)
            gens = tuple(tuple(rng.sample(range(n), n)) for _ in range(2))
            chain = schreier_sims(PermGroup(n, gens))
            points = [lvl.point for lvl in chain.levels]
            assert points == sorted(set(points))


class TestCosetCanon:
    def test_trivial_subgroup_fixes_input(self):
        chain = schreier_sims(PermGroup.trivial(4))
        s = (2, 0, 3, 1)
        assert coset_canon(chain, s) == s

    def test_full_group_gives_identity(self):
        chain = schreier_sims(PermGroup.symmetric(5))
        assert coset_canon(chain, (4, 2, 0, 1, 3)) == identity(5)

    def test_two_element_subgroup_example(self):
        # H = {e, 0<->2} on 3 points; the coset of (2,1,0) contains the identity.
        chain = schreier_sims(PermGroup(3, ((2, 1, 0),)))
        assert coset_canon(chain, (2, 1, 0)) == (0, 1, 2)

    def test_lex_min_constant_and_idempotent(self):
        rng = random.Random(7)
        for _ in range(40):
            n = rng.randint(2, 6)
            gens = tuple(tuple(rng.sample(range(n), n)) for _ in range(rng.randint(0, 2)))
            members = closure(n, gens)
            if len(members) > 120:
                continue
            chain = schreier_sims(PermGroup(n, gens))
            for _ in range(10):
                s = tuple(rng.sample(range(n), n))
                canon = coset_canon(chain, s)
                coset = {compose(s, h) for h in members}
                assert canon == min(coset)
                assert all(coset_canon(chain, sh) == canon for sh in coset)
                assert coset_canon(chain, canon) == canon

    def test_degree_mismatch(self):
        chain = schreier_sims(PermGroup.trivial(3))
        with pytest.raises(DegreeMismatch):
            coset_canon(chain, (0, 1, 2, 3))


class TestRankUnrank:
    def test_trivial_group(self):
        chain = schreier_sims(PermGroup.trivial(3))
        assert element_rank(chain, identity(3)) == ()
        assert element_unrank(chain, ()) == identity(3)

    def test_order_six_bijection(self):
        grp = PermGroup(3, ((1, 0, 2), (0, 2, 1)))
        chain = schreier_sims(grp)
        sizes = [len(lvl.orbit) for lvl in chain.levels]
        tuples = [()]
        for size in sizes:
            tuples = [t + (i,) for t in tuples for i in range(size)]
        image = {element_unrank(chain, t) for t in tuples}
        assert image == closure(3, grp.generators)

    def test_exhaustive_round_trip_s7(self):
        chain = schreier_sims(PermGroup.symmetric(7))
        assert group_order(chain) == 5040
        count = 0
        for h in chain_elements(chain):
            assert element_unrank(chain, element_rank(chain, h)) == h
            count += 1
        assert count == 5040

    def test_round_trip_random_groups(self):
        rng = random.Random(21)
        for _ in range(25):
            n = rng.randint(2, 7)
            gens = tuple(tuple(rng.sample(range(n), n)) for _ in range(2))
            members = closure(n, gens)
            chain = schreier_sims(PermGroup(n, gens))
            assert group_order(chain) == len(members)
            for h in members:
                assert element_unrank(chain, element_rank(chain, h)) == h

    def test_non_member_detected(self):
        chain = schreier_sims(PermGroup(4, ((1, 0, 3, 2),)))
        with pytest.raises(NotInGroup):
            element_rank(chain, (1, 2, 3, 0))


class TestOrbits:
    def test_trivial_group_orbit(self):
        assert orbit_of(PermGroup.trivial(5), 3) == {3}

    def test_symmetric_group_transitive(self):
        assert orbit_of(PermGroup.symmetric(3), 0) == {0, 1, 2}

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            orbit_of(PermGroup.trivial(3), 3)

    def test_orbits_partition_matches_bruteforce(self):
        rng = random.Random(3)
        for _ in range(20):
            n = rng.randint(2, 7)
            gens = tuple(tuple(rng.sample(range(n), n)) for _ in range(2))
            grp = PermGroup(n, gens)
            members = closure(n, gens)
            for point in range(n):
                assert orbit_of(grp, point) == {h[point] for h in members}


def test_chain_handles_all_subgroups_of_s4():
    # Every subgroup of S4 arises as a closure of some generator pair; check
    # order, membership ranking, and lex-min cosets against enumeration.
    all_perms = [tuple(p) for p in permutations(range(4))]
    seen_orders = set()
    for g1 in all_perms:
        for g2 in all_perms:
            members = closure(4, (g1, g2))
            chain = schreier_sims(PermGroup(4, (g1, g2)))
            assert group_order(chain) == len(members)
            seen_orders.add(len(members))
            canon = coset_canon(chain, (3, 2, 1, 0))
            assert canon == min(compose((3, 2, 1, 0), h) for h in members)
    assert {1, 2, 3, 4, 6, 8, 12, 24} <= seen_orders
