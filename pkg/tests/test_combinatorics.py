import itertools
import math

import pytest

from poprep.combinatorics import (
    Bijection,
    Partition,
    Permutation,
    all_partitions,
    count_block_bijections,
    partition_join,
    partition_refines,
    relation_preserving_bijections,
    sym_group,
)
from poprep.errors import DomainMismatchError, SizeLimitError


def bell_oracle(n):
    # triangle recurrence, independent of the enumeration code
    row = [1]
    for _ in range(n):
        prev = row
        row = [prev[-1]]
        for v in prev:
            row.append(row[-1] + v)
    return row[0]


class TestPartition:
    def test_canonical_form(self):
        p = Partition([["c", "b"], ["a"]])
        q = Partition([["a"], ["b", "c"]])
        assert p == q
        assert hash(p) == hash(q)
        assert p.blocks == (("a",), ("b", "c"))

    def test_rejects_overlap_and_empty(self):
        with pytest.raises(ValueError):
            Partition([["a", "b"], ["b"]])
        with pytest.raises(ValueError):
            Partition([[]])

    def test_extremes(self):
        ids = ["a", "b", "c"]
        assert Partition.singletons(ids).block_sizes() == (1, 1, 1)
        assert Partition.single_block(ids).block_sizes() == (3,)
        assert Partition.single_block([]).blocks == ()


class TestAllPartitions:
    def test_empty_set_has_one_partition(self):
        assert list(all_partitions([])) == [Partition([])]

    def test_two_elements(self):
        got = all_partitions(["a", "b"])
        assert set(got) == {Partition([["a"], ["b"]]), Partition([["a", "b"]])}

    def test_counts_match_bell_numbers(self):
        for n in range(6):
            assert len(all_partitions(range(n))) == bell_oracle(n)

    def test_four_elements_distinct_canonical(self):
        got = all_partitions(range(4))
        assert len(got) == 15
        assert len(set(got)) == 15

    def test_size_bound(self):
        with pytest.raises(SizeLimitError):
            all_partitions(range(7))
        assert len(all_partitions(range(7), max_size=7)) == 877


class TestSymGroup:
    def test_pair_plus_singleton(self):
        tau = Partition([["a", "b"], ["c"]])
        group = sym_group(tau)
        assert len(group) == 2
        assert Permutation.identity(["a", "b", "c"]) in group
        swap = Permutation({"a": "b", "b": "a", "c": "c"})
        assert swap in group

    def test_all_singletons_only_identity(self):
        tau = Partition.singletons(["a", "b", "c"])
        assert list(sym_group(tau)) == [Permutation.identity(["a", "b", "c"])]

    def test_single_block_matches_filter_oracle(self):
        ids = ["a", "b", "c"]
        tau = Partition.single_block(ids)
        oracle = []
        for image in itertools.permutations(ids):
            mapping = dict(zip(ids, image))
            if all(tau.same_block(x, mapping[x]) for x in ids):
                oracle.append(Permutation(mapping))
        assert set(sym_group(tau)) == set(oracle)
        assert len(sym_group(tau)) == 6

    def test_order_formula(self):
        for n in range(5):
            for tau in all_partitions(range(n)):
                expected = math.prod(math.factorial(len(b)) for b in tau.blocks)
                assert len(sym_group(tau)) == expected

    def test_order_bound(self):
        tau = Partition.single_block(range(9))
        with pytest.raises(SizeLimitError):
            sym_group(tau, max_order=1000)


class TestRelationPreservingBijections:
    def test_matching_structure_oracle(self):
        p = Partition([["a", "b"], ["c"]])
        q = Partition([["u", "v"], ["w"]])
        got = set(relation_preserving_bijections(p, q))
        oracle = set()
        for image in itertools.permutations(["u", "v", "w"]):
            nu = Bijection(dict(zip(["a", "b", "c"], image)))
            if nu.preserves_blocks(p, q):
                oracle.add(nu)
        assert got == oracle
        assert len(got) == 2

    def test_mismatched_block_sizes(self):
        p = Partition([["a", "b"], ["c"]])
        q = Partition.singletons(["u", "v", "w"])
        assert relation_preserving_bijections(p, q) == ()
        assert count_block_bijections(p, q) == 0

    def test_self_bijections_of_full_block_match_group(self):
        tau = Partition.single_block(["a", "b"])
        got = set(relation_preserving_bijections(tau, tau))
        assert got == set(sym_group(tau))
        assert len(got) == 2

    def test_count_formula(self):
        p = Partition([["a", "b"], ["c", "d"]])
        # two interchangeable blocks of size 2: 2! block matchings, (2!)^2 within
        assert count_block_bijections(p, p) == 8
        assert len(relation_preserving_bijections(p, p)) == 8


class TestRefinesAndJoin:
    def test_refines_examples(self):
        fine = Partition.singletons(["a", "b"])
        coarse = Partition.single_block(["a", "b"])
        assert partition_refines(fine, coarse)
        assert not partition_refines(coarse, fine)
        assert partition_refines(coarse, coarse)

    def test_refines_needs_common_ground(self):
        with pytest.raises(DomainMismatchError):
            partition_refines(Partition([["a"]]), Partition([["b"]]))

    def test_join_examples(self):
        a = Partition([["a"], ["b"]])
        b = Partition([["a", "b"]])
        assert partition_join([a, b]) == b

        p = Partition([["a", "b"], ["c"]])
        q = Partition([["a"], ["b", "c"]])
        assert partition_join([p, q]) == Partition([["a", "b", "c"]])
        assert partition_join([p, p]) == p

    def test_join_empty_input(self):
        with pytest.raises(ValueError):
            partition_join([])

    def test_join_is_least_upper_bound_oracle(self):
        parts = all_partitions(range(4))
        for p, q in itertools.product(parts, repeat=2):
            j = partition_join([p, q])
            assert partition_refines(p, j) and partition_refines(q, j)
            uppers = [r for r in parts if partition_refines(p, r) and partition_refines(q, r)]
            assert all(partition_refines(j, r) for r in uppers)


class TestPermutationAlgebra:
    def test_group_axioms_small(self):
        for n in range(5):
            for tau in all_partitions(range(n)):
                group = set(sym_group(tau))
                assert Permutation.identity(range(n)) in group
                for s in group:
                    assert s.inverse() in group
                for a, b in itertools.product(group, repeat=2):
                    assert a.compose(b) in group

    def test_compose_order(self):
        a = Permutation({0: 1, 1: 2, 2: 0})
        b = Permutation({0: 0, 1: 2, 2: 1})
        assert a.compose(b)(1) == a(b(1))

    def test_bijection_rejects_non_injective(self):
        with pytest.raises(ValueError):
            Bijection({"a": "u", "b": "u"})
