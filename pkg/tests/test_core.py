import itertools

import pytest

from poprep.combinatorics import Partition, sym_group
from poprep.core import (
    AssignmentFunction,
    CountingMeasure,
    Population,
    StateSpace,
    function_space,
    is_saturated_event,
    rho_classes,
    rho_related,
    rho_star_classes,
    rho_star_related,
    saturate_event,
    t_sub,
    t_sub_is_measurable,
    xi,
)
from poprep.errors import DomainMismatchError, SizeLimitError

SPACE2 = StateSpace(["x1", "x2"])  # two representative states plus the empty state
PAIR_I = Population.indistinguishable(["x", "xp"])
PAIR_O = Population.fully_distinguishable(["x", "xp"])


def fn(Y, values, space=SPACE2):
    return AssignmentFunction(Y, space, values)


class TestStateSpace:
    def test_states_order(self):
        assert SPACE2.states == ("x1", "x2", "psi")
        assert SPACE2.state_index("psi") == 2

    def test_rejects_collisions(self):
        with pytest.raises(ValueError):
            StateSpace(["a", "a"])
        with pytest.raises(ValueError):
            StateSpace(["a"], empty_state="a")

    def test_grid_alignment(self):
        s = StateSpace(["a", "b"], grid=[0.0, 1.0])
        assert s.grid == (0.0, 1.0)
        with pytest.raises(ValueError):
            StateSpace(["a", "b"], grid=[0.0])


class TestAssignmentFunction:
    def test_total_map_required(self):
        with pytest.raises(DomainMismatchError):
            fn(PAIR_I, {"x": "x1"})
        with pytest.raises(ValueError):
            fn(PAIR_I, {"x": "x1", "xp": "nope"})

    def test_equality_and_lookup(self):
        f = fn(PAIR_I, {"x": "x1", "xp": "x2"})
        g = fn(PAIR_I, {"xp": "x2", "x": "x1"})
        assert f == g and hash(f) == hash(g)
        assert f("x") == "x1"


class TestRhoRelated:
    def test_symmetric_pair_indistinguishable(self):
        f = fn(PAIR_I, {"x": "x1", "xp": "x2"})
        g = fn(PAIR_I, {"x": "x2", "xp": "x1"})
        assert rho_related(f, g)

    def test_symmetric_pair_distinguishable(self):
        f = fn(PAIR_O, {"x": "x1", "xp": "x2"})
        g = fn(PAIR_O, {"x": "x2", "xp": "x1"})
        assert not rho_related(f, g)

    def test_reflexive(self):
        f = fn(PAIR_I, {"x": "x1", "xp": "x2"})
        assert rho_related(f, f)

    def test_population_mismatch(self):
        f = fn(PAIR_I, {"x": "x1", "xp": "x2"})
        g = fn(PAIR_O, {"x": "x1", "xp": "x2"})
        with pytest.raises(DomainMismatchError):
            rho_related(f, g)


class TestRhoClasses:
    def test_injective_pair_glues_to_one_class(self):
        classes = rho_classes(PAIR_I, SPACE2, injective_only=True, proper_only=True)
        assert len(classes) == 1
        assert len(classes[0]) == 2

    def test_distinguishable_pair_all_singletons(self):
        space = StateSpace(["x1"])  # |states| = 2 with the empty state
        classes = rho_classes(PAIR_O, space)
        assert [len(c) for c in classes] == [1, 1, 1, 1]

    def test_indistinguishable_pair_merge_oracle(self):
        space = StateSpace(["x1"])
        classes = rho_classes(PAIR_I, space)
        # oracle: merge the 4 functions pairwise through the public relation
        fns = function_space(PAIR_I, space)
        oracle = []
        for f in fns:
            for cls_ in oracle:
                if rho_related(f, cls_[0]):
                    cls_.append(f)
                    break
            else:
                oracle.append([f])
        assert sorted(len(c) for c in classes) == sorted(len(c) for c in oracle) == [1, 1, 2]

    def test_classes_cover_and_are_disjoint(self):
        for tau in (PAIR_I.tau, PAIR_O.tau):
            Y = Population(["x", "xp"], tau)
            classes = rho_classes(Y, SPACE2)
            flat = [f for cls_ in classes for f in cls_]
            assert len(flat) == len(set(flat)) == len(function_space(Y, SPACE2))

    def test_representative_is_least_member(self):
        classes = rho_classes(PAIR_I, SPACE2)
        for cls_ in classes:
            assert cls_[0] == min(cls_, key=lambda f: f._key)

    def test_classes_closed_under_group(self):
        classes = rho_classes(PAIR_I, SPACE2)
        group = sym_group(PAIR_I.tau)
        for cls_ in classes:
            members = set(cls_)
            for f in cls_:
                for sigma in group:
                    assert f.permuted(sigma) in members

    def test_size_bound(self):
        big = Population.fully_distinguishable(range(12))
        with pytest.raises(SizeLimitError):
            rho_classes(big, SPACE2)


class TestSaturation:
    def test_full_class_is_saturated(self):
        cls_ = rho_classes(PAIR_I, SPACE2, injective_only=True, proper_only=True)[0]
        assert is_saturated_event(cls_)

    def test_half_class_is_not(self):
        f = fn(PAIR_I, {"x": "x1", "xp": "x2"})
        assert not is_saturated_event([f])

    def test_full_space_is_saturated(self):
        assert is_saturated_event(function_space(PAIR_I, SPACE2))

    def test_empty_event(self):
        assert is_saturated_event([])
        assert saturate_event([]) == set()

    def test_saturate_restores_class(self):
        f = fn(PAIR_I, {"x": "x1", "xp": "x2"})
        g = fn(PAIR_I, {"x": "x2", "xp": "x1"})
        assert saturate_event([f]) == {f, g}

    def test_saturate_idempotent_and_monotone(self):
        fns = function_space(PAIR_I, SPACE2)
        for r in (1, 2, 3):
            event = fns[:r]
            closed = saturate_event(event)
            assert saturate_event(closed) == closed
            assert closed >= set(event)
            assert is_saturated_event(closed)

    def test_mixed_populations_rejected(self):
        f = fn(PAIR_I, {"x": "x1", "xp": "x2"})
        g = fn(PAIR_O, {"x": "x1", "xp": "x2"})
        with pytest.raises(DomainMismatchError):
            is_saturated_event([f, g])


class TestRhoStar:
    def test_distinguishable_pairs_collapse(self):
        # any two injective two-state functions on distinguishable pairs relate
        Y1 = Population.fully_distinguishable(["a", "b"])
        Y2 = Population.fully_distinguishable(["u", "v"])
        fns = function_space(Y1, SPACE2, injective_only=True, proper_only=True)
        fns += function_space(Y2, SPACE2, injective_only=True, proper_only=True)
        for f, g in itertools.combinations(fns, 2):
            assert rho_star_related(f, g)
        assert len(rho_star_classes(fns)) == 1

    def test_size_mismatch(self):
        Y3 = Population.fully_distinguishable(["a", "b", "c"])
        f = fn(PAIR_O, {"x": "x1", "xp": "x2"})
        g = fn(Y3, {"a": "x1", "b": "x2", "c": "x1"})
        assert not rho_star_related(f, g)

    def test_reflexive(self):
        f = fn(PAIR_I, {"x": "x1", "xp": "x2"})
        assert rho_star_related(f, f)

    def test_within_population_relation_is_contained(self):
        for tau in (PAIR_I.tau, PAIR_O.tau):
            Y = Population(["x", "xp"], tau)
            fns = function_space(Y, SPACE2)
            for f, g in itertools.combinations(fns, 2):
                if rho_related(f, g):
                    assert rho_star_related(f, g)

    def test_state_space_mismatch(self):
        other = StateSpace(["x1", "x2"], empty_state="void")
        f = fn(PAIR_I, {"x": "x1", "xp": "x2"})
        g = fn(PAIR_I, {"x": "x1", "xp": "x2"}, space=other)
        with pytest.raises(DomainMismatchError):
            rho_star_related(f, g)


class TestCountingMeasure:
    def test_multiset_semantics(self):
        mu = CountingMeasure(["a", "b", "a"])
        assert mu.count("a") == 2
        assert mu.total_mass == 3
        assert mu == CountingMeasure(counts={"a": 2, "b": 1})

    def test_zero_counts_dropped(self):
        assert CountingMeasure(counts={"a": 0}) == CountingMeasure()
        with pytest.raises(ValueError):
            CountingMeasure(counts={"a": -1})

    def test_mass_on_subset_and_predicate(self):
        mu = CountingMeasure(["a", "b", "a"])
        assert mu.mass_on({"a"}) == 2
        assert mu.mass_on(lambda p: p != "a") == 1


class TestXiAndTSub:
    def test_xi_merges_repeated_states(self):
        f = fn(PAIR_O, {"x": "x1", "xp": "x1"})
        assert xi(f) == CountingMeasure(counts={"x1": 2})

    def test_xi_identifies_symmetric_functions(self):
        f = fn(PAIR_O, {"x": "x1", "xp": "x2"})
        g = fn(PAIR_O, {"x": "x2", "xp": "x1"})
        assert xi(f) == xi(g) == CountingMeasure(counts={"x1": 1, "x2": 1})

    def test_xi_counts_empty_state(self):
        Y3 = Population.fully_distinguishable(["a", "b", "c"])
        f = fn(Y3, {"a": "psi", "b": "psi", "c": "psi"})
        assert xi(f) == CountingMeasure(counts={"psi": 3})
        assert xi(f).total_mass == 3

    def test_t_sub_examples(self):
        Y = Population(["a", "b", "c"], Partition([["a", "b"], ["c"]]))
        f = fn(Y, {"a": "x1", "b": "x2", "c": "x1"})
        assert t_sub(f, {"a", "b"}) == CountingMeasure(counts={"x1": 1, "x2": 1})
        assert t_sub(f, set(Y.individuals)) == xi(f)
        assert t_sub(f, set()) == CountingMeasure()
        with pytest.raises(DomainMismatchError):
            t_sub(f, {"zzz"})


class TestTSubMeasurable:
    def test_block_union_criterion(self):
        Y = Population(["a", "b", "c"], Partition([["a", "b"], ["c"]]))
        assert not t_sub_is_measurable(Y, {"a"})
        assert t_sub_is_measurable(Y, {"a", "b"})
        assert t_sub_is_measurable(Y, set(Y.individuals))
        assert t_sub_is_measurable(Y, set())

    def test_iff_constant_on_classes(self):
        # brute-force oracle over every subset of a 3-element population
        space = StateSpace(["x1"])
        ids = ["a", "b", "c"]
        for blocks in ([["a", "b"], ["c"]], [["a", "b", "c"]], [["a"], ["b"], ["c"]]):
            Y = Population(ids, Partition(blocks))
            classes = rho_classes(Y, space)
            for r in range(4):
                for subset in itertools.combinations(ids, r):
                    constant = all(
                        len({t_sub(f, subset) for f in cls_}) == 1 for cls_ in classes
                    )
                    assert t_sub_is_measurable(Y, subset) == constant
