import itertools

import pytest

from poprep.combinatorics import Bijection, Partition, all_partitions, partition_refines
from poprep.core import AssignmentFunction, Population, StateSpace, function_space, rho_classes
from poprep.errors import AdmissibilityError, DomainMismatchError, MeasurabilityError
from poprep.laws import (
    DiscreteLaw,
    canonicalize,
    explicit_law,
    independent_law,
    law_eval,
    law_is_admissible,
    pushforward_by_bijection,
    rho_bar_related,
    weak_indistinguishability,
)

SPACE = StateSpace(["x1", "x2"])
UNIFORM = DiscreteLaw.uniform(["x1", "x2"])
SKEWED = DiscreteLaw({"x1": 0.3, "x2": 0.7})
POINT = DiscreteLaw.point_mass("x1")


def fn(Y, values):
    return AssignmentFunction(Y, SPACE, values)


class TestDiscreteLaw:
    def test_normalization_enforced(self):
        with pytest.raises(ValueError):
            DiscreteLaw({"x1": 0.5, "x2": 0.4})
        with pytest.raises(ValueError):
            DiscreteLaw({"x1": 1.5, "x2": -0.5})

    def test_zero_mass_padding_ignored(self):
        assert DiscreteLaw({"x1": 1.0, "x2": 0.0}) == POINT

    def test_tv_distance(self):
        assert UNIFORM.tv_distance(UNIFORM) == 0.0
        assert UNIFORM.tv_distance(POINT) == pytest.approx(0.5)
        assert POINT.tv_distance(DiscreteLaw.point_mass("x2")) == pytest.approx(1.0)

    def test_mass_lookup(self):
        assert SKEWED.mass("x1") == pytest.approx(0.3)
        assert SKEWED.mass("psi") == 0.0
        assert SKEWED.mass_on(["x1", "x2"]) == pytest.approx(1.0)


class TestIndependentLaw:
    def test_single_individual_uniform(self):
        Y = Population.fully_distinguishable(["x"])
        P = independent_law(Y, SPACE, {"x": UNIFORM})
        event = [fn(Y, {"x": "x1"})]
        assert law_eval(P, event) == pytest.approx(0.5)

    def test_product_expansion(self):
        Y = Population.indistinguishable(["x", "xp"])
        P = independent_law(Y, SPACE, {"x": UNIFORM, "xp": UNIFORM})
        both = [fn(Y, {"x": "x1", "xp": "x1"})]
        # oracle: product expansion 0.5 * 0.5
        assert law_eval(P, both) == pytest.approx(0.25)

    def test_block_members_must_share_laws(self):
        Y = Population.indistinguishable(["x", "xp"])
        with pytest.raises(AdmissibilityError):
            independent_law(Y, SPACE, {"x": UNIFORM, "xp": SKEWED})

    def test_non_saturated_event_rejected(self):
        Y = Population.indistinguishable(["x", "xp"])
        P = independent_law(Y, SPACE, {"x": UNIFORM, "xp": UNIFORM})
        lone = [fn(Y, {"x": "x1", "xp": "x2"})]
        with pytest.raises(MeasurabilityError):
            law_eval(P, lone)


class TestLawEval:
    def test_normalization_and_empty(self):
        Y = Population.indistinguishable(["x", "xp"])
        P = independent_law(Y, SPACE, {"x": UNIFORM, "xp": UNIFORM})
        assert law_eval(P, function_space(Y, SPACE)) == pytest.approx(1.0)
        assert law_eval(P, []) == 0.0

    def test_symmetric_injective_table(self):
        Y = Population.indistinguishable(["x", "xp"])
        f = fn(Y, {"x": "x1", "xp": "x2"})
        g = fn(Y, {"x": "x2", "xp": "x1"})
        P = explicit_law(Y, SPACE, {f: 0.5, g: 0.5})
        assert law_eval(P, [f, g]) == pytest.approx(1.0)

    def test_additive_over_classes(self):
        Y = Population.indistinguishable(["x", "xp"])
        P = independent_law(Y, SPACE, {"x": SKEWED, "xp": SKEWED})
        classes = rho_classes(Y, SPACE)
        total = sum(law_eval(P, cls_) for cls_ in classes)
        assert total == pytest.approx(1.0)
        merged = law_eval(P, classes[0] + classes[1])
        assert merged == pytest.approx(law_eval(P, classes[0]) + law_eval(P, classes[1]))


class TestPushforward:
    def test_identity_keeps_law(self):
        Y = Population.fully_distinguishable(["a", "b"])
        P = independent_law(Y, SPACE, {"a": UNIFORM, "b": SKEWED})
        nu = Bijection({"a": "a", "b": "b"})
        assert pushforward_by_bijection(P, nu, target=Y) == P

    def test_swap_of_equal_laws_keeps_canonical_form(self):
        Y = Population.fully_distinguishable(["a", "b"])
        P = independent_law(Y, SPACE, {"a": UNIFORM, "b": UNIFORM})
        swap = Bijection({"a": "b", "b": "a"})
        assert pushforward_by_bijection(P, swap, target=Y) == P

    def test_swap_of_unequal_laws_changes_canonical_form(self):
        Y = Population.fully_distinguishable(["a", "b"])
        P = independent_law(Y, SPACE, {"a": UNIFORM, "b": SKEWED})
        swap = Bijection({"a": "b", "b": "a"})
        assert pushforward_by_bijection(P, swap, target=Y) != P

    def test_relabel_to_new_population(self):
        Y = Population.indistinguishable(["a", "b"])
        P = independent_law(Y, SPACE, {"a": UNIFORM, "b": UNIFORM})
        nu = Bijection({"a": "u", "b": "v"})
        moved = pushforward_by_bijection(P, nu)
        assert moved.population.individuals == ("u", "v")
        assert moved.population.tau == Partition([["u", "v"]])

    def test_block_breaking_bijection_rejected(self):
        Y = Population(["a", "b", "c"], Partition([["a", "b"], ["c"]]))
        P = independent_law(Y, SPACE, {"a": UNIFORM, "b": UNIFORM, "c": SKEWED})
        target = Population(["u", "v", "w"], Partition([["u", "w"], ["v"]]))
        nu = Bijection({"a": "u", "b": "v", "c": "w"})
        with pytest.raises(DomainMismatchError):
            pushforward_by_bijection(P, nu, target=target)

    def test_explicit_law_pushforward(self):
        Y = Population.indistinguishable(["a", "b"])
        f = fn(Y, {"a": "x1", "b": "x2"})
        g = fn(Y, {"a": "x2", "b": "x1"})
        P = explicit_law(Y, SPACE, {f: 0.5, g: 0.5})
        nu = Bijection({"a": "u", "b": "v"})
        moved = pushforward_by_bijection(P, nu)
        target = moved.population
        fu = AssignmentFunction(target, SPACE, {"u": "x1", "v": "x2"})
        assert moved.mass_of(fu) == pytest.approx(0.5)


class TestWeakIndistinguishability:
    def test_equal_laws_join(self):
        Y = Population.fully_distinguishable(["a", "b"])
        P = independent_law(Y, SPACE, {"a": UNIFORM, "b": UNIFORM})
        assert weak_indistinguishability(P) == Partition([["a", "b"]])

    def test_pairwise_distinct_laws_stay_apart(self):
        Y = Population.fully_distinguishable(["a", "b", "c"])
        third = DiscreteLaw({"x1": 0.9, "x2": 0.1})
        P = independent_law(Y, SPACE, {"a": UNIFORM, "b": SKEWED, "c": third})
        assert weak_indistinguishability(P) == Partition.singletons(["a", "b", "c"])

    def test_explicit_symmetric_law_merges(self):
        Y = Population.fully_distinguishable(["a", "b"])
        f = fn(Y, {"a": "x1", "b": "x2"})
        g = fn(Y, {"a": "x2", "b": "x1"})
        P = explicit_law(Y, SPACE, {f: 0.5, g: 0.5})
        assert weak_indistinguishability(P) == Partition([["a", "b"]])

    def test_explicit_asymmetric_law_stays_apart(self):
        Y = Population.fully_distinguishable(["a", "b"])
        f = fn(Y, {"a": "x1", "b": "x2"})
        g = fn(Y, {"a": "x2", "b": "x1"})
        P = explicit_law(Y, SPACE, {f: 0.75, g: 0.25})
        assert weak_indistinguishability(P) == Partition.singletons(["a", "b"])

    def test_above_tau_and_equal_law_grouping(self):
        # exhaustive over every partition and pool assignment of 3 individuals
        pool = [UNIFORM, SKEWED, POINT]
        ids = ["a", "b", "c"]
        for tau in all_partitions(ids):
            Y = Population(ids, tau)
            for choice in itertools.product(pool, repeat=len(tau.blocks)):
                fam = {x: choice[i] for i, b in enumerate(tau.blocks) for x in b}
                P = independent_law(Y, SPACE, fam)
                eta = weak_indistinguishability(P)
                assert partition_refines(tau, eta)
                groups = {}
                for x in ids:
                    groups.setdefault(fam[x], []).append(x)
                assert eta == Partition(groups.values())


class TestAdmissibility:
    def test_independent_block_constant(self):
        Y = Population.indistinguishable(["a", "b"])
        P = independent_law(Y, SPACE, {"a": UNIFORM, "b": UNIFORM})
        assert law_is_admissible(P)

    def test_point_mass_on_one_symmetric_function(self):
        Y = Population.indistinguishable(["a", "b"])
        f = fn(Y, {"a": "x1", "b": "x2"})
        with pytest.raises(AdmissibilityError):
            explicit_law(Y, SPACE, {f: 1.0})
        P = explicit_law(Y, SPACE, {f: 1.0}, check_admissible=False)
        assert not law_is_admissible(P)

    def test_everything_admissible_when_distinguishable(self):
        Y = Population.fully_distinguishable(["a", "b"])
        f = fn(Y, {"a": "x1", "b": "x2"})
        P = explicit_law(Y, SPACE, {f: 1.0})
        assert law_is_admissible(P)


class TestRhoBarRelated:
    def test_swapped_families_relate(self):
        Y1 = Population.fully_distinguishable(["a", "b"])
        Y2 = Population.fully_distinguishable(["u", "v"])
        P = independent_law(Y1, SPACE, {"a": UNIFORM, "b": SKEWED})
        Q = independent_law(Y2, SPACE, {"u": SKEWED, "v": UNIFORM})
        assert rho_bar_related(P, Q)

    def test_structure_mismatch(self):
        Y1 = Population.indistinguishable(["a", "b"])
        Y2 = Population.fully_distinguishable(["u", "v"])
        P = independent_law(Y1, SPACE, {"a": UNIFORM, "b": UNIFORM})
        Q = independent_law(Y2, SPACE, {"u": UNIFORM, "v": UNIFORM})
        assert not rho_bar_related(P, Q)

    def test_reflexive(self):
        Y = Population.fully_distinguishable(["a"])
        P = independent_law(Y, SPACE, {"a": SKEWED})
        assert rho_bar_related(P, P)

    def test_explicit_vs_independent(self):
        # a product law written out as a table still relates to itself relabelled
        Y1 = Population.fully_distinguishable(["a"])
        Y2 = Population.fully_distinguishable(["u"])
        P = independent_law(Y1, SPACE, {"a": SKEWED})
        table = {AssignmentFunction(Y2, SPACE, {"u": s}): SKEWED.mass(s) for s in SKEWED.support}
        Q = explicit_law(Y2, SPACE, table)
        assert rho_bar_related(P, Q)

    def test_equivalence_axioms_small(self):
        # reflexivity, symmetry, transitivity over an exhaustive small family
        pool = [UNIFORM, SKEWED]
        laws_list = []
        for ids in (["a", "b"], ["u", "v"]):
            for tau in all_partitions(ids):
                Y = Population(ids, tau)
                for choice in itertools.product(pool, repeat=len(tau.blocks)):
                    fam = {x: choice[i] for i, b in enumerate(tau.blocks) for x in b}
                    laws_list.append(independent_law(Y, SPACE, fam))
        for P in laws_list:
            assert rho_bar_related(P, P)
        for P, Q in itertools.combinations(laws_list, 2):
            assert rho_bar_related(P, Q) == rho_bar_related(Q, P)
        for P, Q, R in itertools.permutations(laws_list, 3):
            if rho_bar_related(P, Q) and rho_bar_related(Q, R):
                assert rho_bar_related(P, R)


class TestCanonicalize:
    def test_swapped_families_share_class(self):
        Y1 = Population.fully_distinguishable(["a", "b"])
        Y2 = Population.fully_distinguishable(["u", "v"])
        P = independent_law(Y1, SPACE, {"a": UNIFORM, "b": SKEWED})
        Q = independent_law(Y2, SPACE, {"u": SKEWED, "v": UNIFORM})
        assert canonicalize(P) == canonicalize(Q)

    def test_distinct_families_distinct_classes(self):
        Y = Population.fully_distinguishable(["a", "b"])
        P = independent_law(Y, SPACE, {"a": UNIFORM, "b": UNIFORM})
        Q = independent_law(Y, SPACE, {"a": UNIFORM, "b": SKEWED})
        assert canonicalize(P) != canonicalize(Q)

    def test_explicit_law_relabelling_invariant(self):
        Y1 = Population.indistinguishable(["a", "b"])
        f = AssignmentFunction(Y1, SPACE, {"a": "x1", "b": "x2"})
        g = AssignmentFunction(Y1, SPACE, {"a": "x2", "b": "x1"})
        P = explicit_law(Y1, SPACE, {f: 0.5, g: 0.5})
        Y2 = Population.indistinguishable(["u", "v"])
        fu = AssignmentFunction(Y2, SPACE, {"u": "x1", "v": "x2"})
        gu = AssignmentFunction(Y2, SPACE, {"u": "x2", "v": "x1"})
        Q = explicit_law(Y2, SPACE, {fu: 0.5, gu: 0.5})
        assert canonicalize(P) == canonicalize(Q)

    def test_matches_relatedness_exhaustively(self):
        pool = [UNIFORM, POINT]
        laws_list = []
        for ids in (["a", "b"], ["u", "v"], ["a", "b", "c"]):
            for tau in all_partitions(ids):
                Y = Population(ids, tau)
                for choice in itertools.product(pool, repeat=len(tau.blocks)):
                    fam = {x: choice[i] for i, b in enumerate(tau.blocks) for x in b}
                    laws_list.append(independent_law(Y, SPACE, fam))
        for P, Q in itertools.combinations(laws_list, 2):
            assert (canonicalize(P) == canonicalize(Q)) == rho_bar_related(P, Q)

    def test_structure_field(self):
        Y = Population(["a", "b", "c"], Partition([["a", "b"], ["c"]]))
        P = independent_law(Y, SPACE, {"a": UNIFORM, "b": UNIFORM, "c": SKEWED})
        cls_ = canonicalize(P)
        assert cls_.canonical_structure == (1, 2)
        assert cls_.cardinality == 3
        assert cls_.block_count == 2
