"""Probability laws over assignment-function spaces.

A population law is either an independent product of per-individual laws or
an explicit finite table of function masses.  Laws that respect the strong
indistinguishability structure are invariant under permuting individuals
within blocks; relabelling laws across populations by block-preserving
bijections induces the equivalence whose classes are population
representations, materialized here as canonical forms.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from typing import Iterable

from .combinatorics import (
    Bijection,
    Partition,
    all_partitions,
    ident_key,
    partition_join,
    relation_preserving_bijections,
    sym_group,
)
from .core import AssignmentFunction, Population, StateSpace, is_saturated_event
from .errors import (
    AdmissibilityError,
    DomainMismatchError,
    MeasurabilityError,
)

EPS_MASS = 1e-12
EPS_P = 1e-9


class DiscreteLaw:
    """A probability mass function over state labels.

    Zero-mass states are dropped, so two laws describing the same measure
    compare equal regardless of padding.  Closeness up to a total-variation
    tolerance is a separate predicate; structural equality stays exact.
    """

    __slots__ = ("weights", "_items")

    def __init__(self, weights: dict, *, eps_mass: float = EPS_MASS):
        clean = {}
        for state, mass in dict(weights).items():
            mass = float(mass)
            if mass < 0.0:
                raise ValueError(f"negative mass {mass!r} for state {state!r}")
            if mass > 0.0:
                clean[state] = mass
        total = sum(clean.values())
        if abs(total - 1.0) > eps_mass:
            raise ValueError(f"masses sum to {total!r}, not 1")
        self.weights = clean
        self._items = tuple(sorted(clean.items(), key=lambda kv: ident_key(kv[0])))

    @classmethod
    def point_mass(cls, state) -> "DiscreteLaw":
        return cls({state: 1.0})

    @classmethod
    def uniform(cls, states) -> "DiscreteLaw":
        states = list(states)
        return cls({s: 1.0 / len(states) for s in states})

    def items(self) -> tuple:
        """Canonical (state, mass) pairs, sorted by state."""
        return self._items

    @property
    def support(self) -> tuple:
        return tuple(s for s, _ in self._items)

    def mass(self, state) -> float:
        return self.weights.get(state, 0.0)

    def mass_on(self, states: Iterable) -> float:
        members = set(states)
        return sum(m for s, m in self._items if s in members)

    def tv_distance(self, other: "DiscreteLaw") -> float:
        states = set(self.weights) | set(other.weights)
        return 0.5 * sum(abs(self.mass(s) - other.mass(s)) for s in states)

    def close_to(self, other: "DiscreteLaw", eps: float = EPS_P) -> bool:
        return self.tv_distance(other) <= eps

    def sort_key(self):
        return tuple((ident_key(s), m) for s, m in self._items)

    def __eq__(self, other):
        return isinstance(other, DiscreteLaw) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        inner = ", ".join(f"{s!r}: {m!r}" for s, m in self._items)
        return "DiscreteLaw({%s})" % inner


class PopulationLaw:
    """A probability law on the assignment functions of one population.

    Use the independent_law / explicit_law factories; the raw constructor
    performs only structural validation, not the admissibility check.
    """

    __slots__ = ("population", "space", "kind", "individual_laws", "masses")

    def __init__(
        self,
        population: Population,
        space: StateSpace,
        *,
        individual_laws: dict | None = None,
        masses: dict | None = None,
        eps_mass: float = EPS_MASS,
    ):
        if (individual_laws is None) == (masses is None):
            raise ValueError("provide exactly one of individual_laws or masses")
        self.population = population
        self.space = space
        if individual_laws is not None:
            individual_laws = dict(individual_laws)
            if set(individual_laws) != set(population.individuals):
                raise DomainMismatchError("one individual law per individual is required")
            for law in individual_laws.values():
                for state in law.support:
                    if state not in space:
                        raise ValueError(f"law assigns mass to unknown state {state!r}")
            self.kind = "independent"
            self.individual_laws = individual_laws
            self.masses = None
        else:
            masses = {f: float(m) for f, m in dict(masses).items() if float(m) != 0.0}
            for f, m in masses.items():
                if f.population != population or f.space != space:
                    raise DomainMismatchError("mass table mentions a foreign function")
                if m < 0.0:
                    raise ValueError("function masses must be nonnegative")
            total = sum(masses.values())
            if abs(total - 1.0) > eps_mass:
                raise ValueError(f"function masses sum to {total!r}, not 1")
            self.kind = "explicit"
            self.individual_laws = None
            self.masses = masses

    @property
    def is_independent(self) -> bool:
        return self.kind == "independent"

    def mass_of(self, f: AssignmentFunction) -> float:
        if f.population != self.population or f.space != self.space:
            raise DomainMismatchError("function lives on a different population")
        if self.is_independent:
            return math.prod(
                self.individual_laws[x].mass(f.values[x]) for x in self.population.individuals
            )
        return self.masses.get(f, 0.0)

    def support_functions(self) -> list[AssignmentFunction]:
        """Functions carrying positive mass, in lexicographic order."""
        if not self.is_independent:
            return sorted(self.masses, key=lambda f: f._key)
        individuals = self.population.individuals
        supports = [self.individual_laws[x].support for x in individuals]
        out = []
        for combo in itertools.product(*supports):
            out.append(AssignmentFunction(self.population, self.space, dict(zip(individuals, combo))))
        return sorted(out, key=lambda f: f._key)

    def as_explicit_table(self) -> dict[AssignmentFunction, float]:
        if not self.is_independent:
            return dict(self.masses)
        return {f: self.mass_of(f) for f in self.support_functions()}

    def marginal(self, x) -> DiscreteLaw:
        """The law of one individual's state."""
        if x not in self.population.individuals:
            raise DomainMismatchError(f"{x!r} is not an individual of this population")
        if self.is_independent:
            return self.individual_laws[x]
        agg: dict = defaultdict(float)
        for f, m in self.masses.items():
            agg[f.values[x]] += m
        return DiscreteLaw(agg, eps_mass=1e-9)

    def _canonical_body(self):
        if self.is_independent:
            return tuple(
                (x, self.individual_laws[x]._items) for x in self.population.individuals
            )
        return tuple(sorted((f._key, m) for f, m in self.masses.items()))

    def __eq__(self, other):
        return (
            isinstance(other, PopulationLaw)
            and self.kind == other.kind
            and self.population == other.population
            and self.space == other.space
            and self._canonical_body() == other._canonical_body()
        )

    def __hash__(self):
        return hash((self.kind, self.population, self.space, self._canonical_body()))

    def __repr__(self):
        return f"PopulationLaw({self.kind}, n={self.population.size()})"


def independent_law(
    Y: Population, space: StateSpace, laws: dict, *, eps_p: float = EPS_P
) -> PopulationLaw:
    """Product law of per-individual laws.

    Individuals sharing a block must be given equal laws (within the law
    tolerance); anything else would let the law distinguish individuals that
    are marked indistinguishable, so it is rejected outright.
    """
    P = PopulationLaw(Y, space, individual_laws=laws)
    for block in Y.tau.blocks:
        first = P.individual_laws[block[0]]
        for x in block[1:]:
            if not first.close_to(P.individual_laws[x], eps_p):
                raise AdmissibilityError(
                    f"individuals {block[0]!r} and {x!r} share a block but got different laws"
                )
    return P


def explicit_law(
    Y: Population,
    space: StateSpace,
    masses: dict,
    *,
    eps_mass: float = EPS_MASS,
    eps_p: float = EPS_P,
    check_admissible: bool = True,
) -> PopulationLaw:
    """Law given by an explicit table of function masses.

    With check_admissible (the default) the table must be constant on each
    within-population class; pass False only to build counterexamples for
    law_is_admissible.
    """
    P = PopulationLaw(Y, space, masses=masses, eps_mass=eps_mass)
    if check_admissible and not law_is_admissible(P, eps_p=eps_p):
        raise AdmissibilityError("mass table distinguishes indistinguishable individuals")
    return P


def law_eval(P: PopulationLaw, F: Iterable[AssignmentFunction]) -> float:
    """Probability of a saturated event, by exact summation."""
    F = list(F)
    if not F:
        return 0.0
    for f in F:
        if f.population != P.population or f.space != P.space:
            raise DomainMismatchError("event mentions a function on a different population")
    if not is_saturated_event(F):
        raise MeasurabilityError("event is not saturated: it would distinguish "
                                 "strongly indistinguishable individuals")
    return sum(P.mass_of(f) for f in set(F))


def pushforward_by_bijection(
    P: PopulationLaw, nu: Bijection, target: Population | None = None
) -> PopulationLaw:
    """Relabel a law along a bijection of individuals.

    nu must carry blocks onto blocks; when target is omitted it is derived by
    pushing the block structure forward through nu.
    """
    if nu.domain != frozenset(P.population.individuals):
        raise DomainMismatchError("bijection domain must be the law's individuals")
    if target is None:
        image_blocks = [[nu(x) for x in b] for b in P.population.tau.blocks]
        target = Population(nu.codomain, Partition(image_blocks))
    elif not nu.preserves_blocks(P.population.tau, target.tau):
        raise DomainMismatchError("bijection does not carry blocks onto blocks")

    if P.is_independent:
        return PopulationLaw(
            target,
            P.space,
            individual_laws={nu(x): P.individual_laws[x] for x in P.population.individuals},
        )
    inv = nu.inverse()
    relabeled = {f.compose(inv): m for f, m in P.masses.items()}
    return PopulationLaw(target, P.space, masses=relabeled, eps_mass=1e-9)


def _invariant_under(P: PopulationLaw, sigma, eps: float) -> bool:
    """Does relabelling by the self-bijection sigma leave the law unchanged?"""
    if P.is_independent:
        return all(
            P.individual_laws[x].close_to(P.individual_laws[sigma(x)], eps)
            for x in P.population.individuals
        )
    inv = sigma.inverse()
    keys = set(P.masses)
    keys.update(f.permuted(inv) for f in P.masses)
    return all(abs(P.mass_of(g) - P.mass_of(g.permuted(sigma))) <= eps for g in keys)


def law_is_admissible(P: PopulationLaw, *, eps_p: float = EPS_P) -> bool:
    """True iff the law is invariant under every permutation that only moves
    individuals within their blocks."""
    return all(_invariant_under(P, sigma, eps_p) for sigma in sym_group(P.population.tau))


def weak_indistinguishability(
    P: PopulationLaw,
    *,
    max_size: int | None = None,
    eps_p: float = EPS_P,
) -> Partition:
    """The coarsest partition whose block-respecting permutations all leave
    the law unchanged.

    Computed by filtering every partition of the individuals through the
    exhaustive permutation check and joining the survivors; the join is
    re-checked, so a successful return is itself a certificate.
    """
    kwargs = {} if max_size is None else {"max_size": max_size}
    valid = [
        eta
        for eta in all_partitions(P.population.individuals, **kwargs)
        if all(_invariant_under(P, sigma, eps_p) for sigma in sym_group(eta))
    ]
    eta = partition_join(valid)
    if not all(_invariant_under(P, sigma, eps_p) for sigma in sym_group(eta)):
        raise RuntimeError("join of invariant partitions is not itself invariant")
    return eta


def rho_bar_related(P: PopulationLaw, Q: PopulationLaw, *, eps_p: float = EPS_P) -> bool:
    """True iff some block-preserving relabelling of Q's individuals onto P's
    turns Q into P (up to the law tolerance)."""
    if P.space != Q.space:
        raise DomainMismatchError("laws use different state spaces")
    bijections = relation_preserving_bijections(Q.population.tau, P.population.tau)
    if not bijections:
        return False
    if P.is_independent and Q.is_independent:
        for nu in bijections:
            if all(
                Q.individual_laws[x].close_to(P.individual_laws[nu(x)], eps_p)
                for x in Q.population.individuals
            ):
                return True
        return False
    table_p = P.as_explicit_table()
    for nu in bijections:
        moved = pushforward_by_bijection(Q, nu, target=P.population)
        table_q = moved.as_explicit_table()
        keys = set(table_p) | set(table_q)
        if all(abs(table_p.get(f, 0.0) - table_q.get(f, 0.0)) <= eps_p for f in keys):
            return True
    return False


class RepresentationClass:
    """Canonical form of a population law under block-preserving relabelling.

    Two laws canonicalize to equal classes exactly when they are related, so
    the class stands for the population representation itself; its canonical
    law doubles as a concrete representative on a standard population.
    """

    __slots__ = ("canonical_structure", "canonical_law")

    def __init__(self, canonical_structure: tuple[int, ...], canonical_law: PopulationLaw):
        self.canonical_structure = canonical_structure
        self.canonical_law = canonical_law

    @property
    def cardinality(self) -> int:
        return sum(self.canonical_structure)

    @property
    def block_count(self) -> int:
        return len(self.canonical_structure)

    def __eq__(self, other):
        return (
            isinstance(other, RepresentationClass)
            and self.canonical_structure == other.canonical_structure
            and self.canonical_law == other.canonical_law
        )

    def __hash__(self):
        return hash((self.canonical_structure, self.canonical_law))

    def __repr__(self):
        return f"RepresentationClass(structure={self.canonical_structure})"


def _standard_population(sizes: Iterable[int]) -> Population:
    sizes = list(sizes)
    individuals = list(range(sum(sizes)))
    blocks, start = [], 0
    for s in sizes:
        blocks.append(individuals[start : start + s])
        start += s
    return Population(individuals, Partition(blocks))


def canonicalize(P: PopulationLaw) -> RepresentationClass:
    """Map a law to its relabelling-invariant canonical form."""
    structure = P.population.tau.block_sizes()
    if P.is_independent:
        block_items = sorted(
            ((len(b), P.individual_laws[b[0]]) for b in P.population.tau.blocks),
            key=lambda t: (t[0], t[1].sort_key()),
        )
        std = _standard_population([s for s, _ in block_items])
        laws = {}
        for block, (_, law) in zip(std.tau.blocks, block_items):
            for x in block:
                laws[x] = law
        return RepresentationClass(structure, PopulationLaw(std, P.space, individual_laws=laws))

    std = _standard_population(structure)
    best_table = None
    for nu in relation_preserving_bijections(P.population.tau, std.tau):
        moved = pushforward_by_bijection(P, nu, target=std)
        table = tuple(sorted((f._key, m) for f, m in moved.masses.items()))
        if best_table is None or table < best_table:
            best_table = table
            best_law = moved
    return RepresentationClass(structure, best_law)
