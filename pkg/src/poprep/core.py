"""Finite state spaces, populations, assignment functions and their quotients.

An assignment function gives every individual of a population a state; two
functions are identified when they differ only by a permutation of strongly
indistinguishable individuals (the within-population relation), or by any
block-preserving relabelling between populations (the cross-population
relation, which deliberately over-merges).  Counting-measure images of
assignment functions connect the quotient picture to point processes.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from typing import Iterable

from .combinatorics import (
    Bijection,
    Partition,
    ident_key,
    relation_preserving_bijections,
    sym_group,
)
from .errors import DomainMismatchError, SizeLimitError

MAX_FUNCTION_SPACE = 100_000


class StateSpace:
    """Finite individual state space: ordered proper states plus a
    distinguished empty state for individuals outside the zone of interest.

    An optional numeric grid assigns a real position to each proper state,
    used when discretizing densities onto the space.
    """

    __slots__ = ("proper_states", "empty_state", "grid", "_order")

    def __init__(self, proper_states: Iterable, empty_state="psi", grid=None):
        proper_states = tuple(proper_states)
        if len(set(proper_states)) != len(proper_states):
            raise ValueError("proper states must be unique")
        if empty_state in proper_states:
            raise ValueError("empty state must not be a proper state")
        if grid is not None:
            grid = tuple(float(g) for g in grid)
            if len(grid) != len(proper_states):
                raise ValueError("grid must assign one position per proper state")
        self.proper_states = proper_states
        self.empty_state = empty_state
        self.grid = grid
        self._order = {s: i for i, s in enumerate(proper_states + (empty_state,))}

    @property
    def states(self) -> tuple:
        """All states, proper ones first, the empty state last."""
        return self.proper_states + (self.empty_state,)

    def state_index(self, state) -> int:
        try:
            return self._order[state]
        except KeyError:
            raise ValueError(f"unknown state {state!r}") from None

    def __contains__(self, state):
        return state in self._order

    def __eq__(self, other):
        return (
            isinstance(other, StateSpace)
            and self.proper_states == other.proper_states
            and self.empty_state == other.empty_state
        )

    def __hash__(self):
        return hash((self.proper_states, self.empty_state))

    def __repr__(self):
        return f"StateSpace({list(self.proper_states)!r}, empty_state={self.empty_state!r})"


class Population:
    """A finite set of opaque individual identifiers together with the
    partition marking which of them are strongly indistinguishable."""

    __slots__ = ("individuals", "tau")

    def __init__(self, individuals: Iterable, tau: Partition):
        individuals = tuple(sorted(set(individuals), key=ident_key))
        if tau.ground_set != frozenset(individuals):
            raise DomainMismatchError("tau must partition exactly the individual set")
        self.individuals = individuals
        self.tau = tau

    @classmethod
    def fully_distinguishable(cls, individuals) -> "Population":
        individuals = tuple(individuals)
        return cls(individuals, Partition.singletons(individuals))

    @classmethod
    def indistinguishable(cls, individuals) -> "Population":
        individuals = tuple(individuals)
        return cls(individuals, Partition.single_block(individuals))

    def size(self) -> int:
        return len(self.individuals)

    def __eq__(self, other):
        return (
            isinstance(other, Population)
            and self.individuals == other.individuals
            and self.tau == other.tau
        )

    def __hash__(self):
        return hash((self.individuals, self.tau))

    def __repr__(self):
        return f"Population({list(self.individuals)!r}, {self.tau!r})"


class AssignmentFunction:
    """A total map from the individuals of one population into a state space."""

    __slots__ = ("population", "space", "values", "_key")

    def __init__(self, population: Population, space: StateSpace, values: dict):
        values = dict(values)
        if set(values) != set(population.individuals):
            raise DomainMismatchError("values must cover exactly the population's individuals")
        for state in values.values():
            if state not in space:
                raise ValueError(f"state {state!r} is not in the state space")
        self.population = population
        self.space = space
        self.values = values
        # lexicographic key under (individual order, state order)
        self._key = tuple(space.state_index(values[x]) for x in population.individuals)

    def __call__(self, x):
        return self.values[x]

    def compose(self, nu: Bijection) -> "AssignmentFunction":
        """Precompose with a bijection into this function's population:
        (f . nu)(x) = f(nu(x)), an assignment function on nu's domain."""
        if nu.codomain != frozenset(self.population.individuals):
            raise DomainMismatchError("bijection must land in this function's population")
        domain = tuple(sorted(nu.domain, key=ident_key))
        # pull the block structure back through nu
        pulled = defaultdict(list)
        for x in domain:
            image_block = self.population.tau.block_of(nu(x))
            pulled[image_block].append(x)
        population = Population(domain, Partition(pulled.values()))
        return AssignmentFunction(population, self.space, {x: self.values[nu(x)] for x in domain})

    def permuted(self, sigma) -> "AssignmentFunction":
        """(f . sigma) for a permutation of this function's own individuals."""
        return AssignmentFunction(
            self.population, self.space, {x: self.values[sigma(x)] for x in self.population.individuals}
        )

    def is_injective(self) -> bool:
        vals = list(self.values.values())
        return len(set(vals)) == len(vals)

    def misses_empty_state(self) -> bool:
        return all(v != self.space.empty_state for v in self.values.values())

    def sort_key(self):
        """Deterministic order across functions, also across populations."""
        return (
            tuple(ident_key(x) for x in self.population.individuals),
            tuple(tuple(ident_key(x) for x in b) for b in self.population.tau.blocks),
            self._key,
        )

    def __eq__(self, other):
        return (
            isinstance(other, AssignmentFunction)
            and self.population == other.population
            and self.space == other.space
            and self._key == other._key
        )

    def __hash__(self):
        return hash((self.population, self.space, self._key))

    def __repr__(self):
        inner = ", ".join(f"{x!r}->{self.values[x]!r}" for x in self.population.individuals)
        return f"AssignmentFunction({inner})"


class CountingMeasure:
    """An integer-valued measure with finitely many atoms: a finite multiset
    over an arbitrary hashable carrier (states, laws, parameters...)."""

    __slots__ = ("atoms",)

    def __init__(self, points=(), counts: dict | None = None):
        atoms: dict = {}
        if counts is not None:
            for point, k in dict(counts).items():
                k = int(k)
                if k < 0:
                    raise ValueError("multiplicities must be nonnegative")
                if k > 0:
                    atoms[point] = atoms.get(point, 0) + k
        for point in points:
            atoms[point] = atoms.get(point, 0) + 1
        self.atoms = atoms

    @property
    def total_mass(self) -> int:
        return sum(self.atoms.values())

    def count(self, point) -> int:
        return self.atoms.get(point, 0)

    def mass_on(self, carrier_subset) -> int:
        """Total multiplicity of the atoms lying in the given subset
        (a container, or a predicate on carrier points)."""
        if callable(carrier_subset):
            return sum(k for p, k in self.atoms.items() if carrier_subset(p))
        members = set(carrier_subset)
        return sum(k for p, k in self.atoms.items() if p in members)

    def items(self):
        return sorted(self.atoms.items(), key=lambda kv: repr(kv[0]))

    def __len__(self):
        return len(self.atoms)

    def __eq__(self, other):
        return isinstance(other, CountingMeasure) and self.atoms == other.atoms

    def __hash__(self):
        return hash(frozenset(self.atoms.items()))

    def __repr__(self):
        inner = ", ".join(f"{p!r}: {k}" for p, k in self.items())
        return "CountingMeasure({%s})" % inner


def function_space(
    Y: Population,
    space: StateSpace,
    *,
    injective_only: bool = False,
    proper_only: bool = False,
    max_size: int = MAX_FUNCTION_SPACE,
) -> list[AssignmentFunction]:
    """Enumerate the full assignment-function space of a population, in
    lexicographic order.  Optional filters restrict to injective functions
    and/or to functions avoiding the empty state (both filters are stable
    under every permutation, so the restricted space stays quotient-closed).
    """
    n = Y.size()
    total = len(space.states) ** n
    if total > max_size:
        raise SizeLimitError(f"function space of size {total} exceeds bound {max_size}")
    out = []
    for combo in itertools.product(space.states, repeat=n):
        f = AssignmentFunction(Y, space, dict(zip(Y.individuals, combo)))
        if injective_only and not f.is_injective():
            continue
        if proper_only and not f.misses_empty_state():
            continue
        out.append(f)
    return out


def rho_related(f: AssignmentFunction, g: AssignmentFunction) -> bool:
    """True iff f and g differ only by a permutation of strongly
    indistinguishable individuals of their (shared) population."""
    if f.population != g.population or f.space != g.space:
        raise DomainMismatchError("functions live on different populations or state spaces")
    for sigma in sym_group(f.population.tau):
        if all(f.values[x] == g.values[sigma(x)] for x in f.population.individuals):
            return True
    return False


def _orbit(f: AssignmentFunction, group) -> list[AssignmentFunction]:
    seen = {}
    for sigma in group:
        h = f.permuted(sigma)
        seen[h._key] = h
    return [seen[k] for k in sorted(seen)]


def rho_classes(
    Y: Population,
    space: StateSpace,
    *,
    injective_only: bool = False,
    proper_only: bool = False,
    max_size: int = MAX_FUNCTION_SPACE,
) -> list[list[AssignmentFunction]]:
    """Partition the function space into equivalence classes of the
    within-population relation.  Classes and members are ordered
    lexicographically; each class's first member is its representative.
    """
    functions = function_space(
        Y, space, injective_only=injective_only, proper_only=proper_only, max_size=max_size
    )
    group = sym_group(Y.tau)
    by_canon: dict = {}
    for f in functions:
        canon = min(f.permuted(sigma)._key for sigma in group)
        by_canon.setdefault(canon, []).append(f)
    classes = [sorted(fs, key=lambda f: f._key) for _, fs in sorted(by_canon.items())]
    return classes


def is_saturated_event(F: Iterable[AssignmentFunction]) -> bool:
    """True iff the event cannot distinguish strongly indistinguishable
    individuals, i.e. it is a union of whole within-population classes."""
    F = list(F)
    if not F:
        return True
    population = F[0].population
    space = F[0].space
    for f in F[1:]:
        if f.population != population or f.space != space:
            raise DomainMismatchError("event mixes functions of different populations")
    keys = {f._key for f in F}
    group = sym_group(population.tau)
    for f in F:
        for sigma in group:
            if f.permuted(sigma)._key not in keys:
                return False
    return True


def saturate_event(F: Iterable[AssignmentFunction]) -> set[AssignmentFunction]:
    """Smallest saturated superset of the event: the union of the
    within-population classes meeting it."""
    F = list(F)
    if not F:
        return set()
    population = F[0].population
    for f in F[1:]:
        if f.population != population or f.space != F[0].space:
            raise DomainMismatchError("event mixes functions of different populations")
    group = sym_group(population.tau)
    out: set[AssignmentFunction] = set()
    for f in F:
        out.update(_orbit(f, group))
    return out


def rho_star_related(f: AssignmentFunction, g: AssignmentFunction) -> bool:
    """Cross-population equivalence: true iff some block-preserving bijection
    between the two populations carries g onto f."""
    if f.space != g.space:
        raise DomainMismatchError("functions use different state spaces")
    for nu in relation_preserving_bijections(f.population.tau, g.population.tau):
        if all(f.values[x] == g.values[nu(x)] for x in f.population.individuals):
            return True
    return False


def rho_star_classes(functions: Iterable[AssignmentFunction]) -> list[list[AssignmentFunction]]:
    """Group assignment functions (possibly on different populations) into
    classes of the cross-population relation, deterministically ordered."""
    functions = sorted(set(functions), key=lambda f: f.sort_key())
    parent = list(range(len(functions)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, f in enumerate(functions):
        for j in range(i + 1, len(functions)):
            if find(i) != find(j) and rho_star_related(f, functions[j]):
                parent[find(j)] = find(i)
    groups = defaultdict(list)
    for i, f in enumerate(functions):
        groups[find(i)].append(f)
    return [groups[r] for r in sorted(groups, key=lambda r: functions[r].sort_key())]


def xi(f: AssignmentFunction) -> CountingMeasure:
    """Counting-measure image of an assignment function: one atom per
    individual, placed at that individual's state."""
    return CountingMeasure(f.values[x] for x in f.population.individuals)


def t_sub(f: AssignmentFunction, X_sub: Iterable) -> CountingMeasure:
    """Counting-measure image of the restriction of f to a subset of
    individuals."""
    X_sub = set(X_sub)
    if not X_sub.issubset(f.population.individuals):
        raise DomainMismatchError("subset must consist of the population's individuals")
    return CountingMeasure(f.values[x] for x in X_sub)


def t_sub_is_measurable(Y: Population, X_sub: Iterable) -> bool:
    """True iff restricting to X_sub is compatible with the
    indistinguishability structure, i.e. X_sub is a union of blocks."""
    X_sub = set(X_sub)
    if not X_sub.issubset(Y.individuals):
        raise DomainMismatchError("subset must consist of the population's individuals")
    for block in Y.tau.blocks:
        hit = X_sub.intersection(block)
        if hit and len(hit) != len(block):
            return False
    return True
