"""Random population representations and their statistics.

A stochastic representation is a finitely supported distribution over
representation classes.  Mapping each independent law to the counting
measure of its individual laws turns it into a point process on the space
of laws; with finitely many distinct individual laws it collapses further
to a distribution over integer multiplicity vectors, for which moments,
generating functions and seeded sampling are all exact or reproducible.
"""

from __future__ import annotations

import itertools
import random
from collections import defaultdict
from typing import Callable, Iterable, Sequence

from .combinatorics import ident_key
from .core import CountingMeasure
from .errors import (
    DomainMismatchError,
    IdentifiabilityError,
    IndependenceRequiredError,
)
from .laws import EPS_MASS, EPS_P, DiscreteLaw, PopulationLaw, RepresentationClass, canonicalize

MultiplicityVector = tuple  # counts per distinct individual law, fixed index order


def zeta(P: PopulationLaw) -> CountingMeasure:
    """Counting measure of a law's family of individual laws: one atom per
    individual, placed at that individual's law.

    Only defined for independent laws; deliberately forgets which individuals
    were strongly indistinguishable.
    """
    if not P.is_independent:
        raise IndependenceRequiredError("the law-space image requires independent individuals")
    return CountingMeasure(P.individual_laws[x] for x in P.population.individuals)


class StochasticRepresentation:
    """A finitely supported distribution over representation classes with
    independent representatives."""

    __slots__ = ("support", "structure_marginal")

    def __init__(
        self,
        support: Iterable[tuple[RepresentationClass, float]],
        *,
        eps_mass: float = EPS_MASS,
    ):
        merged: dict[RepresentationClass, float] = defaultdict(float)
        for cls_, mass in support:
            mass = float(mass)
            if mass < 0.0:
                raise ValueError("support masses must be nonnegative")
            if not cls_.canonical_law.is_independent:
                raise IndependenceRequiredError(
                    "support atoms must carry independent representatives"
                )
            if mass > 0.0:
                merged[cls_] += mass
        total = sum(merged.values())
        if abs(total - 1.0) > eps_mass:
            raise ValueError(f"support masses sum to {total!r}, not 1")
        self.support = tuple(
            sorted(merged.items(), key=lambda cm: _class_sort_key(cm[0]))
        )
        marginal: dict[tuple[int, ...], float] = defaultdict(float)
        for cls_, mass in self.support:
            marginal[cls_.canonical_structure] += mass
        self.structure_marginal = dict(marginal)

    @classmethod
    def from_laws(cls, weighted_laws: Iterable[tuple[PopulationLaw, float]]) -> "StochasticRepresentation":
        return cls((canonicalize(P), m) for P, m in weighted_laws)


def _class_sort_key(cls_: RepresentationClass):
    return (cls_.canonical_structure, cls_.canonical_law._canonical_body())


def cardinality_moment(M: StochasticRepresentation, n: int) -> float:
    """n-th moment of the number of individuals."""
    return sum(mass * cls_.cardinality ** n for cls_, mass in M.support)


def structure_moment(M: StochasticRepresentation, n: int) -> float:
    """n-th moment of the number of strongly indistinguishable
    sub-populations (blocks)."""
    return sum(mass * cls_.block_count ** n for cls_, mass in M.support)


def to_discrete(M: StochasticRepresentation) -> "DiscreteRepresentationLaw":
    """Collapse a representation onto the distinct individual laws it uses:
    every support atom becomes a multiplicity vector over that shared index."""
    seen: set[DiscreteLaw] = set()
    for cls_, _ in M.support:
        seen.update(cls_.canonical_law.individual_laws.values())
    atom_laws = tuple(sorted(seen, key=lambda law: law.sort_key()))
    index = {law: i for i, law in enumerate(atom_laws)}
    c: dict[MultiplicityVector, float] = defaultdict(float)
    for cls_, mass in M.support:
        counts = [0] * len(atom_laws)
        for law, k in zeta(cls_.canonical_law).atoms.items():
            counts[index[law]] += k
        c[tuple(counts)] += mass
    return DiscreteRepresentationLaw(atom_laws, dict(c))


class DiscreteRepresentationLaw:
    """A representation given by finitely many distinct individual laws and a
    distribution over their multiplicity vectors."""

    __slots__ = ("atom_laws", "c", "_outcomes")

    def __init__(
        self,
        atom_laws: Sequence[DiscreteLaw],
        c: dict,
        *,
        eps_mass: float = EPS_MASS,
        eps_p: float = EPS_P,
    ):
        atom_laws = tuple(atom_laws)
        for i in range(len(atom_laws)):
            for j in range(i + 1, len(atom_laws)):
                if atom_laws[i].tv_distance(atom_laws[j]) <= eps_p:
                    raise IdentifiabilityError(
                        f"atom laws {i} and {j} are indistinguishable within tolerance"
                    )
        clean: dict[MultiplicityVector, float] = {}
        for vector, mass in dict(c).items():
            vector = tuple(int(k) for k in vector)
            if len(vector) != len(atom_laws):
                raise ValueError("multiplicity vectors must index every atom law")
            if any(k < 0 for k in vector):
                raise ValueError("multiplicities must be nonnegative")
            mass = float(mass)
            if mass < 0.0:
                raise ValueError("vector masses must be nonnegative")
            if mass > 0.0:
                clean[vector] = clean.get(vector, 0.0) + mass
        total = sum(clean.values())
        if abs(total - 1.0) > eps_mass:
            raise ValueError(f"vector masses sum to {total!r}, not 1")
        self.atom_laws = atom_laws
        self.c = clean
        self._outcomes = tuple(sorted(clean.items()))

    @property
    def k(self) -> int:
        return len(self.atom_laws)

    def outcomes(self) -> tuple:
        """(vector, mass) pairs in deterministic order."""
        return self._outcomes

    def mean_count(self, theta: int) -> float:
        return sum(mass * vector[theta] for vector, mass in self._outcomes)

    def count_product_moment(self, theta: int, theta2: int) -> float:
        return sum(mass * vector[theta] * vector[theta2] for vector, mass in self._outcomes)

    def count_covariance(self, theta: int, theta2: int) -> float:
        return self.count_product_moment(theta, theta2) - self.mean_count(theta) * self.mean_count(theta2)

    def as_law_measure_distribution(self) -> dict[CountingMeasure, float]:
        """The induced distribution over counting measures on laws; the
        index-free view, used for order-insensitive comparison."""
        out: dict[CountingMeasure, float] = defaultdict(float)
        for vector, mass in self._outcomes:
            mu = CountingMeasure(counts={
                law: k for law, k in zip(self.atom_laws, vector) if k
            })
            out[mu] += mass
        return dict(out)

    def __eq__(self, other):
        if not isinstance(other, DiscreteRepresentationLaw):
            return NotImplemented
        return self.as_law_measure_distribution() == other.as_law_measure_distribution()

    def __hash__(self):
        return hash(frozenset(self.as_law_measure_distribution().items()))

    def __repr__(self):
        return f"DiscreteRepresentationLaw(k={self.k}, outcomes={len(self._outcomes)})"


def _draw(rng: random.Random, weighted: Iterable[tuple[object, float]]):
    u = rng.random()
    acc = 0.0
    item = None
    for item, mass in weighted:
        acc += mass
        if u < acc:
            return item
    return item  # float round-off: fall back to the last item


def sample(D: DiscreteRepresentationLaw, seed: int) -> tuple[MultiplicityVector, CountingMeasure]:
    """Draw one realization: a multiplicity vector, then that many
    independent states from each atom law.  Deterministic given the seed."""
    rng = random.Random(seed)
    vector = _draw(rng, D.outcomes())
    states = []
    for theta, count in enumerate(vector):
        law = D.atom_laws[theta]
        for _ in range(count):
            states.append(_draw(rng, law.items()))
    return vector, CountingMeasure(states)


def derive_seed(master_seed: int, index: int) -> int:
    """Per-draw seed for batch sampling, stable across runs."""
    return master_seed * 1_000_003 + index


def sample_many(D: DiscreteRepresentationLaw, count: int, master_seed: int):
    """Deterministic stream of realizations from per-draw derived seeds."""
    for i in range(count):
        yield sample(D, derive_seed(master_seed, i))


def mean_and_variance_on_laws(D: DiscreteRepresentationLaw, B: Iterable[int]) -> tuple[float, float]:
    """Mean and variance of the number of individuals whose law index lies in
    B, computed by direct expectation over the vector distribution."""
    B = set(B)
    mean = 0.0
    second = 0.0
    for vector, mass in D.outcomes():
        n_b = sum(vector[t] for t in B)
        mean += mass * n_b
        second += mass * n_b * n_b
    return mean, second - mean * mean


def collapsed_moments(
    D: DiscreteRepresentationLaw, B: Iterable, *, consistency_tol: float = 1e-9
) -> tuple[float, float]:
    """Mean and variance of the number of individuals inside a state set.

    Computed in closed form from per-atom means and covariances, and
    cross-checked against the direct expectation over the vector
    distribution; disagreement beyond tolerance means a bug, so it raises.
    """
    B = set(B)
    p_b = [law.mass_on(B) for law in D.atom_laws]

    means = [D.mean_count(t) for t in range(D.k)]
    m_closed = sum(m * p for m, p in zip(means, p_b))
    v_closed = 0.0
    for t in range(D.k):
        for u in range(D.k):
            v_closed += D.count_covariance(t, u) * p_b[t] * p_b[u]

    m_direct = 0.0
    second = 0.0
    for vector, mass in D.outcomes():
        val = sum(k * p for k, p in zip(vector, p_b))
        m_direct += mass * val
        second += mass * val * val
    v_direct = second - m_direct * m_direct

    if abs(m_closed - m_direct) > consistency_tol or abs(v_closed - v_direct) > consistency_tol:
        raise ArithmeticError(
            f"closed-form and direct moments disagree: "
            f"({m_closed}, {v_closed}) vs ({m_direct}, {v_direct})"
        )
    return m_closed, v_closed


def pgfl(D: DiscreteRepresentationLaw, h: Callable[[int], float]) -> float:
    """Probability-generating functional over the atom laws, evaluated at a
    functional given by its values h(theta) per law index; 0**0 == 1."""
    values = [float(h(t)) for t in range(D.k)]
    for v in values:
        if v < 0.0:
            raise ValueError(f"h must be nonnegative, got {v!r}")
    total = 0.0
    for vector, mass in D.outcomes():
        prod = 1.0
        for v, k in zip(values, vector):
            if k:
                prod *= v ** k
        total += mass * prod
    return total


def pgf(D: DiscreteRepresentationLaw, z: Sequence[float]) -> float:
    """Probability-generating function of the multiplicity vector; agrees
    with the functional form evaluated at h(theta) = z[theta]."""
    z = [float(v) for v in z]
    if len(z) != D.k:
        raise DomainMismatchError(f"z has {len(z)} entries for {D.k} atom laws")
    return pgfl(D, lambda t: z[t])


def pushforward_distribution(P: PopulationLaw, X_sub: Iterable) -> dict[CountingMeasure, float]:
    """Exact law of the counting-measure image of a sub-population: the
    induced point-process distribution of the individuals in X_sub."""
    X_sub = sorted(set(X_sub), key=ident_key)
    if not set(X_sub).issubset(P.population.individuals):
        raise DomainMismatchError("subset must consist of the population's individuals")
    out: dict[CountingMeasure, float] = defaultdict(float)
    if P.is_independent:
        supports = [P.individual_laws[x].support for x in X_sub]
        for combo in itertools.product(*supports):
            mass = 1.0
            for x, s in zip(X_sub, combo):
                mass *= P.individual_laws[x].mass(s)
            out[CountingMeasure(combo)] += mass
    else:
        for f, mass in P.masses.items():
            out[CountingMeasure(f.values[x] for x in X_sub)] += mass
    return dict(out)


def mean_mass(dist: dict[CountingMeasure, float], states: Iterable) -> float:
    """Expected mass a point-process distribution puts in a state set."""
    states = set(states)
    return sum(prob * mu.mass_on(states) for mu, prob in dist.items())


def chi_m(P: PopulationLaw, m: int, B: Callable[[dict], bool]) -> int:
    """Number of size-m blocks whose induced point-process distribution
    satisfies the predicate B (evaluated on the exact finite distribution)."""
    count = 0
    for block in P.population.tau.blocks:
        if len(block) == m and B(pushforward_distribution(P, block)):
            count += 1
    return count


def chi_and_chibar(
    P: PopulationLaw, B_laws: Callable[[DiscreteLaw], bool], B_states: Iterable
) -> tuple[int, float]:
    """For a fully weakly-distinguishable population (every individual its own
    block): the number of individuals whose marginal law satisfies B_laws,
    and the total marginal mass the individuals put in B_states."""
    if not P.population.tau.is_finest():
        raise ValueError("marginal statistics need every individual in its own block")
    B_states = set(B_states)
    chi = 0
    chibar = 0.0
    for x in P.population.individuals:
        marginal = P.marginal(x)
        if B_laws(marginal):
            chi += 1
        chibar += marginal.mass_on(B_states)
    return chi, chibar
