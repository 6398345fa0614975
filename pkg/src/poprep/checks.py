"""Brute-force verification suites.

Every structural claim the library relies on is re-derived here at desk
scale by exhaustive enumeration or seeded randomization, independently of
the code paths being checked, and reported property by property.  The CLI
check command and the acceptance tests both run these suites.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import defaultdict
from dataclasses import dataclass

from . import combinatorics as cb
from . import core, laws, parametric, representation as rep


@dataclass
class PropertyResult:
    suite: str
    name: str
    instances: int
    passed: bool
    detail: str = ""


def _result(suite: str, name: str, instances: int, failures: list[str]) -> PropertyResult:
    return PropertyResult(suite, name, instances, not failures, "; ".join(failures[:3]))


def _spaces() -> list[core.StateSpace]:
    return [core.StateSpace(["s1"]), core.StateSpace(["s1", "s2"])]


def _law_pool(space: core.StateSpace) -> list[laws.DiscreteLaw]:
    return [
        laws.DiscreteLaw.point_mass(space.proper_states[0]),
        laws.DiscreteLaw.uniform(space.states),
        laws.DiscreteLaw.point_mass(space.empty_state),
    ]


def _independent_suite(space, max_n: int, tag: str = "") -> list[laws.PopulationLaw]:
    """Every independent law built from the standard pool, block-constant on
    every partition of identifier sets up to max_n."""
    pool = _law_pool(space)
    out = []
    for n in range(1, max_n + 1):
        ids = [f"{tag}{i}" for i in range(n)] if tag else list(range(n))
        for tau in cb.all_partitions(ids):
            Y = core.Population(ids, tau)
            for choice in itertools.product(range(len(pool)), repeat=len(tau.blocks)):
                fam = {}
                for bi, block in enumerate(tau.blocks):
                    for x in block:
                        fam[x] = pool[choice[bi]]
                out.append(laws.independent_law(Y, space, fam))
    return out


# ---------------------------------------------------------------------------
# partitions, groups, bijections


def check_partitions() -> list[PropertyResult]:
    suite = "partitions"
    out = []

    bell = [1, 1, 2, 5, 15, 52]
    failures = []
    for n in range(6):
        got = len(cb.all_partitions(range(n)))
        if got != bell[n]:
            failures.append(f"n={n}: {got} != {bell[n]}")
    out.append(_result(suite, "partition count equals the Bell number", 6, failures))

    failures, inst = [], 0
    for n in range(6):
        for tau in cb.all_partitions(range(n)):
            group = cb.sym_group(tau)
            members = set(group)
            inst += 1
            if cb.Permutation.identity(range(n)) not in members:
                failures.append(f"{tau!r}: missing identity")
            if len(group) != math.prod(math.factorial(len(b)) for b in tau.blocks):
                failures.append(f"{tau!r}: wrong order")
            if any(s.inverse() not in members for s in group):
                failures.append(f"{tau!r}: not closed under inverse")
            if any(a.compose(b) not in members for a in group for b in group):
                failures.append(f"{tau!r}: not closed under composition")
    out.append(_result(suite, "block-respecting permutations form a group of the predicted order", inst, failures))

    failures, inst = [], 0
    for n in range(1, 5):
        for tau in cb.all_partitions(range(n)):
            group = set(cb.sym_group(tau))
            bijections = set(cb.relation_preserving_bijections(tau, tau))
            inst += 1
            if not group <= {cb.Permutation(b.mapping) for b in bijections}:
                failures.append(f"{tau!r}: group not included in self-bijections")
            sizes = [len(b) for b in tau.blocks]
            shared = len(sizes) != len(set(sizes))
            if shared != (len(bijections) > len(group)):
                failures.append(f"{tau!r}: strictness mismatch")
    out.append(_result(suite, "self-bijections contain the group, strictly iff two blocks share a size", inst, failures))

    failures, inst = [], 0
    parts4 = cb.all_partitions(range(4))
    for p in parts4:
        if not cb.partition_refines(p, p):
            failures.append(f"not reflexive at {p!r}")
    for p, q in itertools.product(parts4, repeat=2):
        inst += 1
        if cb.partition_refines(p, q) and cb.partition_refines(q, p) and p != q:
            failures.append(f"antisymmetry fails at {p!r}, {q!r}")
    for p, q, r in itertools.product(parts4, repeat=3):
        if cb.partition_refines(p, q) and cb.partition_refines(q, r) and not cb.partition_refines(p, r):
            failures.append(f"transitivity fails at {p!r}, {q!r}, {r!r}")
    out.append(_result(suite, "refinement is a partial order", inst, failures))

    failures, inst = [], 0
    for p, q in itertools.product(parts4, repeat=2):
        inst += 1
        j = cb.partition_join([p, q])
        if not (cb.partition_refines(p, j) and cb.partition_refines(q, j)):
            failures.append(f"join not above {p!r}, {q!r}")
        for r in parts4:
            if cb.partition_refines(p, r) and cb.partition_refines(q, r) and not cb.partition_refines(j, r):
                failures.append(f"join not least at {p!r}, {q!r}, {r!r}")
        if cb.partition_join([p, p]) != p:
            failures.append(f"join not idempotent at {p!r}")
    out.append(_result(suite, "join is the least upper bound", inst, failures))
    return out


# ---------------------------------------------------------------------------
# equivalence axioms


def check_equivalence() -> list[PropertyResult]:
    suite = "equivalence"
    out = []

    failures, inst = [], 0
    for space in _spaces():
        for n in range(5):
            ids = list(range(n))
            for tau in cb.all_partitions(ids):
                Y = core.Population(ids, tau)
                fs = core.function_space(Y, space)
                group = cb.sym_group(tau)
                orbit = {f: frozenset(f.permuted(s)._key for s in group) for f in fs}
                for f in fs:
                    if not core.rho_related(f, f):
                        failures.append(f"not reflexive at {f!r}")
                for f, g in itertools.product(fs, repeat=2):
                    inst += 1
                    rel = core.rho_related(f, g)
                    if rel != (g._key in orbit[f]):
                        failures.append(f"relation disagrees with orbit at {f!r}, {g!r}")
                    if rel != (f._key in orbit[g]):
                        failures.append(f"not symmetric at {f!r}, {g!r}")
                    if rel and orbit[f] != orbit[g]:
                        failures.append(f"related functions with different orbits at {f!r}, {g!r}")
    out.append(_result(suite, "within-population relation is an equivalence (reflexive, symmetric, transitive)", inst, failures))

    failures, inst = [], 0
    space = _spaces()[0]
    fns = []
    for tag in ("", "w"):
        for n in range(4):
            ids = [f"{tag}{i}" for i in range(n)] if tag else list(range(n))
            for tau in cb.all_partitions(ids):
                fns.extend(core.function_space(core.Population(ids, tau), space))
    related = {}
    for f, g in itertools.combinations(fns, 2):
        related[(f, g)] = core.rho_star_related(f, g)
        inst += 1
        if related[(f, g)] != core.rho_star_related(g, f):
            failures.append(f"cross-population relation not symmetric at {f!r}, {g!r}")
    for f in fns:
        if not core.rho_star_related(f, f):
            failures.append(f"cross-population relation not reflexive at {f!r}")
    classes = core.rho_star_classes(fns)
    label = {}
    for i, cls_ in enumerate(classes):
        for f in cls_:
            label[f] = i
    for (f, g), rel in related.items():
        if rel != (label[f] == label[g]):
            failures.append(f"relation disagrees with its transitive classes at {f!r}, {g!r}")
    out.append(_result(suite, "cross-population relation is an equivalence on the union of function spaces", inst, failures))

    failures, inst = [], 0
    for space in _spaces():
        for n in range(4):
            ids = list(range(n))
            for tau in cb.all_partitions(ids):
                Y = core.Population(ids, tau)
                fs = core.function_space(Y, space)
                for f, g in itertools.combinations(fs, 2):
                    inst += 1
                    if core.rho_related(f, g) and not core.rho_star_related(f, g):
                        failures.append(f"within-relation not contained in cross-relation at {f!r}, {g!r}")
    out.append(_result(suite, "within-population relatedness implies cross-population relatedness", inst, failures))
    return out


# ---------------------------------------------------------------------------
# counting-measure bijection for fully indistinguishable populations


def check_counting_bijection() -> list[PropertyResult]:
    suite = "counting-bijection"
    failures, inst = [], 0
    for space in _spaces():
        m = len(space.states)
        for n in range(5):
            pops = [
                core.Population.indistinguishable(range(n)),
                core.Population.indistinguishable([f"b{i}" for i in range(n)]),
            ]
            fns = [f for Y in pops for f in core.function_space(Y, space)]
            classes = core.rho_star_classes(fns)
            inst += 1
            expected = math.comb(n + m - 1, n)
            if len(classes) != expected:
                failures.append(f"n={n}, m={m}: {len(classes)} classes != {expected}")
            images = []
            for cls_ in classes:
                img = {core.xi(f) for f in cls_}
                if len(img) != 1:
                    failures.append(f"n={n}, m={m}: image not constant on a class")
                mu = next(iter(img))
                if mu.total_mass != n:
                    failures.append(f"n={n}, m={m}: image mass {mu.total_mass} != {n}")
                images.append(mu)
            if len(set(images)) != len(images):
                failures.append(f"n={n}, m={m}: images collide across classes")
    return [_result(suite, "counting-measure image is a bijection from classes onto size-n multisets", inst, failures)]


# ---------------------------------------------------------------------------
# sub-population restriction measurability


def check_measurability() -> list[PropertyResult]:
    suite = "measurability"
    failures, inst = [], 0
    for space in _spaces():
        for n in range(5):
            ids = list(range(n))
            for tau in cb.all_partitions(ids):
                Y = core.Population(ids, tau)
                classes = core.rho_classes(Y, space)
                for r in range(n + 1):
                    for subset in itertools.combinations(ids, r):
                        inst += 1
                        claimed = core.t_sub_is_measurable(Y, subset)
                        brute = all(
                            len({core.t_sub(f, subset) for f in cls_}) == 1 for cls_ in classes
                        )
                        if claimed != brute:
                            failures.append(f"n={n}, tau={tau!r}, subset={subset}: {claimed} vs {brute}")
    return [_result(suite, "restriction is structure-compatible iff its image is constant on classes", inst, failures)]


# ---------------------------------------------------------------------------
# weak indistinguishability


def _explicit_validity_oracle(P: laws.PopulationLaw, eta: cb.Partition) -> bool:
    """Is the law invariant under every permutation respecting eta?  Computed
    directly on the mass table, independently of the library path."""
    table = P.as_explicit_table()
    for sigma in cb.sym_group(eta):
        for f, mass in table.items():
            if abs(table.get(f.permuted(sigma), 0.0) - mass) > 1e-9:
                return False
    return True


def check_weak_indistinguishability() -> list[PropertyResult]:
    suite = "weak-indistinguishability"
    out = []

    failures, inst = [], 0
    for space in _spaces():
        for P in _independent_suite(space, 4):
            inst += 1
            eta = laws.weak_indistinguishability(P)
            tau = P.population.tau
            if not cb.partition_refines(tau, eta):
                failures.append(f"eta above tau fails for {P!r}")
            by_law = defaultdict(list)
            for x in P.population.individuals:
                by_law[P.individual_laws[x]].append(x)
            if eta != cb.Partition(by_law.values()):
                failures.append(f"eta differs from equal-law grouping for {P!r}")
    out.append(_result(suite, "independent laws: weak indistinguishability groups exactly the equal laws, above tau", inst, failures))

    failures, inst = [], 0
    for space in _spaces():
        suite_laws = _independent_suite(space, 3)
        suite_laws.extend(_explicit_examples(space))
        for P in suite_laws:
            inst += 1
            eta = laws.weak_indistinguishability(P)
            if not _explicit_validity_oracle(P, eta):
                failures.append(f"returned partition not invariant for {P!r}")
            for q in cb.all_partitions(P.population.individuals):
                if _explicit_validity_oracle(P, q) and not cb.partition_refines(q, eta):
                    failures.append(f"valid partition {q!r} not dominated for {P!r}")
            if not cb.partition_refines(P.population.tau, eta):
                failures.append(f"eta above tau fails for {P!r}")
    out.append(_result(suite, "the returned partition is invariant and dominates every invariant partition", inst, failures))
    return out


def _explicit_examples(space: core.StateSpace) -> list[laws.PopulationLaw]:
    s1 = space.proper_states[0]
    psi = space.empty_state
    Y = core.Population.fully_distinguishable(["a", "b"])
    f = core.AssignmentFunction(Y, space, {"a": s1, "b": psi})
    g = core.AssignmentFunction(Y, space, {"a": psi, "b": s1})
    both = core.AssignmentFunction(Y, space, {"a": s1, "b": s1})
    symmetric = laws.explicit_law(Y, space, {f: 0.5, g: 0.5})
    lopsided = laws.explicit_law(Y, space, {f: 0.75, g: 0.25})
    mixed = laws.explicit_law(Y, space, {f: 0.25, g: 0.25, both: 0.5})
    return [symmetric, lopsided, mixed]


# ---------------------------------------------------------------------------
# representation classes and the law-space image


def check_representation() -> list[PropertyResult]:
    suite = "representation"
    out = []

    failures, inst = [], 0
    for space in _spaces():
        all_laws = _independent_suite(space, 3) + _independent_suite(space, 3, tag="w")
        canon = [laws.canonicalize(P) for P in all_laws]
        images = [rep.zeta(P) for P in all_laws]
        for i, j in itertools.combinations(range(len(all_laws)), 2):
            inst += 1
            related = laws.rho_bar_related(all_laws[i], all_laws[j])
            if related != (canon[i] == canon[j]):
                failures.append(f"canonical equality disagrees with relatedness at {i}, {j}")
            if related and images[i] != images[j]:
                failures.append(f"related laws with different law-space images at {i}, {j}")
    out.append(_result(suite, "canonical forms coincide exactly with relatedness; the law-space image is class-invariant", inst, failures))

    failures, inst = [], 0
    for space in _spaces():
        pool = _law_pool(space)
        for n in range(1, 4):
            ids = list(range(n))
            for law in pool:
                images = set()
                for tau in cb.all_partitions(ids):
                    Y = core.Population(ids, tau)
                    P = laws.independent_law(Y, space, {x: law for x in ids})
                    images.add(rep.zeta(P))
                inst += 1
                if len(images) != 1:
                    failures.append(f"n={n}: image depends on the block structure")
    out.append(_result(suite, "the law-space image forgets the block structure", inst, failures))

    failures, inst = [], 0
    for space in _spaces():
        for P in _independent_suite(space, 3)[::7]:
            classes = core.rho_classes(P.population, space)
            events = [cls_ for cls_ in classes]
            total = sum(laws.law_eval(P, cls_) for cls_ in events)
            inst += 1
            if abs(total - 1.0) > 1e-9:
                failures.append(f"class masses sum to {total}")
            if len(events) >= 2:
                joint = laws.law_eval(P, events[0] + events[1])
                parts = laws.law_eval(P, events[0]) + laws.law_eval(P, events[1])
                if abs(joint - parts) > 1e-12:
                    failures.append(f"additivity fails: {joint} vs {parts}")
    out.append(_result(suite, "law evaluation is additive and normalized over the class partition", inst, failures))
    return out


# ---------------------------------------------------------------------------
# generating functions


def _random_discrete_law(rng: random.Random, max_k: int = 4, max_support: int = 20) -> rep.DiscreteRepresentationLaw:
    space_states = ["s1", "s2", "psi"]
    k = rng.randint(1, max_k)
    atom_laws = []
    while len(atom_laws) < k:
        w = [rng.random() + 0.05 for _ in space_states]
        total = sum(w)
        law = laws.DiscreteLaw({s: v / total for s, v in zip(space_states, w)}, eps_mass=1e-9)
        if all(law.tv_distance(other) > 1e-6 for other in atom_laws):
            atom_laws.append(law)
    support = {}
    for _ in range(rng.randint(1, max_support)):
        vec = tuple(rng.randint(0, 5) for _ in range(k))
        support[vec] = support.get(vec, 0.0) + rng.random() + 0.01
    total = sum(support.values())
    c = {v: m / total for v, m in support.items()}
    return rep.DiscreteRepresentationLaw(atom_laws, c, eps_p=1e-7)


def check_generating_function(trials: int = 100, seed: int = 20260810) -> list[PropertyResult]:
    suite = "generating-function"
    rng = random.Random(seed)
    failures, inst = [], 0
    for _ in range(trials):
        D = _random_discrete_law(rng)
        h = [rng.random() for _ in range(D.k)]
        inst += 1
        g_fl = rep.pgfl(D, lambda t: h[t])
        g_fn = rep.pgf(D, h)
        if abs(g_fl - g_fn) > 1e-12:
            failures.append(f"functional {g_fl} vs function {g_fn}")
        if abs(rep.pgf(D, [1.0] * D.k) - 1.0) > 1e-12:
            failures.append("pgf at the all-ones vector is not 1")
    return [_result(suite, "functional and function forms agree at matched arguments; normalization holds", inst, failures)]


# ---------------------------------------------------------------------------
# collapsed moments


def check_collapsed_moments(trials: int = 100, seed: int = 20260811) -> list[PropertyResult]:
    suite = "collapsed-moments"
    out = []
    rng = random.Random(seed)

    failures, inst = [], 0
    for _ in range(trials):
        D = _random_discrete_law(rng)
        B = [s for s in ("s1", "s2", "psi") if rng.random() < 0.5]
        inst += 1
        p_b = [law.mass_on(B) for law in D.atom_laws]
        m_direct = 0.0
        second = 0.0
        for vector, mass in D.outcomes():
            val = sum(kk * p for kk, p in zip(vector, p_b))
            m_direct += mass * val
            second += mass * val * val
        v_direct = second - m_direct * m_direct
        m_closed, v_closed = rep.collapsed_moments(D, B)
        if abs(m_closed - m_direct) > 1e-9 or abs(v_closed - v_direct) > 1e-9:
            failures.append(f"closed ({m_closed}, {v_closed}) vs direct ({m_direct}, {v_direct})")
        if v_closed < -1e-9:
            failures.append(f"negative variance {v_closed}")
        full = ("s1", "s2", "psi")
        m_full, v_full = rep.collapsed_moments(D, full)
        card_mean, card_var = rep.mean_and_variance_on_laws(D, range(D.k))
        if abs(m_full - card_mean) > 1e-9 or abs(v_full - card_var) > 1e-9:
            failures.append("full state set does not reduce to cardinality moments")
    out.append(_result(suite, "closed forms equal direct expectations; full-set case reduces to cardinality", inst, failures))

    failures, inst = [], 0
    step = 1e-4
    for _ in range(30):
        D = _random_discrete_law(rng)
        for t in range(D.k):
            inst += 1
            upper = [1.0] * D.k
            lower = [1.0] * D.k
            upper[t] += step
            lower[t] -= step
            derivative = (rep.pgf(D, upper) - rep.pgf(D, lower)) / (2 * step)
            if abs(derivative - D.mean_count(t)) > 1e-6:
                failures.append(f"derivative {derivative} vs mean {D.mean_count(t)}")
    out.append(_result(suite, "central-difference derivative of the generating function recovers per-atom means", inst, failures))
    return out


# ---------------------------------------------------------------------------
# parameter transport


def _random_family_instance(rng: random.Random):
    k = rng.randint(2, 4)
    params = sorted(rng.sample([round(-2 + 0.5 * i, 2) for i in range(9)], k))
    family_laws = {}
    built: list[laws.DiscreteLaw] = []
    for theta in params:
        while True:
            w = [rng.random() + 0.05 for _ in range(3)]
            total = sum(w)
            law = laws.DiscreteLaw(
                {s: v / total for s, v in zip(("s1", "s2", "psi"), w)}, eps_mass=1e-9
            )
            if all(law.tv_distance(o) > 1e-6 for o in built):
                built.append(law)
                family_laws[theta] = law
                break
    fam = parametric.ParametricFamily(family_laws, eps_p=1e-7)
    size = rng.randint(1, k)
    chosen = sorted(rng.sample(range(k), size))
    atom_laws = [fam.law_of(params[i]) for i in chosen]
    support = {}
    for _ in range(rng.randint(1, 10)):
        vec = tuple(rng.randint(0, 4) for _ in range(size))
        support[vec] = support.get(vec, 0.0) + rng.random() + 0.01
    total = sum(support.values())
    D = rep.DiscreteRepresentationLaw(atom_laws, {v: m / total for v, m in support.items()}, eps_p=1e-7)
    return fam, D, params


def check_transport(trials: int = 60, seed: int = 20260812) -> list[PropertyResult]:
    suite = "transport"
    out = []
    rng = random.Random(seed)

    failures, inst = [], 0
    for _ in range(trials):
        fam, D, params = _random_family_instance(rng)
        B = [t for t in params if rng.random() < 0.5]
        for n in (1, 2, 3):
            inst += 1
            left, right = parametric.moment_transport_check(D, fam, B, n)
            if abs(left - right) > 1e-9:
                failures.append(f"n={n}: {left} vs {right}")
    out.append(_result(suite, "moments agree when computed on laws and on pulled-back parameters", inst, failures))

    failures, inst = [], 0
    for _ in range(trials):
        fam, D, _ = _random_family_instance(rng)
        N = parametric.pull_to_parameters(D, fam)
        inst += 1
        if parametric.push_to_laws(N, fam) != D:
            failures.append("pull then push changed the representation")
        if parametric.pull_to_parameters(parametric.push_to_laws(N, fam), fam) != N:
            failures.append("push then pull changed the parameter process")
    out.append(_result(suite, "pull/push round trips are identities", inst, failures))

    failures, inst = [], 0
    for _ in range(trials):
        fam, D, _ = _random_family_instance(rng)
        h = {law: rng.random() for law in fam.image()}
        inst += 1
        direct = rep.pgfl(D, lambda t: h[D.atom_laws[t]])
        N = parametric.pull_to_parameters(D, fam)
        via_params = sum(
            mass * math.prod(h[fam.law_of(t)] ** k for t, k in mu.atoms.items())
            for mu, mass in N.outcomes.items()
        )
        if abs(direct - via_params) > 1e-12:
            failures.append(f"{direct} vs {via_params}")
    out.append(_result(suite, "the generating functional transports through the parameter relabelling", inst, failures))
    return out


# ---------------------------------------------------------------------------
# sampling


def check_sampling(collision_draws: int = 100_000, histogram_draws: int = 20_000) -> list[PropertyResult]:
    suite = "sampling"
    out = []

    uniform2 = laws.DiscreteLaw.uniform(["m1", "m2"])
    D = rep.DiscreteRepresentationLaw((uniform2,), {(2,): 1.0})
    collisions = 0
    first_mode_pairs = 0
    for _, mu in rep.sample_many(D, collision_draws, master_seed=7):
        if len(mu) == 1:
            collisions += 1
            if mu.count("m1") == 2:
                first_mode_pairs += 1
    failures = []
    band = 3 * math.sqrt(0.25 / collision_draws)
    if abs(collisions / collision_draws - 0.5) > band:
        failures.append(f"collision frequency {collisions / collision_draws} outside {band} of 0.5")
    band_q = 3 * math.sqrt(0.25 * 0.75 / collision_draws)
    if abs(first_mode_pairs / collision_draws - 0.25) > band_q:
        failures.append(f"single-mode pair frequency {first_mode_pairs / collision_draws} off 0.25")
    out.append(_result(suite, "two indistinguishable draws collide in one mode half the time", collision_draws, failures))

    lawA = laws.DiscreteLaw({"m1": 0.3, "m2": 0.7})
    lawB = laws.DiscreteLaw.point_mass("m3")
    D2 = rep.DiscreteRepresentationLaw(
        (lawA, lawB), {(1, 0): 0.3, (0, 1): 0.25, (2, 1): 0.45}
    )
    vec_counts: dict = defaultdict(int)
    state_counts: dict = defaultdict(int)
    a_draws = 0
    for vector, mu in rep.sample_many(D2, histogram_draws, master_seed=11):
        vec_counts[vector] += 1
        for s, k in mu.atoms.items():
            if s in ("m1", "m2"):
                state_counts[s] += k
                a_draws += k
    failures = []
    for vector, p in D2.c.items():
        freq = vec_counts[vector] / histogram_draws
        band = 3 * math.sqrt(p * (1 - p) / histogram_draws)
        if abs(freq - p) > band:
            failures.append(f"vector {vector}: {freq} outside {band} of {p}")
    for s, p in (("m1", 0.3), ("m2", 0.7)):
        freq = state_counts[s] / a_draws
        band = 3 * math.sqrt(p * (1 - p) / a_draws)
        if abs(freq - p) > band:
            failures.append(f"state {s}: {freq} outside {band} of {p}")
    out.append(_result(suite, "vector and per-atom state histograms match their distributions", histogram_draws, failures))

    failures = []
    d_point = rep.DiscreteRepresentationLaw(
        (laws.DiscreteLaw.point_mass("m1"), laws.DiscreteLaw.point_mass("m2")),
        {(1, 1): 1.0},
    )
    expected = core.CountingMeasure(["m1", "m2"])
    for vector, mu in rep.sample_many(d_point, 200, master_seed=3):
        if vector != (1, 1) or mu != expected:
            failures.append(f"degenerate draw produced {vector}, {mu!r}")
    if rep.sample(rep.DiscreteRepresentationLaw((), {(): 1.0}), 5)[1] != core.CountingMeasure():
        failures.append("empty representation drew a nonempty sample")
    out.append(_result(suite, "degenerate laws sample deterministically", 201, failures))
    return out


# ---------------------------------------------------------------------------
# worked small cases


def check_worked_examples() -> list[PropertyResult]:
    suite = "worked-examples"
    out = []

    # two indistinguishable individuals, two representative states, injective maps
    space2 = core.StateSpace(["x1", "x2"])
    pair = core.Population.indistinguishable(["x", "xp"])
    classes = core.rho_classes(pair, space2, injective_only=True, proper_only=True)
    failures = []
    if len(classes) != 1 or len(classes[0]) != 2:
        failures.append(f"got {[len(c) for c in classes]} instead of one class of two maps")
    out.append(_result(suite, "two symmetric injective maps glue into a single class", 1, failures))

    # distinguishable pairs injective into two states: everything collapses
    failures = []
    fns = []
    for ids in (["a1", "a2"], ["b1", "b2"], ["c1", "c2"]):
        Y = core.Population.fully_distinguishable(ids)
        fns.extend(core.function_space(Y, space2, injective_only=True, proper_only=True))
    star_classes = core.rho_star_classes(fns)
    if len(star_classes) != 1:
        failures.append(f"{len(star_classes)} classes instead of a singleton")
    if not all(core.rho_star_related(f, g) for f, g in itertools.combinations(fns, 2)):
        failures.append("some pair of functions is not related")
    mu = {core.xi(f) for f in fns}
    if mu != {core.CountingMeasure(["x1", "x2"])}:
        failures.append("collapsed class does not match the two-point counting measure")
    out.append(_result(suite, "the cross-population relation collapses distinguishable pairs to one class", 1, failures))

    # three individuals over two available individual laws
    p1 = laws.DiscreteLaw({"x1": 0.8, "x2": 0.2})
    p2 = laws.DiscreteLaw({"x1": 0.1, "x2": 0.9})
    ids = ["i1", "i2", "i3"]
    Y3 = core.Population.fully_distinguishable(ids)
    weighted = []
    for combo in itertools.product((p1, p2), repeat=3):
        weighted.append((laws.independent_law(Y3, space2, dict(zip(ids, combo))), 0.125))
    M = rep.StochasticRepresentation.from_laws(weighted)
    D = rep.to_discrete(M)
    failures = []
    vectors = {v for v, _ in D.outcomes()}
    if vectors != {(3, 0), (2, 1), (1, 2), (0, 3)}:
        failures.append(f"support {sorted(vectors)} is not the four expected vectors")
    out.append(_result(suite, "three individuals over two laws yield exactly four multiplicity vectors", 1, failures))

    # the law-space image counts laws with multiplicity
    failures = []
    P = laws.independent_law(Y3, space2, {"i1": p1, "i2": p1, "i3": p2})
    if rep.zeta(P) != core.CountingMeasure(counts={p1: 2, p2: 1}):
        failures.append("law-space image of a 2+1 family is wrong")
    out.append(_result(suite, "the law-space image of a 2+1 family has multiplicities 2 and 1", 1, failures))

    # structure marginal only sees block-size multisets
    failures = []
    Y_a = core.Population(["u", "v"], cb.Partition([["u", "v"]]))
    Y_b = core.Population(["s", "t"], cb.Partition([["s", "t"]]))
    law_u = laws.DiscreteLaw.uniform(space2.states)
    P_a = laws.independent_law(Y_a, space2, {"u": law_u, "v": law_u})
    P_b = laws.independent_law(Y_b, space2, {"s": law_u, "t": law_u})
    M2 = rep.StochasticRepresentation.from_laws([(P_a, 0.5), (P_b, 0.5)])
    if M2.structure_marginal != {(2,): 1.0}:
        failures.append(f"structure marginal {M2.structure_marginal} not merged by relabelling")
    out.append(_result(suite, "relabelled atoms with equal block sizes share a structure-marginal cell", 1, failures))
    return out


# ---------------------------------------------------------------------------


SUITES = {
    "partitions": check_partitions,
    "equivalence": check_equivalence,
    "counting-bijection": check_counting_bijection,
    "measurability": check_measurability,
    "weak-indistinguishability": check_weak_indistinguishability,
    "representation": check_representation,
    "generating-function": check_generating_function,
    "collapsed-moments": check_collapsed_moments,
    "transport": check_transport,
    "sampling": check_sampling,
    "worked-examples": check_worked_examples,
}


def run_suites(names=None) -> list[PropertyResult]:
    """Run the named suites (all by default) and collect their results."""
    if names is None or names == ["all"]:
        names = list(SUITES)
    results = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}")
        results.extend(SUITES[name]())
    return results
