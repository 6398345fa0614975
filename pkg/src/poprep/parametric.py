"""Parametrized families of individual laws and parameter-space transport.

When every atom law of a representation belongs to an identifiable family,
the whole point process can be carried back and forth between the space of
laws and the (much simpler) parameter set, preserving multiplicities and
therefore every moment.
"""

from __future__ import annotations

import math
from collections import defaultdict
from typing import Iterable

from .core import CountingMeasure, StateSpace
from .errors import CoverageError, IdentifiabilityError
from .laws import EPS_MASS, EPS_P, DiscreteLaw
from .representation import DiscreteRepresentationLaw


class ParametricFamily:
    """A finite identifiable family of individual laws indexed by parameters.

    Identifiability (distinct parameters give laws farther apart than the
    tolerance) makes the parameter of a covered law unique, so the family is
    invertible on its image.
    """

    __slots__ = ("parameters", "_laws", "eps_p")

    def __init__(self, laws: dict, *, eps_p: float = EPS_P):
        laws = dict(laws)
        parameters = tuple(sorted(laws))
        for i, a in enumerate(parameters):
            for b in parameters[i + 1 :]:
                if laws[a].tv_distance(laws[b]) <= eps_p:
                    raise IdentifiabilityError(
                        f"parameters {a!r} and {b!r} map to indistinguishable laws"
                    )
        self.parameters = parameters
        self._laws = laws
        self.eps_p = eps_p

    def law_of(self, theta) -> DiscreteLaw:
        try:
            return self._laws[theta]
        except KeyError:
            raise CoverageError(f"unknown parameter {theta!r}") from None

    def invert(self, law: DiscreteLaw):
        """The unique parameter whose law matches within tolerance."""
        for theta in self.parameters:
            if self._laws[theta].close_to(law, self.eps_p):
                return theta
        raise CoverageError("law is not in the family's image")

    def image(self) -> tuple[DiscreteLaw, ...]:
        return tuple(self._laws[t] for t in self.parameters)

    def __len__(self):
        return len(self.parameters)

    def __repr__(self):
        return f"ParametricFamily({len(self.parameters)} parameters)"


class ParameterProcess:
    """A finitely supported law of a point process on the parameter set."""

    __slots__ = ("outcomes",)

    def __init__(self, outcomes: dict, *, eps_mass: float = EPS_MASS):
        clean: dict[CountingMeasure, float] = {}
        for mu, mass in dict(outcomes).items():
            mass = float(mass)
            if mass < 0.0:
                raise ValueError("outcome masses must be nonnegative")
            if mass > 0.0:
                clean[mu] = clean.get(mu, 0.0) + mass
        total = sum(clean.values())
        if abs(total - 1.0) > eps_mass:
            raise ValueError(f"outcome masses sum to {total!r}, not 1")
        self.outcomes = clean

    def moment(self, B: Iterable, n: int) -> float:
        """n-th moment of the number of points falling in the parameter
        subset B."""
        B = set(B)
        return sum(mass * mu.mass_on(B) ** n for mu, mass in self.outcomes.items())

    def __eq__(self, other):
        return isinstance(other, ParameterProcess) and self.outcomes == other.outcomes

    def __hash__(self):
        return hash(frozenset(self.outcomes.items()))

    def __repr__(self):
        return f"ParameterProcess({len(self.outcomes)} outcomes)"


def pull_to_parameters(D: DiscreteRepresentationLaw, fam: ParametricFamily) -> ParameterProcess:
    """Relabel every atom law by its unique parameter; multiplicities and
    masses carry over unchanged."""
    thetas = [fam.invert(law) for law in D.atom_laws]
    outcomes: dict[CountingMeasure, float] = defaultdict(float)
    for vector, mass in D.outcomes():
        mu = CountingMeasure(counts={t: k for t, k in zip(thetas, vector) if k})
        outcomes[mu] += mass
    return ParameterProcess(dict(outcomes))


def push_to_laws(N: ParameterProcess, fam: ParametricFamily) -> DiscreteRepresentationLaw:
    """Map every parameter atom to its law; inverse of pull_to_parameters on
    processes supported inside the family."""
    used = sorted({t for mu in N.outcomes for t in mu.atoms})
    atom_laws = [fam.law_of(t) for t in used]
    index = {t: i for i, t in enumerate(used)}
    c: dict[tuple, float] = defaultdict(float)
    for mu, mass in N.outcomes.items():
        counts = [0] * len(used)
        for t, k in mu.atoms.items():
            counts[index[t]] += k
        c[tuple(counts)] += mass
    if not atom_laws:
        # an a.s.-empty process still needs a well-formed law: one empty vector
        return DiscreteRepresentationLaw((), {(): 1.0})
    return DiscreteRepresentationLaw(atom_laws, dict(c))


def moment_transport_check(
    D: DiscreteRepresentationLaw, fam: ParametricFamily, B: Iterable, n: int
) -> tuple[float, float]:
    """Both sides of the moment-transport identity, computed independently:
    left over the law-space process on the image of B, right over the pulled
    parameter process on B itself.  The caller asserts equality."""
    B = set(B)
    image = [fam.law_of(t) for t in B]
    in_image = [
        any(law.close_to(img, fam.eps_p) for img in image) for law in D.atom_laws
    ]
    left = 0.0
    for vector, mass in D.outcomes():
        hits = sum(k for k, member in zip(vector, in_image) if member)
        left += mass * hits ** n
    right = pull_to_parameters(D, fam).moment(B, n)
    return left, right


def _normal_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


def gaussian_grid_family(
    mu_grid: Iterable[float],
    sigma: float,
    space: StateSpace,
    *,
    eps_p: float = EPS_P,
    max_truncation_loss: float = 1e-6,
) -> ParametricFamily:
    """Family of Gaussians discretized onto the numeric grid of a state space.

    Each mean becomes the law of the grid cell containing a draw; the mass
    the continuous Gaussian puts outside the grid must stay below
    max_truncation_loss, and the remaining mass is renormalized.  The empty
    state gets no mass.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if space.grid is None:
        raise ValueError("state space carries no numeric grid")
    mu_grid = [float(m) for m in mu_grid]
    if len(set(mu_grid)) != len(mu_grid):
        raise IdentifiabilityError("duplicate means in the family grid")
    order = sorted(range(len(space.grid)), key=lambda i: space.grid[i])
    points = [space.grid[i] for i in order]
    labels = [space.proper_states[i] for i in order]
    # cell edges at midpoints; end cells extend by half the adjacent spacing
    edges = [points[0] - 0.5 * (points[1] - points[0]) if len(points) > 1 else points[0] - 0.5]
    for a, b in zip(points, points[1:]):
        edges.append(0.5 * (a + b))
    edges.append(points[-1] + 0.5 * (points[-1] - points[-2]) if len(points) > 1 else points[-1] + 0.5)

    laws = {}
    for mu in mu_grid:
        cell_masses = []
        for lo, hi in zip(edges, edges[1:]):
            cell_masses.append(_normal_cdf((hi - mu) / sigma) - _normal_cdf((lo - mu) / sigma))
        captured = sum(cell_masses)
        loss = 1.0 - captured
        if loss >= max_truncation_loss:
            raise ValueError(
                f"mean {mu} loses mass {loss:.3e} outside the grid (limit {max_truncation_loss:.0e})"
            )
        laws[mu] = DiscreteLaw(
            {lab: m / captured for lab, m in zip(labels, cell_masses)}, eps_mass=1e-9
        )
    return ParametricFamily(laws, eps_p=eps_p)
