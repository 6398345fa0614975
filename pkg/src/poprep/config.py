"""Experiment configuration: JSON loading, schema validation, resolution.

A configuration names its state space, populations, laws and derived objects
once and lets queries refer to them by name; every dangling reference is a
configuration error, reported before anything runs.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources

import jsonschema

from .combinatorics import Partition
from .core import AssignmentFunction, Population, StateSpace
from .errors import ConfigError, PopulationModelError, SizeLimitError
from .laws import DiscreteLaw, explicit_law, independent_law
from .parametric import ParametricFamily, gaussian_grid_family
from .representation import DiscreteRepresentationLaw, StochasticRepresentation, to_discrete

ENV_BOUNDS = {
    "max_partition_ground": "POPREP_MAX_PARTITION_GROUND",
    "max_group_order": "POPREP_MAX_GROUP_ORDER",
    "max_bijections": "POPREP_MAX_BIJECTIONS",
    "max_function_space": "POPREP_MAX_FUNCTION_SPACE",
}

DEFAULT_BOUNDS = {
    "max_partition_ground": 6,
    "max_group_order": 100_000,
    "max_bijections": 100_000,
    "max_function_space": 100_000,
}


@dataclass
class Experiment:
    space: StateSpace
    populations: dict = field(default_factory=dict)
    laws: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    population_laws: dict = field(default_factory=dict)
    representation: StochasticRepresentation | None = None
    discrete: DiscreteRepresentationLaw | None = None
    quotient: dict | None = None
    queries: list = field(default_factory=list)
    seed: int = 0
    count: int = 1000
    tolerances: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=lambda: dict(DEFAULT_BOUNDS))

    def discrete_law(self) -> DiscreteRepresentationLaw:
        if self.discrete is not None:
            return self.discrete
        if self.representation is not None:
            return to_discrete(self.representation)
        raise ConfigError("config provides neither a discrete form nor a representation")


def load_schema() -> dict:
    with resources.files("poprep").joinpath("config_schema.json").open() as fh:
        return json.load(fh)


def load_experiment(path: str) -> Experiment:
    """Read, validate and resolve an experiment configuration file."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    try:
        jsonschema.validate(raw, load_schema())
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"config fails schema validation: {exc.message}") from exc
    return resolve(raw)


def _lookup(table: dict, name: str, what: str):
    try:
        return table[name]
    except KeyError:
        raise ConfigError(f"unknown {what} {name!r}") from None


def resolve(raw: dict) -> Experiment:
    section = raw["state_space"]
    space = StateSpace(
        section["proper_states"], section.get("empty_state", "psi"), section.get("grid")
    )

    bounds = dict(DEFAULT_BOUNDS)
    bounds.update(raw.get("bounds", {}))
    for key, env in ENV_BOUNDS.items():
        if os.environ.get(env):
            bounds[key] = int(os.environ[env])
    tolerances = {"eps_mass": 1e-12, "eps_p": 1e-9}
    tolerances.update(raw.get("tolerances", {}))

    exp = Experiment(
        space=space,
        quotient=raw.get("quotient"),
        queries=raw.get("queries", []),
        seed=raw.get("seed", 0),
        count=raw.get("count", 1000),
        tolerances=tolerances,
        bounds=bounds,
    )

    try:
        for name, body in raw.get("laws", {}).items():
            exp.laws[name] = DiscreteLaw(body, eps_mass=tolerances["eps_mass"])

        for name, body in raw.get("populations", {}).items():
            individuals = body["individuals"]
            blocks = body.get("blocks")
            if blocks is None:
                tau = Partition.singletons(individuals)
            else:
                tau = Partition(blocks)
            exp.populations[name] = Population(individuals, tau)

        for name, body in raw.get("families", {}).items():
            if body["kind"] == "gaussian_grid":
                if "means" not in body or "sigma" not in body:
                    raise ConfigError(f"family {name!r} needs means and sigma")
                exp.families[name] = gaussian_grid_family(
                    body["means"], body["sigma"], space, eps_p=tolerances["eps_p"]
                )
            else:
                params = body.get("parameters")
                law_names = body.get("laws")
                if not params or not law_names or len(params) != len(law_names):
                    raise ConfigError(f"family {name!r} needs matching parameters and laws")
                exp.families[name] = ParametricFamily(
                    {
                        p: _lookup(exp.laws, ln, "law")
                        for p, ln in zip(params, law_names)
                    },
                    eps_p=tolerances["eps_p"],
                )

        for name, body in raw.get("population_laws", {}).items():
            Y = _lookup(exp.populations, body["population"], "population")
            if body["kind"] == "independent":
                assigned = body.get("individual_laws", {})
                fam = {
                    x: _lookup(exp.laws, _lookup(assigned, x, "individual assignment"), "law")
                    for x in Y.individuals
                }
                exp.population_laws[name] = independent_law(
                    Y, space, fam, eps_p=tolerances["eps_p"]
                )
            else:
                table = {}
                for entry in body.get("masses", []):
                    f = AssignmentFunction(Y, space, entry["values"])
                    table[f] = table.get(f, 0.0) + entry["mass"]
                exp.population_laws[name] = explicit_law(
                    Y,
                    space,
                    table,
                    eps_mass=max(tolerances["eps_mass"], 1e-9),
                    eps_p=tolerances["eps_p"],
                    check_admissible=body.get("check_admissible", True),
                )

        if "representation" in raw:
            weighted = [
                (_lookup(exp.population_laws, atom["law"], "population law"), atom["mass"])
                for atom in raw["representation"]["atoms"]
            ]
            exp.representation = StochasticRepresentation.from_laws(weighted)

        if "discrete" in raw:
            atom_laws = [_lookup(exp.laws, n, "law") for n in raw["discrete"]["atom_laws"]]
            c: dict = {}
            for entry in raw["discrete"]["c"]:
                vec = tuple(entry["counts"])
                c[vec] = c.get(vec, 0.0) + entry["mass"]
            exp.discrete = DiscreteRepresentationLaw(
                atom_laws, c, eps_mass=max(tolerances["eps_mass"], 1e-9), eps_p=tolerances["eps_p"]
            )
    except (ConfigError, SizeLimitError):
        raise
    except (PopulationModelError, ValueError, KeyError) as exc:
        raise ConfigError(f"config resolution failed: {exc}") from exc
    return exp
