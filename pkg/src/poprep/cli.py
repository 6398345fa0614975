"""Command-line front end.

Subcommands: quotient (class structure of a configured population), stats
(statistic queries as provenance-tagged records), sample (seeded draws as
JSON lines plus a histogram summary) and check (the brute-force verification
suites).  Output is canonical JSON (sorted keys) or CSV, byte-identical for
identical config and seed; exit codes: 0 ok, 1 check failure, 2 config
error, 3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
import time

from . import checks
from .config import Experiment, load_experiment
from .core import function_space, rho_classes, rho_star_classes
from .errors import ConfigError, PopulationModelError, SizeLimitError
from .representation import (
    cardinality_moment,
    chi_and_chibar,
    chi_m,
    collapsed_moments,
    derive_seed,
    mean_and_variance_on_laws,
    mean_mass,
    pgf,
    sample,
    structure_moment,
)


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _render_function(f) -> dict:
    return {
        "values": {str(x): str(f.values[x]) for x in f.population.individuals},
        "blocks": [[str(x) for x in b] for b in f.population.tau.blocks],
    }


def cmd_quotient(args) -> int:
    exp = load_experiment(args.config)
    section = exp.quotient
    if section is None:
        raise ConfigError("config has no quotient section")
    filters = {
        "injective_only": section.get("injective_only", False),
        "proper_only": section.get("proper_only", False),
        "max_size": exp.bounds["max_function_space"],
    }
    if section["relation"] == "within":
        name = section.get("population")
        if name is None:
            raise ConfigError("a within-population quotient names one population")
        if name not in exp.populations:
            raise ConfigError(f"unknown population {name!r}")
        classes = rho_classes(exp.populations[name], exp.space, **filters)
        scope = {"population": name}
    else:
        names = section.get("populations")
        if not names:
            raise ConfigError("a cross-population quotient names a list of populations")
        fns = []
        for name in names:
            if name not in exp.populations:
                raise ConfigError(f"unknown population {name!r}")
            fns.extend(function_space(exp.populations[name], exp.space, **filters))
        classes = rho_star_classes(fns)
        scope = {"populations": list(names)}
    report = {
        "relation": section["relation"],
        **scope,
        "provenance": "exact-enumeration",
        "class_count": len(classes),
        "classes": [
            {"size": len(cls_), "representative": _render_function(cls_[0])}
            for cls_ in classes
        ],
    }
    _emit(_canonical_json(report), args.out)
    return 0


def _predicate_from_config(body: dict):
    if body["kind"] == "always_true":
        return lambda dist: True
    states = body.get("states", [])
    bound = body.get("bound", 0.0)
    return lambda dist: mean_mass(dist, states) >= bound


def _run_query(exp: Experiment, query: dict) -> dict:
    kind = query["kind"]
    if kind in ("cardinality_moment", "structure_moment"):
        if exp.representation is None:
            raise ConfigError(f"{kind} needs a representation section")
        n = query.get("n", 1)
        fn = cardinality_moment if kind == "cardinality_moment" else structure_moment
        return {"value": fn(exp.representation, n), "provenance": "exact-enumeration"}
    if kind == "mean_variance_laws":
        D = exp.discrete_law()
        if "theta" in query:
            B = query["theta"]
        elif "laws" in query:
            wanted = [exp.laws[name] for name in query["laws"] if name in exp.laws]
            if len(wanted) != len(query["laws"]):
                raise ConfigError(f"query {query['id']!r} references an unknown law")
            B = [i for i, law in enumerate(D.atom_laws) if law in set(wanted)]
        else:
            B = list(range(D.k))
        mean, variance = mean_and_variance_on_laws(D, B)
        return {"mean": mean, "variance": variance, "provenance": "exact-enumeration"}
    if kind == "collapsed_moments":
        D = exp.discrete_law()
        mean, variance = collapsed_moments(D, query.get("states", []))
        return {"mean": mean, "variance": variance, "provenance": "closed-form"}
    if kind == "pgf":
        D = exp.discrete_law()
        return {"value": pgf(D, query["z"]), "provenance": "closed-form"}
    if kind == "chi_m":
        P = exp.population_laws.get(query.get("law", ""))
        if P is None:
            raise ConfigError(f"query {query['id']!r} references an unknown population law")
        predicate = _predicate_from_config(query.get("predicate", {"kind": "always_true"}))
        return {
            "value": chi_m(P, query["m"], predicate),
            "provenance": "exact-enumeration",
        }
    if kind == "chi_chibar":
        P = exp.population_laws.get(query.get("law", ""))
        if P is None:
            raise ConfigError(f"query {query['id']!r} references an unknown population law")
        wanted = []
        for name in query.get("law_set", []):
            if name not in exp.laws:
                raise ConfigError(f"query {query['id']!r} references an unknown law")
            wanted.append(exp.laws[name])
        eps = exp.tolerances["eps_p"]
        chi, chibar = chi_and_chibar(
            P,
            lambda marginal: any(marginal.close_to(w, eps) for w in wanted),
            query.get("states", []),
        )
        return {"chi": chi, "chibar": chibar, "provenance": "exact-enumeration"}
    raise ConfigError(f"unknown query kind {kind!r}")


def cmd_stats(args) -> int:
    exp = load_experiment(args.config)
    records = []
    for query in exp.queries:
        started = time.perf_counter()
        values = _run_query(exp, query)
        elapsed_ms = 1000.0 * (time.perf_counter() - started)
        record = {"id": query["id"], "kind": query["kind"], **values}
        if args.timings:
            record["elapsed_ms"] = round(elapsed_ms, 3)
        records.append(record)
    if args.format == "csv":
        buf = io.StringIO()
        buf.write("id,kind,key,value,provenance\n")
        for record in records:
            provenance = record["provenance"]
            for key in sorted(record):
                if key in ("id", "kind", "provenance", "elapsed_ms"):
                    continue
                buf.write(f"{record['id']},{record['kind']},{key},{record[key]!r},{provenance}\n")
        _emit(buf.getvalue(), args.out)
    else:
        _emit(_canonical_json({"results": records}), args.out)
    return 0


def cmd_sample(args) -> int:
    exp = load_experiment(args.config)
    D = exp.discrete_law()
    count = exp.count if args.count is None else args.count
    seed = exp.seed if args.seed is None else args.seed
    vector_histogram: dict[str, int] = {}
    state_histogram: dict[str, int] = {}
    lines = []
    for i in range(count):
        vector, mu = sample(D, derive_seed(seed, i))
        key = ",".join(map(str, vector))
        vector_histogram[key] = vector_histogram.get(key, 0) + 1
        states = {str(s): k for s, k in mu.atoms.items()}
        for s, k in states.items():
            state_histogram[s] = state_histogram.get(s, 0) + k
        lines.append(json.dumps({"draw": i, "counts": list(vector), "states": states}, sort_keys=True))
    summary = {
        "summary": {
            "provenance": {"method": "monte-carlo", "draws": count, "seed": seed},
            "vector_histogram": vector_histogram,
            "state_histogram": state_histogram,
        }
    }
    lines.append(json.dumps(summary, sort_keys=True))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_check(args) -> int:
    names = args.suites or ["all"]
    try:
        results = checks.run_suites(names)
    except KeyError as exc:
        raise ConfigError(str(exc)) from exc
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status} {r.suite} :: {r.name} (instances={r.instances})"
        if r.detail:
            line += f" [{r.detail}]"
        lines.append(line)
    failed = sum(1 for r in results if not r.passed)
    lines.append(f"{len(results) - failed}/{len(results)} properties passed")
    if args.format == "json":
        report = {
            "results": [
                {
                    "suite": r.suite,
                    "property": r.name,
                    "instances": r.instances,
                    "passed": r.passed,
                    "detail": r.detail,
                }
                for r in results
            ],
            "passed": failed == 0,
        }
        _emit(_canonical_json(report), args.out)
    else:
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poprep",
        description="Partially-distinguishable stochastic populations: quotients, statistics, sampling, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_quotient = sub.add_parser("quotient", help="class structure of configured populations")
    p_quotient.add_argument("--config", required=True, help="experiment configuration (JSON)")
    p_quotient.add_argument("--out", help="write output to this path instead of stdout")

    p_stats = sub.add_parser("stats", help="run the configured statistic queries")
    p_stats.add_argument("--config", required=True)
    p_stats.add_argument("--format", choices=["json", "csv"], default="json")
    p_stats.add_argument("--out")
    p_stats.add_argument("--timings", action="store_true", help="include per-query timing (breaks byte-reproducibility)")

    p_sample = sub.add_parser("sample", help="draw seeded realizations as JSON lines")
    p_sample.add_argument("--config", required=True)
    p_sample.add_argument("--count", type=int, help="number of draws (default from config)")
    p_sample.add_argument("--seed", type=int, help="master seed (default from config)")
    p_sample.add_argument("--out")

    p_check = sub.add_parser("check", help="run verification suites")
    p_check.add_argument("suites", nargs="*", help="suite names, or 'all' (default)")
    p_check.add_argument("--format", choices=["text", "json"], default="text")
    p_check.add_argument("--out")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "quotient": cmd_quotient,
        "stats": cmd_stats,
        "sample": cmd_sample,
        "check": cmd_check,
    }
    try:
        return handlers[args.command](args)
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PopulationModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
