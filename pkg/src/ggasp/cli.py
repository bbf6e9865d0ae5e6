"""Command-line interface: solve, verify, gen, bench.

Exit codes for ``solve``: 0 a stable assignment was found, 1 nonexistence
was proven, 2 the request was refused (guard violated or budget exceeded),
3 the input was invalid, 4 a cross-check disagreed.  Reports are JSON on
stdout and are byte-deterministic for fixed inputs and flags; wall-clock
timings are only included when requested.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

from . import generators as gen_mod
from . import instance as inst_mod
from . import verify
from .concepts import Concept
from .dispatch import ALGORITHMS, Guards, applicable_algorithms, solve
from .errors import BudgetExceededError, DispatchError, ValidationError
from .instance import Instance

EXIT_FOUND = 0
EXIT_ABSENT = 1
EXIT_REFUSED = 2
EXIT_INVALID = 3
EXIT_MISMATCH = 4


def _guards_from_args(args) -> Guards:
    kwargs = {}
    if args.max_p is not None:
        kwargs["max_p_tree"] = args.max_p
        kwargs["max_p_component"] = args.max_p
        kwargs["max_p_clique"] = args.max_p
    if args.max_component is not None:
        kwargs["max_component"] = args.max_component
    if args.budget is not None:
        kwargs["brute_budget"] = args.budget
        kwargs["subset_budget"] = args.budget
    return Guards(**kwargs)


def _witness_json(inst: Instance, witness) -> dict | None:
    if witness is None:
        return None
    if isinstance(witness, verify.Deviation):
        return {
            "kind": witness.kind,
            "player": witness.player,
            "activity": inst.activity_name(witness.activity),
        }
    return {
        "coalition": sorted(witness.coalition),
        "activity": inst.activity_name(witness.activity),
    }


def _certificate(inst: Instance, concept: Concept, pi) -> dict:
    """Verifier-backed certificate for an assignment."""
    if not verify.is_feasible(inst, pi):
        return {"stable": False, "concept": concept.value, "witness": None, "note": "infeasible"}
    if not verify.is_individually_rational(inst, pi):
        dev = verify.find_ns_deviation(inst, pi)
        return {
            "stable": False,
            "concept": concept.value,
            "witness": _witness_json(inst, dev),
            "note": "not individually rational",
        }
    if concept is Concept.NASH:
        witness = verify.find_ns_deviation(inst, pi)
    elif concept is Concept.INDIVIDUAL:
        witness = verify.find_is_deviation(inst, pi)
    else:
        witness = verify.find_core_block(inst, pi)
    return {
        "stable": witness is None,
        "concept": concept.value,
        "witness": _witness_json(inst, witness),
    }


def _print_json(doc):
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def cmd_solve(args) -> int:
    try:
        inst = inst_mod.load(args.input)
    except (ValidationError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    guards = _guards_from_args(args)
    concept = Concept.parse(args.concept)
    t0 = time.perf_counter()
    try:
        outcome = solve(inst, concept, args.algorithm, guards)
    except (DispatchError, BudgetExceededError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    elapsed = time.perf_counter() - t0
    report = {
        "concept": concept.value,
        "algorithm": outcome.algorithm,
        "exists": outcome.exists,
        "assignment": (
            inst_mod.assignment_to_json(inst, outcome.assignment)["assignment"]
            if outcome.exists
            else None
        ),
        "certificate": (
            _certificate(inst, concept, outcome.assignment)
            if outcome.exists
            else {
                "stable": False,
                "concept": concept.value,
                "witness": None,
                "proved_by": outcome.algorithm,
            }
        ),
        "instance_fingerprint": inst_mod.fingerprint(inst),
        "seed": args.seed,
    }
    if args.timing:
        report["wall_time_s"] = round(elapsed, 6)
    mismatch = False
    if args.cross_check:
        bits = {}
        for alg in applicable_algorithms(inst, concept, guards):
            try:
                bits[alg] = solve(inst, concept, alg, guards).exists
            except (DispatchError, BudgetExceededError):
                continue
        report["cross_check"] = bits
        mismatch = len(set(bits.values())) > 1
    _print_json(report)
    if mismatch:
        print("cross-check mismatch", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_FOUND if outcome.exists else EXIT_ABSENT


def cmd_verify(args) -> int:
    try:
        inst = inst_mod.load(args.input)
        with open(args.assignment, "r", encoding="utf-8") as fh:
            pi = inst_mod.assignment_from_json(inst, json.load(fh))
    except (ValidationError, OSError, json.JSONDecodeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    concept = Concept.parse(args.concept)
    cert = _certificate(inst, concept, pi)
    _print_json(cert)
    return EXIT_FOUND if cert["stable"] else EXIT_ABSENT


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _build_generated(args):
    family = args.family
    if family in ("stalker", "empty-core", "empty-is"):
        name = family.replace("-", "_")
        if args.copyable:
            return gen_mod.canonical_copyable(name)
        return gen_mod.canonical(name)
    if family == "random":
        inst = gen_mod.random_instance(
            args.seed or 0, args.n, args.p, args.graph_class, args.density, args.copyable
        )
        return gen_mod.Generated(inst, "random", args.graph_class)
    src = _load_json(args.source)
    if family == "rainbow":
        source = gen_mod.EdgeColoredPath(tuple(src["colors"]), src["k"])
        return gen_mod.from_rainbow_matching(source, args.variant.replace("-", "_"))
    if family == "mmm":
        source = gen_mod.BipartiteMMM(
            src["left"], src["right"], tuple(map(tuple, src["edges"])), src["k"]
        )
        return gen_mod.from_mmm(source, args.variant)
    if family == "b2sat":
        clauses = tuple(tuple((v, bool(s)) for v, s in clause) for clause in src["clauses"])
        return gen_mod.from_b2sat(gen_mod.B2Formula(clauses), args.variant.replace("-", "_"))
    if family == "x3c-star":
        return gen_mod.from_x3c_star(
            gen_mod.X3CInstance(src["k"], tuple(map(tuple, src["triples"])))
        )
    if family == "x3c-clique":
        return gen_mod.from_x3c_clique(
            gen_mod.X3CInstance(src["k"], tuple(map(tuple, src["triples"])))
        )
    if family == "regular-clique":
        source = gen_mod.RegularGraph(src["vertices"], tuple(map(tuple, src["edges"])))
        return gen_mod.from_regular_clique(source, args.k, args.variant)
    if family == "multicolored":
        source = gen_mod.ColoredGraph(
            src["vertices"], tuple(map(tuple, src["edges"])), tuple(src["colors"])
        )
        return gen_mod.from_multicolored(source, args.variant.replace("-", "_"))
    raise ValidationError(f"unknown family {family!r}")


def _build_witness(generated: gen_mod.Generated, sol) -> list[int]:
    family = generated.family
    if family == "rainbow":
        return gen_mod.rainbow_witness(generated, sol["matching"])
    if family == "mmm":
        return gen_mod.mmm_witness(generated, [tuple(e) for e in sol["matching"]])
    if family == "b2sat":
        return gen_mod.b2sat_witness(generated, dict(sol["assignment"]))
    if family in ("x3c_star", "x3c_clique"):
        return gen_mod.x3c_witness(generated, sol["cover"])
    if family == "regular_clique":
        return gen_mod.regular_clique_witness(generated, sol["clique"])
    if family == "multicolored":
        return gen_mod.multicolored_witness(generated, sol["vertices"])
    raise ValidationError(f"family {family!r} has no witness builder")


def cmd_gen(args) -> int:
    try:
        generated = _build_generated(args)
    except (ValidationError, KeyError, TypeError) as exc:
        print(f"invalid generator input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    inst_mod.dump(generated.instance, args.out)
    if args.witness is not None:
        try:
            pi = _build_witness(generated, _load_json(args.witness))
        except (ValidationError, KeyError) as exc:
            print(f"invalid source solution: {exc}", file=sys.stderr)
            return EXIT_INVALID
        path = args.witness_out or (str(args.out) + ".assignment.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(inst_mod.assignment_to_json(generated.instance, pi), fh, indent=2)
            fh.write("\n")
    return EXIT_FOUND


def _load_toml(path):
    try:
        import tomllib as toml
    except ImportError:  # python 3.10
        import tomli as toml
    with open(path, "rb") as fh:
        return toml.load(fh)


def _bench_one(job):
    """One bench row; top-level so a process pool can pickle it."""
    inst = inst_mod.loads(job["instance_text"])
    t0 = time.perf_counter()
    try:
        outcome = solve(inst, job["concept"], job["algorithm"])
        exists = outcome.exists
        algorithm = outcome.algorithm
        status = "ok"
    except (DispatchError, BudgetExceededError) as exc:
        exists, algorithm, status = "", job["algorithm"], f"refused: {exc}"
    elapsed = time.perf_counter() - t0
    return {
        "job": job["name"],
        "family": job["family"],
        "concept": job["concept"],
        "algorithm": algorithm,
        "repetition": job["repetition"],
        "exists": exists,
        "status": status,
        "wall_time_s": round(elapsed, 6),
        "seed": job.get("seed"),
    }


def cmd_bench(args) -> int:
    try:
        config = _load_toml(args.config)
    except Exception as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return EXIT_INVALID
    jobs = []
    for idx, spec in enumerate(config.get("jobs", [])):
        family = spec["family"]
        params = spec.get("params", {})
        ns = argparse.Namespace(
            family=family,
            variant=spec.get("variant", "ns"),
            copyable=params.get("copyable", False),
            seed=params.get("seed", 0),
            n=params.get("n", 4),
            p=params.get("p", 2),
            graph_class=params.get("graph_class", "general"),
            density=params.get("density", 0.5),
            source=spec.get("source"),
            k=params.get("k", 1),
        )
        generated = _build_generated(ns)
        text = inst_mod.dumps(generated.instance)
        for alg in spec.get("algorithms", ["auto"]):
            for rep in range(spec.get("repetitions", 1)):
                jobs.append(
                    {
                        "name": spec.get("name", f"job{idx}"),
                        "family": family,
                        "concept": spec.get("concept", "ns"),
                        "algorithm": alg,
                        "repetition": rep,
                        "instance_text": text,
                        "seed": params.get("seed"),
                    }
                )
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_bench_one, jobs))
    else:
        rows = [_bench_one(job) for job in jobs]
    fields = ["job", "family", "concept", "algorithm", "repetition", "exists", "status", "wall_time_s", "seed"]
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    return EXIT_FOUND


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ggasp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="find a stable assignment or prove none exists")
    ps.add_argument("--input", required=True)
    ps.add_argument("--concept", required=True, choices=[c.value for c in Concept])
    ps.add_argument("--algorithm", default="auto", choices=("auto",) + ALGORITHMS)
    ps.add_argument("--max-p", type=int, default=None, help="override activity-count guards")
    ps.add_argument("--max-component", type=int, default=None)
    ps.add_argument("--budget", type=int, default=None, help="enumeration budgets")
    ps.add_argument("--cross-check", action="store_true", help="run all applicable algorithms")
    ps.add_argument("--seed", type=int, default=None, help="recorded in the report")
    ps.add_argument("--timing", action="store_true", help="include wall time in the report")
    ps.set_defaults(func=cmd_solve)

    pv = sub.add_parser("verify", help="certify a given assignment")
    pv.add_argument("--input", required=True)
    pv.add_argument("--concept", required=True, choices=[c.value for c in Concept])
    pv.add_argument("--assignment", required=True)
    pv.set_defaults(func=cmd_verify)

    pg = sub.add_parser("gen", help="write a generated instance (and optional witness)")
    pg.add_argument(
        "family",
        choices=(
            "stalker", "empty-core", "empty-is", "rainbow", "mmm", "b2sat",
            "x3c-star", "x3c-clique", "regular-clique", "multicolored", "random",
        ),
    )
    pg.add_argument("--out", required=True)
    pg.add_argument("--source", help="source-problem JSON for reduction families")
    pg.add_argument("--variant", default="ns")
    pg.add_argument("--witness", help="source-solution JSON; also emit its assignment")
    pg.add_argument("--witness-out")
    pg.add_argument("--copyable", action="store_true")
    pg.add_argument("--k", type=int, default=1)
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("--n", type=int, default=4)
    pg.add_argument("--p", type=int, default=2)
    pg.add_argument("--graph-class", default="general", choices=gen_mod.GRAPH_CLASSES)
    pg.add_argument("--density", type=float, default=0.5)
    pg.set_defaults(func=cmd_gen)

    pb = sub.add_parser("bench", help="sweep a TOML config, write CSV timings")
    pb.add_argument("--config", required=True)
    pb.add_argument("--out", required=True)
    pb.add_argument("--jobs", type=int, default=1)
    pb.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
