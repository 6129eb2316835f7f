"""Command-line entry point: ``quickrel {solve,reliability,mps,verify}``.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 verification
mismatch, 4 state-space or inclusion-exclusion cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .enumerator import enumerate_all_mps, find_minimal_vectors
from .instances import Instance, random_instances
from .model import NetworkError, Query
from .netio import load_network, network_to_dict
from .oracle import StateSpaceTooLarge, brute_force_reliability, brute_force_theta_min, state_space_size
from .qpath import min_required_capacity, path_lead_time
from .reliability import (
    DEFAULT_SIGMA_CAP,
    TooManyVectorsError,
    monte_carlo_reliability,
    union_probability,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_MISMATCH, EXIT_CAP = range(5)
RELIABILITY_TOL = 1e-9


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON result object")

    query = argparse.ArgumentParser(add_help=False)
    query.add_argument("-d", "--demand", type=int, help="units of data to send")
    query.add_argument("-T", "--time-budget", type=int, help="time limit")

    parser = _Parser(prog="quickrel", description="Quickest-path reliability of multi-state flow networks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", parents=[common, query], help="list the minimal state vectors")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true", help="print every search decision to stderr")

    p = sub.add_parser("reliability", parents=[common, query], help="probability the query is met")
    p.add_argument("file")
    p.add_argument("--method", choices=("exact", "mc"))
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sigma-cap", type=int, default=DEFAULT_SIGMA_CAP)

    p = sub.add_parser("mps", parents=[common, query], help="list every minimal path")
    p.add_argument("file")

    p = sub.add_parser("verify", parents=[common, query], help="check the solver against brute force")
    p.add_argument("file", nargs="?")
    p.add_argument("--random", action="store_true", help="check seeded random networks instead")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    return parser


def _query(args, required=True) -> Optional[Query]:
    d, T = args.demand, args.time_budget
    if d is None and T is None and not required:
        return None
    if d is None or T is None:
        raise UsageError("both -d and -T are required")
    try:
        return Query(d, T)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load(path):
    try:
        return load_network(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _emit(args, obj, lines):
    if args.json:
        print(json.dumps(obj, indent=2))
    else:
        for line in lines:
            print(line)


def _fmt(x) -> str:
    return "(" + ", ".join(map(str, x)) + ")"


def cmd_solve(args) -> int:
    doc = _load(args.file)
    q = _query(args)
    trace = None
    if args.trace:
        def trace(ev):
            eta = "" if ev.eta is None else f" eta={ev.eta}"
            print(
                f"step {ev.step} {ev.action:<14} s={ev.s} t={ev.t} lt={ev.lt} kap={ev.kap}{eta} "
                f"P={list(ev.path)}",
                file=sys.stderr,
            )
    vectors = find_minimal_vectors(doc.net, q, trace=trace)
    obj = {
        "query": {"d": q.demand, "T": q.time_budget},
        "minimal_vectors": [list(x) for x in vectors],
        "sigma": len(vectors),
    }
    _emit(args, obj, [_fmt(x) for x in vectors] + [f"sigma = {len(vectors)}"])
    return EXIT_OK


def cmd_reliability(args) -> int:
    doc = _load(args.file)
    q = _query(args)
    dists = doc.dists
    if dists is None:
        missing = ", ".join(f"a{i + 1}" for i in doc.arcs_missing_pmf)
        raise NetworkError(f"reliability needs a pmf on every arc; missing on {missing}")
    vectors = find_minimal_vectors(doc.net, q)
    method = args.method
    if method is None:
        method = "exact" if len(vectors) <= args.sigma_cap else "mc"

    half = None
    if method == "exact":
        value = union_probability(doc.net, dists, vectors, sigma_cap=args.sigma_cap).value
    else:
        if args.samples < 1:
            raise UsageError("--samples must be >= 1")
        mc = monte_carlo_reliability(doc.net, dists, q, samples=args.samples, seed=args.seed)
        value, half = mc.estimate, mc.half_width

    obj = {
        "query": {"d": q.demand, "T": q.time_budget},
        "minimal_vectors": [list(x) for x in vectors],
        "reliability": value,
        "method": method,
        "half_width": half,
        "sigma": len(vectors),
    }
    lines = [f"R = {value:.12f}"]
    if half is not None:
        lines.append(f"half_width = {half:.12f}  (95%, {args.samples} samples, seed {args.seed})")
    lines.append(f"method = {method}, sigma = {len(vectors)}")
    _emit(args, obj, lines)
    return EXIT_OK


def cmd_mps(args) -> int:
    doc = _load(args.file)
    net = doc.net
    q = _query(args, required=False)
    rows, lines = [], []
    for p in enumerate_all_mps(net):
        lp = path_lead_time(net, p)
        row = {"nodes": list(p.nodes), "arcs": [i + 1 for i in p.arcs], "lead_time": lp}
        text = f"{p.label():<24} nodes={'-'.join(map(str, p.nodes)):<14} LP={lp}"
        if q is not None:
            eta = min_required_capacity(lp, q.demand, q.time_budget)
            row["eta"] = eta
            row["feasible"] = eta is not None and eta <= min(net.arcs[i].max_capacity for i in p.arcs)
            if eta is None:
                text += "  eta=infeasible"
            else:
                text += f"  eta={eta}" + ("" if row["feasible"] else " (exceeds M)")
        rows.append(row)
        lines.append(text)
    obj = {"query": None if q is None else {"d": q.demand, "T": q.time_budget}, "paths": rows}
    _emit(args, obj, lines + [f"{len(rows)} minimal paths"])
    return EXIT_OK


def _check(inst: Instance) -> Optional[dict]:
    got = find_minimal_vectors(inst.net, inst.query)
    want = brute_force_theta_min(inst.net, inst.query)
    problem = {}
    if got != want:
        problem["minimal_vectors"] = {"solver": got, "brute_force": want}
    if inst.dists is not None:
        brute = brute_force_reliability(inst.net, inst.dists, inst.query)
        try:
            exact = union_probability(inst.net, inst.dists, got).value
        except TooManyVectorsError:
            raise
        except ValueError as exc:
            # solver output the evaluator rejects is itself a mismatch
            problem["reliability"] = {"solver": f"rejected: {exc}", "brute_force": brute}
        else:
            if abs(exact - brute) > RELIABILITY_TOL:
                problem["reliability"] = {"solver": exact, "brute_force": brute}
    return problem or None


def cmd_verify(args) -> int:
    if args.random == (args.file is not None):
        raise UsageError("give either a network file or --random")
    if args.random:
        if args.count < 1:
            raise UsageError("--count must be >= 1")
        q = _query(args, required=False)
        instances = list(random_instances(args.count, args.seed, q))
    else:
        doc = _load(args.file)
        instances = [Instance(-1, doc.net, doc.dists, _query(args))]

    failures = []
    for inst in instances:
        problem = _check(inst)
        if problem:
            failures.append((inst, problem))

    obj = {"instances": len(instances), "mismatches": len(failures)}
    lines = [f"checked {len(instances)} instance(s): {len(failures)} mismatch(es)"]
    if failures:
        inst, problem = min(failures, key=lambda f: (state_space_size(f[0].net), f[0].seed))
        example = {
            "seed": inst.seed,
            "query": {"d": inst.query.demand, "T": inst.query.time_budget},
            "network": network_to_dict(inst.net, inst.dists),
            "problem": problem,
        }
        obj["counterexample"] = example
        lines.append("smallest counterexample:")
        lines.append(json.dumps(example, indent=2))
    _emit(args, obj, lines)
    return EXIT_MISMATCH if failures else EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "reliability": cmd_reliability,
    "mps": cmd_mps,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"quickrel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (StateSpaceTooLarge, TooManyVectorsError) as exc:
        print(f"quickrel: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        # NetworkError and pmf problems are ValueErrors
        print(f"quickrel: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
