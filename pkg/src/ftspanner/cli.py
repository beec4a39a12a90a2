"""Command-line entry point: gen, build, verify, lbc, simulate, bench.

Exit codes: 0 success, 1 verification or construction failure, 2 usage
error (bad flags, unreadable or malformed input), 3 guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from contextlib import contextmanager

from . import bench
from .distsim import CONGEST, LOCAL, SimConfig, baswana_sen, dk_congest_ft_spanner, local_ft_spanner
from .distsim.local import LOCAL_ALGORITHMS
from .errors import GuardExceeded, SimulationError
from .gen import FAMILIES, GenSpec, generate
from .graph import FaultSet, Graph, Mode, dumps, load_graph, match_edges
from .greedy import ALGORITHMS, SpannerParams, modified_greedy_unweighted
from .lbc import LbcInstance, lbc_exact, lbc_gap_decide
from .verify import DEFAULT_ENUMERATION_LIMIT, size_audit, verify_ft_spanner

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def dump_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def read_graph(path: str) -> Graph:
    if path == "-":
        return load_graph(sys.stdin)
    try:
        with open(path, "rb") as fp:
            return load_graph(fp)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fp:
        fp.write(text)


def emit(args, edge_list: str, doc: dict) -> None:
    """Write the edge list and its JSON sidecar.

    ``--out`` receives the edge list (stdout by default); the JSON goes to
    ``--sidecar``, or ``<out>.json`` next to an output file. ``--json``
    puts the JSON on stdout, replacing the edge list there when no
    ``--out`` is given.
    """
    if args.out is not None or not args.json:
        write_text(args.out, edge_list)
    sidecar = args.sidecar
    if sidecar is None and args.out not in (None, "-"):
        sidecar = args.out + ".json"
    if sidecar is not None:
        write_text(sidecar, dump_json(doc))
    if args.json:
        sys.stdout.write(dump_json(doc))


def parse_weights(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError:
        raise UsageError(f"--weights expects LO:HI, got {text!r}") from None
    return lo, hi


def parse_order(text: str, m: int) -> list[int] | None:
    if text == "id":
        return None
    kind, _, seed = text.partition(":")
    if kind != "random" or not seed.lstrip("-").isdigit():
        raise UsageError(f"--order expects 'id' or 'random:<seed>', got {text!r}")
    order = list(range(m))
    random.Random(int(seed)).shuffle(order)
    return order


def params_from(args) -> SpannerParams:
    return SpannerParams(args.k, args.f, Mode(args.mode))


def cmd_gen(args) -> int:
    spec = GenSpec(
        family=args.family,
        n=args.n,
        seed=args.seed,
        weights=parse_weights(args.weights),
        p=args.p,
        radius=args.radius,
        paths=args.paths,
        hops=args.hops,
        rows=args.rows,
        largest_component=args.largest_component,
    )
    g = generate(spec)
    write_text(args.out, dumps(g))
    if args.json:
        sys.stdout.write(dump_json({"spec": spec.to_json(), "n": g.n, "m": g.m}))
    return EXIT_OK


def build_spanner(g: Graph, p: SpannerParams, algo: str, order: str = "id"):
    """The library call behind ``build``; returns (edge ids, stats document)."""
    if algo == "greedy-unweighted":
        result = modified_greedy_unweighted(g, p, order=parse_order(order, g.m))
    elif order != "id":
        raise UsageError("--order only applies to --algo greedy-unweighted")
    else:
        result = ALGORITHMS[algo](g, p)
    doc = {
        "algo": algo,
        "order": order,
        "params": {"k": p.k, "f": p.f, "mode": p.mode.value},
        "n": g.n,
        "m": g.m,
        "stats": result.stats.to_json(),
        "size": size_audit(g, result.spanner_edge_ids, p),
    }
    return result.spanner_edge_ids, doc


def cmd_build(args) -> int:
    g = read_graph(args.graph)
    ids, doc = build_spanner(g, params_from(args), args.algo, args.order)
    emit(args, dumps(g, ids), doc)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = read_graph(args.graph)
    h = read_graph(args.spanner)
    try:
        ids = match_edges(g, h)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = verify_ft_spanner(g, ids, params_from(args), limit=args.limit)
    sys.stdout.write(dump_json(report.to_json()))
    return EXIT_OK if report.valid else EXIT_FAIL


def cmd_lbc(args) -> int:
    g = read_graph(args.graph)
    inst = LbcInstance(g, args.u, args.v, args.t, args.alpha, Mode(args.mode))
    if args.exact:
        size, cut = lbc_exact(inst, guard=args.guard)
        doc = {
            "opt": None if cut is None else int(size),
            "witness": None if cut is None else sorted(cut.members),
        }
    else:
        doc = lbc_gap_decide(inst).to_json()
    sys.stdout.write(dump_json(doc))
    return EXIT_OK


def simulate_spanner(g: Graph, p: SpannerParams, cfg: SimConfig, algo: str | None = None):
    """The library call behind ``simulate``; returns (edge ids, trace document)."""
    if cfg.model == LOCAL:
        result, trace = local_ft_spanner(g, p, cfg)
        algo = cfg.local_algo
    elif algo == "baswana-sen" or p.f == 0:
        result, trace = baswana_sen(g, p.k, cfg)
        algo = "baswana-sen"
    else:
        result, trace = dk_congest_ft_spanner(g, p, cfg)
        algo = "dk"
    doc = trace.to_json()
    doc.update(
        model=cfg.model,
        algo=algo,
        seed=cfg.seed,
        params={"k": p.k, "f": p.f, "mode": p.mode.value},
        word_bits=cfg.budget_bits(g.n),
        edges_kept=result.stats.edges_kept,
    )
    return result.spanner_edge_ids, doc


def cmd_simulate(args) -> int:
    g = read_graph(args.graph)
    local_algo = args.algo if args.model == LOCAL and args.algo else "greedy-weighted"
    if args.model == LOCAL and args.algo not in (None, *LOCAL_ALGORITHMS):
        raise UsageError(f"--algo for the LOCAL model must be one of {', '.join(LOCAL_ALGORITHMS)}")
    if args.model == CONGEST and args.algo not in (None, "dk", "baswana-sen"):
        raise UsageError("--algo for the CONGEST model must be 'dk' or 'baswana-sen'")
    cfg = SimConfig(
        model=args.model,
        seed=args.seed,
        word_bits=args.word_bits,
        retries=args.retries,
        local_algo=local_algo,
        max_rounds=args.max_rounds,
    )
    ids, doc = simulate_spanner(g, params_from(args), cfg, args.algo)
    emit(args, dumps(g, ids), doc)
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        with open(args.suite, encoding="utf-8") as fp:
            suite = json.load(fp)
    except OSError as exc:
        raise UsageError(f"cannot read {args.suite}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.suite}: invalid JSON: {exc}") from None
    cases = bench.load_suite(suite)
    records = bench.run_suite(cases, workers=args.workers)
    with _output(args.out) as out:
        bench.write_records(records, out, as_csv=args.csv)
    return EXIT_OK


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fp:
            yield fp


def _add_params(p: argparse.ArgumentParser, f_default: int = 1) -> None:
    p.add_argument("--k", type=int, default=2, help="stretch parameter; stretch is 2k-1 (default 2)")
    p.add_argument("--f", type=int, default=f_default, help=f"number of faults tolerated (default {f_default})")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="vertex", help="fault type (default vertex)")


def _add_outputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="edge-list output file (default stdout)")
    p.add_argument("--sidecar", help="JSON output file (default <out>.json when --out is a file)")
    p.add_argument("--json", action="store_true", help="print the JSON document on stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ftspanner",
        description="Fault-tolerant spanners: construct, verify, simulate and benchmark.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a seeded graph in edge-list format")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int, default=0, help="number of vertices (theta ignores it)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float, default=0.0, help="edge probability (erdos-renyi)")
    p.add_argument("--radius", type=float, default=0.0, help="connection radius (random-geometric)")
    p.add_argument("--paths", type=int, default=3, help="disjoint paths (theta)")
    p.add_argument("--hops", type=int, default=2, help="hops per path (theta)")
    p.add_argument("--rows", type=int, help="grid rows (default floor(sqrt n))")
    p.add_argument("--weights", metavar="LO:HI", help="uniform integer weights in [LO, HI] (default unit)")
    p.add_argument("--largest-component", action="store_true", help="keep only the largest connected component")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--json", action="store_true", help="also print a JSON summary on stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("build", help="construct a fault-tolerant spanner")
    p.add_argument("--graph", required=True, help="input edge-list file, '-' for stdin")
    _add_params(p)
    p.add_argument("--algo", choices=list(ALGORITHMS), default="greedy-weighted")
    p.add_argument("--order", default="id", help="edge order for greedy-unweighted: 'id' or 'random:<seed>'")
    _add_outputs(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check a spanner against every fault set by brute force")
    p.add_argument("--graph", required=True)
    p.add_argument("--spanner", required=True, help="edge-list file of the candidate spanner")
    _add_params(p)
    p.add_argument("--limit", type=int, default=DEFAULT_ENUMERATION_LIMIT, help="maximum fault sets to enumerate")
    p.add_argument("--json", action="store_true", help="accepted for symmetry; the report is always JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lbc", help="decide a length-bounded cut instance")
    p.add_argument("--graph", required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--t", type=int, required=True, help="hop bound")
    p.add_argument("--alpha", type=int, default=0, help="cut size threshold for the gap decision")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="vertex")
    p.add_argument("--exact", action="store_true", help="solve exactly by subset enumeration instead")
    p.add_argument("--guard", type=int, default=25, help="candidate cap for --exact")
    p.add_argument("--json", action="store_true", help="accepted for symmetry; the verdict is always JSON")
    p.set_defaults(func=cmd_lbc)

    p = sub.add_parser("simulate", help="run a distributed construction round by round")
    p.add_argument("--graph", required=True)
    p.add_argument("--model", choices=[LOCAL, CONGEST], default=LOCAL)
    _add_params(p)
    p.add_argument("--algo", help="LOCAL: greedy-weighted or exact; CONGEST: dk or baswana-sen")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--word-bits", type=int, help="CONGEST per-edge bit budget per round")
    p.add_argument("--retries", type=int, default=3)
    p.add_argument("--max-rounds", type=int, default=1_000_000)
    _add_outputs(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bench", help="run a benchmark suite and stream records")
    p.add_argument("suite", help="JSON suite file")
    p.add_argument("--csv", action="store_true", help="CSV instead of JSON lines")
    p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"error: guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except SimulationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
