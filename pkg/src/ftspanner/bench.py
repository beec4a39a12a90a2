"""Benchmark harness: run a suite of (graph family, parameters, algorithm) cells and report sizes."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

from .distsim import SimConfig, baswana_sen, dk_congest_ft_spanner, local_ft_spanner
from .errors import GuardExceeded, SimulationError
from .gen import GenSpec, generate
from .greedy import ALGORITHMS, SpannerParams
from .graph import Mode
from .verify import size_bound

DISTRIBUTED = ("local", "congest", "baswana-sen")
BENCH_ALGOS = tuple(ALGORITHMS) + DISTRIBUTED
GEN_KEYS = ("family", "n", "p", "radius", "paths", "hops", "rows", "weights", "largest_component")
CSV_FIELDS = ("family", "n", "seed", "k", "f", "mode", "algo", "edges_kept", "bound_ratio", "wall_time_ms", "rounds_used", "error")


@dataclass(frozen=True)
class BenchCase:
    spec: GenSpec
    params: SpannerParams
    algo: str


@dataclass
class BenchRecord:
    spec: GenSpec
    params: SpannerParams
    algo: str
    edges_kept: int | None = None
    bound_ratio: float | None = None
    wall_time_ms: int | None = None
    rounds_used: int | None = None
    error: str | None = None

    def to_json(self) -> dict:
        out = {
            "spec": self.spec.to_json(),
            "params": {"k": self.params.k, "f": self.params.f, "mode": self.params.mode.value},
            "algo": self.algo,
            "edges_kept": self.edges_kept,
            "bound_ratio": self.bound_ratio,
            "wall_time_ms": self.wall_time_ms,
            "rounds_used": self.rounds_used,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


def load_suite(data: dict | list) -> list[BenchCase]:
    """Expand suite entries into one case per seed, in file order.

    An entry is a dict with ``family``, ``n``, ``k``, ``f``, ``algo`` and
    optionally ``mode``, ``seeds`` and the generator knobs of GenSpec.
    """
    entries = data.get("entries", []) if isinstance(data, dict) else data
    cases = []
    for i, entry in enumerate(entries):
        algo = entry.get("algo", "greedy-weighted")
        if algo not in BENCH_ALGOS:
            raise ValueError(f"suite entry {i}: unknown algo {algo!r}; expected one of {', '.join(BENCH_ALGOS)}")
        unknown = set(entry) - set(GEN_KEYS) - {"k", "f", "mode", "algo", "seeds"}
        if unknown:
            raise ValueError(f"suite entry {i}: unknown keys {sorted(unknown)}")
        params = SpannerParams(int(entry["k"]), int(entry["f"]), Mode(entry.get("mode", "vertex")))
        gen_args = {key: entry[key] for key in GEN_KEYS if key in entry}
        if gen_args.get("weights") is not None:
            gen_args["weights"] = tuple(gen_args["weights"])
        for seed in entry.get("seeds", [0]):
            cases.append(BenchCase(GenSpec(seed=int(seed), **gen_args), params, algo))
    return cases


def _build(g, p: SpannerParams, algo: str, seed: int):
    if algo in ALGORITHMS:
        return ALGORITHMS[algo](g, p), None
    if algo == "local":
        return local_ft_spanner(g, p, SimConfig(model="local", seed=seed))
    if algo == "congest":
        return dk_congest_ft_spanner(g, p, SimConfig(model="congest", seed=seed))
    return baswana_sen(g, p.k, SimConfig(model="congest", seed=seed))


def run_case(case: BenchCase) -> BenchRecord:
    record = BenchRecord(case.spec, case.params, case.algo)
    try:
        g = generate(case.spec)
        start = time.perf_counter()
        result, trace = _build(g, case.params, case.algo, case.spec.seed)
        record.wall_time_ms = int((time.perf_counter() - start) * 1000)
    except (GuardExceeded, SimulationError, ValueError) as exc:
        record.error = f"{type(exc).__name__}: {exc}"
        return record
    record.edges_kept = result.stats.edges_kept
    bound = size_bound(g.n, case.params.k, case.params.f)
    record.bound_ratio = record.edges_kept / bound if bound else 0.0
    record.rounds_used = None if trace is None else trace.rounds_used
    return record


def run_suite(cases: Iterable[BenchCase], workers: int = 1) -> Iterator[BenchRecord]:
    """Yield records in suite order; ``workers > 1`` runs cases in a process pool."""
    cases = list(cases)
    if workers <= 1:
        yield from map(run_case, cases)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(run_case, cases)


def to_csv_row(record: BenchRecord) -> dict:
    return {
        "family": record.spec.family,
        "n": record.spec.n,
        "seed": record.spec.seed,
        "k": record.params.k,
        "f": record.params.f,
        "mode": record.params.mode.value,
        "algo": record.algo,
        "edges_kept": record.edges_kept,
        "bound_ratio": record.bound_ratio,
        "wall_time_ms": record.wall_time_ms,
        "rounds_used": record.rounds_used,
        "error": record.error,
    }


def write_records(records: Iterable[BenchRecord], out: io.TextIOBase, as_csv: bool = False) -> None:
    if as_csv:
        writer = csv.DictWriter(out, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow(to_csv_row(record))
            out.flush()
        return
    for record in records:
        out.write(json.dumps(record.to_json(), sort_keys=True) + "\n")
        out.flush()
