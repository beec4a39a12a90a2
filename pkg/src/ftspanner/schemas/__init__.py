"""JSON schemas for every machine-readable CLI output."""

import json
from functools import cache
from importlib.resources import files

NAMES = ("bench_record", "build_stats", "lbc_exact", "lbc_verdict", "sim_trace", "verify_report")


@cache
def load(name: str) -> dict:
    if name not in NAMES:
        raise KeyError(f"no schema named {name!r}")
    return json.loads(files(__name__).joinpath(f"{name}.schema.json").read_text(encoding="utf-8"))
