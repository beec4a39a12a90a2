"""Fault-tolerant graph spanners: greedy construction, verification and distributed simulation."""

from .errors import GuardExceeded
from .graph import Edge, FaultSet, Graph, Mode, Path, distance, dump_graph, hop_bounded_path, load_graph
from .greedy import (
    SpannerParams,
    SpannerResult,
    SpannerStats,
    exact_greedy,
    modified_greedy_unweighted,
    modified_greedy_weighted,
)
from .lbc import LbcInstance, LbcVerdict, lbc_exact, lbc_gap_decide
from .verify import VerifyReport, girth_at_most, size_audit, verify_ft_spanner

__all__ = [
    "Edge",
    "FaultSet",
    "Graph",
    "GuardExceeded",
    "LbcInstance",
    "LbcVerdict",
    "Mode",
    "Path",
    "SpannerParams",
    "SpannerResult",
    "SpannerStats",
    "VerifyReport",
    "distance",
    "dump_graph",
    "exact_greedy",
    "girth_at_most",
    "hop_bounded_path",
    "lbc_exact",
    "lbc_gap_decide",
    "load_graph",
    "modified_greedy_unweighted",
    "modified_greedy_weighted",
    "size_audit",
    "verify_ft_spanner",
]
