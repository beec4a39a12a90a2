"""Synchronous message-passing engine with per-edge bit accounting."""

from __future__ import annotations

import math
from collections import defaultdict
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from ..errors import BandwidthExceeded, SimulationError
from ..graph import Graph

LOCAL = "local"
CONGEST = "congest"


def lg(n: int) -> int:
    """ceil(log2 n), at least 1."""
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1


@dataclass(frozen=True)
class SimConfig:
    model: str = LOCAL
    seed: int = 0
    word_bits: int | None = None  # None: word_factor * ceil(log2 max(n, 16))
    max_rounds: int = 1_000_000
    retries: int = 3
    # padded decomposition
    partition_factor: float = 8.0  # number of partitions = ceil(factor * log2 n)
    beta: float = 0.25  # rate of the exponential start-time shifts
    diameter_factor: float = 4.0  # cluster hop diameter <= factor * log2 n
    local_algo: str = "greedy-weighted"  # or "exact"
    # CONGEST fault-tolerant construction
    dk_iterations_factor: float = 4.0  # iterations = ceil(factor * f^3 * log2 n)
    slot_factor: int = 8  # physical rounds per logical round = factor * f * log2 n
    word_factor: int = 8
    local_message_cap: int = 2**30

    def __post_init__(self):
        if self.model not in (LOCAL, CONGEST):
            raise ValueError(f"model must be {LOCAL!r} or {CONGEST!r}")
        if self.max_rounds <= 0:
            raise ValueError("max_rounds must be positive")
        if self.retries < 0:
            raise ValueError("retries must be nonnegative")

    def budget_bits(self, n: int) -> int:
        if self.model == LOCAL:
            return self.local_message_cap
        if self.word_bits is not None:
            if self.word_bits < lg(n):
                raise ValueError(f"word_bits={self.word_bits} below ceil(log2 n)={lg(n)}")
            return self.word_bits
        return self.word_factor * lg(max(n, 16))


@dataclass
class SimTrace:
    rounds_used: int = 0
    max_bits_on_edge_per_round: int = 0
    messages_total: int = 0
    per_phase_rounds: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "rounds_used": self.rounds_used,
            "max_bits_on_edge_per_round": self.max_bits_on_edge_per_round,
            "messages_total": self.messages_total,
            "per_phase_rounds": dict(self.per_phase_rounds),
        }


def message_bits(payload) -> int:
    """Size of a payload under a simple self-delimiting encoding.

    Nonnegative ints cost bit_length + 1, containers a length prefix plus
    their items, floats 64 bits.
    """
    if payload is None or isinstance(payload, bool):
        return 1
    if isinstance(payload, int):
        return max(1, payload.bit_length()) + 1 + (payload < 0)
    if isinstance(payload, float):
        return 64
    if isinstance(payload, (tuple, list, frozenset, set)):
        total = max(1, len(payload).bit_length()) + 1
        for item in payload:
            if type(item) is int and item > 0:
                total += item.bit_length() + 1
            else:
                total += message_bits(item)
        return total
    raise TypeError(f"cannot size payload of type {type(payload).__name__}")


def node_rng(seed: int, *stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed & (2**64 - 1), *stream]))


class Network:
    """Lock-step rounds over the edges of ``g``.

    ``send`` queues a message for delivery at the end of the current round;
    ``deliver`` closes the round and returns inboxes sorted by sender.
    In CONGEST mode a send that would exceed the per-edge budget raises.
    """

    def __init__(self, g: Graph, cfg: SimConfig):
        self.g = g
        self.cfg = cfg
        self.budget = cfg.budget_bits(g.n)
        self.trace = SimTrace()
        self._phase = "main"
        self._pending: dict[int, list] = defaultdict(list)
        self._load: dict[tuple[int, int], int] = defaultdict(int)

    @contextmanager
    def phase(self, name: str):
        prev = self._phase
        self._phase = name
        self.trace.per_phase_rounds.setdefault(name, 0)
        try:
            yield self
        finally:
            self._phase = prev

    def send(self, src: int, dst: int, payload) -> None:
        if self.g.edge_between(src, dst) is None:
            raise SimulationError(f"no edge between {src} and {dst}")
        bits = message_bits(payload)
        load = self._load[(src, dst)] + bits
        if load > self.budget:
            raise BandwidthExceeded(
                f"{load} bits on edge {src}->{dst} in one round exceed the {self.budget}-bit budget"
            )
        self._load[(src, dst)] = load
        self._pending[dst].append((src, payload))
        self.trace.messages_total += 1

    def deliver(self) -> dict[int, list]:
        trace = self.trace
        trace.rounds_used += 1
        trace.per_phase_rounds[self._phase] = trace.per_phase_rounds.get(self._phase, 0) + 1
        if trace.rounds_used > self.cfg.max_rounds:
            raise SimulationError(f"exceeded max_rounds={self.cfg.max_rounds}")
        if self._load:
            trace.max_bits_on_edge_per_round = max(trace.max_bits_on_edge_per_round, max(self._load.values()))
        inbox = {dst: sorted(msgs, key=lambda m: m[0]) for dst, msgs in self._pending.items()}
        self._pending = defaultdict(list)
        self._load = defaultdict(int)
        return inbox


class CongestionOverflow(SimulationError):
    """More multiplexed messages on one edge in a logical round than there are slots."""


class Multiplexer:
    """Runs many protocol instances over one network with a static slot schedule.

    Every logical round costs ``slots`` physical rounds. On each directed
    edge the queued messages are ordered by instance tag and message ``i``
    goes out in slot ``i`` as the flat tuple ``(tag, *payload)``.
    """

    def __init__(self, net: Network, slots: int):
        self.net = net
        self.slots = slots
        self._queue: dict[tuple[int, int], list] = defaultdict(list)

    def send(self, src: int, dst: int, tag: int, payload: tuple) -> None:
        self._queue[(src, dst)].append((tag, payload))

    def deliver(self) -> dict[int, dict[int, list]]:
        per_slot: list[list] = [[] for _ in range(self.slots)]
        for (src, dst), msgs in sorted(self._queue.items()):
            if len(msgs) > self.slots:
                raise CongestionOverflow(f"{len(msgs)} instances share edge {src}->{dst}; only {self.slots} slots")
            msgs.sort(key=lambda m: m[0])
            for slot, (tag, payload) in enumerate(msgs):
                per_slot[slot].append((src, dst, tag, payload))
        self._queue = defaultdict(list)
        out: dict[int, dict[int, list]] = defaultdict(lambda: defaultdict(list))
        for batch in per_slot:
            for src, dst, tag, payload in batch:
                self.net.send(src, dst, (tag, *payload))
            for dst, msgs in self.net.deliver().items():
                for src, (tag, *payload) in msgs:
                    out[tag][dst].append((src, tuple(payload)))
        for by_dst in out.values():
            for msgs in by_dst.values():
                msgs.sort(key=lambda m: m[0])
        return out
