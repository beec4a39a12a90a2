import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import random_connected_graph

from ftspanner.distsim import (
    CONGEST,
    LOCAL,
    SimConfig,
    baswana_sen,
    dk_congest_ft_spanner,
    local_ft_spanner,
    message_bits,
    padded_decomposition,
)
from ftspanner.distsim.congest import baswana_sen_rounds
from ftspanner.distsim.network import CongestionOverflow, Multiplexer, Network, lg
from ftspanner.errors import BandwidthExceeded, SimulationError
from ftspanner.gen import GenSpec, generate
from ftspanner.graph import Graph, Mode, dumps
from ftspanner.greedy import SpannerParams
from ftspanner.verify import verify_ft_spanner

CONGEST_CFG = SimConfig(model=CONGEST)


# -- engine ---------------------------------------------------------------------


@given(st.integers(0, 2**40))
def test_int_bits_are_self_delimiting(x):
    assert message_bits(x) == max(1, x.bit_length()) + 1


def test_message_bits_of_containers():
    assert message_bits((3, 1)) == (2 + 1) + (2 + 1) + (1 + 1)
    assert message_bits(()) == 2
    assert message_bits(1.5) == 64
    with pytest.raises(TypeError):
        message_bits("text")


def test_budget_is_enforced_at_send_time():
    g = Graph(2, [(0, 1)])
    net = Network(g, SimConfig(model=CONGEST, word_bits=8))
    net.send(0, 1, 5)  # 4 bits
    with pytest.raises(BandwidthExceeded):
        net.send(0, 1, 31)  # 6 more
    net.send(1, 0, 31)  # other direction has its own budget
    assert net.deliver() == {1: [(0, 5)], 0: [(1, 31)]}
    net.send(0, 1, 31)  # fresh round, fresh budget


def test_sends_need_an_edge_and_rounds_are_capped():
    g = Graph(3, [(0, 1)])
    net = Network(g, SimConfig(max_rounds=2))
    with pytest.raises(SimulationError):
        net.send(0, 2, 1)
    net.deliver()
    net.deliver()
    with pytest.raises(SimulationError):
        net.deliver()


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(model="async")
    with pytest.raises(ValueError):
        SimConfig(max_rounds=0)
    with pytest.raises(ValueError):
        SimConfig(model=CONGEST, word_bits=3).budget_bits(64)
    assert SimConfig(model=CONGEST).budget_bits(1000) == 8 * 10
    assert SimConfig(model=CONGEST).budget_bits(5) == 8 * 4


def test_multiplexer_schedules_by_tag():
    g = Graph(2, [(0, 1)])
    net = Network(g, SimConfig(model=CONGEST))
    mux = Multiplexer(net, slots=3)
    mux.send(0, 1, 7, (1,))
    mux.send(0, 1, 2, (0,))
    out = mux.deliver()
    assert out == {2: {1: [(0, (0,))]}, 7: {1: [(0, (1,))]}}
    assert net.trace.rounds_used == 3
    for tag in range(4):
        mux.send(1, 0, tag, ())
    with pytest.raises(CongestionOverflow):
        mux.deliver()


# -- padded decomposition ------------------------------------------------------------


def test_single_vertex_decomposition():
    d, trace = padded_decomposition(Graph(1), SimConfig())
    assert d.count == 1 and d.partitions == [[0]] and not d.problems(Graph(1))


def test_path_of_64_is_covered():
    g = generate(GenSpec("path", n=64))
    cfg = SimConfig(seed=4)
    d, trace = padded_decomposition(g, cfg)
    assert d.count == math.ceil(8 * 6)
    assert d.problems(g) == []
    assert d.uncovered_edges(g) == []
    assert d.diameter_bound == cfg.diameter_factor * 6
    assert trace.rounds_used <= 2 * 6


def test_single_edge_coverage_statistics():
    g = Graph(2, [(0, 1)])
    covered = sum(not padded_decomposition(g, SimConfig(seed=s))[0].uncovered_edges(g) for s in range(200))
    assert covered >= 190


def test_decomposition_requires_local_model():
    with pytest.raises(ValueError):
        padded_decomposition(Graph(2, [(0, 1)]), CONGEST_CFG)


@given(st.integers(2, 40), st.floats(0.05, 0.5), st.integers(0, 1000))
def test_decompositions_are_sound(n, p, seed):
    g = generate(GenSpec("erdos-renyi", n=n, p=p, seed=seed))
    d, _ = padded_decomposition(g, SimConfig(seed=seed))
    assert d.problems(g) == []


# -- LOCAL construction ------------------------------------------------------------------


def test_local_star_keeps_all_edges():
    g = generate(GenSpec("star", n=9))
    result, _ = local_ft_spanner(g, SpannerParams(2, 1), SimConfig())
    assert result.spanner_edge_ids == set(range(8))


def test_local_complete_graph_stretch_one():
    g = generate(GenSpec("complete", n=5))
    result, _ = local_ft_spanner(g, SpannerParams(1, 1), SimConfig())
    assert result.spanner_edge_ids == set(range(10))


def test_local_dense_random_graph():
    g = generate(GenSpec("erdos-renyi", n=64, p=0.3, seed=1))
    p = SpannerParams(2, 1)
    result, trace = local_ft_spanner(g, p, SimConfig(seed=1))
    assert trace.rounds_used <= 12 * math.log2(64)
    assert set(trace.per_phase_rounds) == {"decomposition", "cluster-ids", "gather", "broadcast"}
    assert verify_ft_spanner(g, result.spanner_edge_ids, p).valid


@pytest.mark.parametrize("algo", ["greedy-weighted", "exact"])
def test_local_outputs_verify(algo):
    rng = random.Random(3)
    for _ in range(6):
        g = random_connected_graph(rng, rng.randint(5, 9), weighted=True)
        for mode in Mode:
            p = SpannerParams(2, 2, mode)
            result, _ = local_ft_spanner(g, p, SimConfig(seed=rng.randrange(100), local_algo=algo))
            assert result.stats.extra["local_algo"] == algo
            assert verify_ft_spanner(g, result.spanner_edge_ids, p).valid


def test_local_gives_up_after_retries():
    # one partition with a tiny diameter cap on a long path cannot cover every edge
    g = generate(GenSpec("path", n=64))
    cfg = SimConfig(partition_factor=0.01, diameter_factor=0.1, retries=1)
    with pytest.raises(SimulationError):
        local_ft_spanner(g, SpannerParams(2, 1), cfg)


# -- Baswana-Sen ------------------------------------------------------------------------


def test_stretch_one_keeps_everything():
    g = generate(GenSpec("erdos-renyi", n=20, p=0.4, seed=2))
    result, trace = baswana_sen(g, 1, CONGEST_CFG)
    assert result.spanner_edge_ids == set(range(g.m))
    assert trace.rounds_used == baswana_sen_rounds(1) == 1


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_trees_survive_baswana_sen(k):
    rng = random.Random(k)
    g = random_connected_graph(rng, 30, weighted=True, density=0.0)
    assert baswana_sen(g, k, SimConfig(model=CONGEST, seed=k))[0].spanner_edge_ids == set(range(g.m))


def test_baswana_sen_on_a_medium_random_graph():
    g = generate(GenSpec("erdos-renyi", n=128, p=0.2, seed=9))
    result, trace = baswana_sen(g, 3, SimConfig(model=CONGEST, seed=9))
    assert result.stats.edges_kept <= 10 * 3 * 128 ** (4 / 3)
    assert trace.rounds_used == baswana_sen_rounds(3)
    assert trace.max_bits_on_edge_per_round <= CONGEST_CFG.budget_bits(128)
    assert verify_ft_spanner(g, result.spanner_edge_ids, SpannerParams(3, 0)).valid


@given(st.integers(2, 12), st.integers(1, 4), st.integers(0, 10_000), st.booleans())
def test_baswana_sen_is_a_spanner(n, k, seed, weighted):
    g = random_connected_graph(random.Random(seed), n, weighted)
    result, _ = baswana_sen(g, k, SimConfig(model=CONGEST, seed=seed))
    assert verify_ft_spanner(g, result.spanner_edge_ids, SpannerParams(k, 0)).valid


# -- sampled fault-tolerant union --------------------------------------------------------


def test_star_union_keeps_every_edge():
    g = generate(GenSpec("star", n=7))
    result, _ = dk_congest_ft_spanner(g, SpannerParams(2, 2), CONGEST_CFG)
    assert result.spanner_edge_ids == set(range(6))


def test_empty_graph_spends_rounds_only_on_selection():
    result, trace = dk_congest_ft_spanner(Graph(5), SpannerParams(2, 1), CONGEST_CFG)
    assert result.spanner_edge_ids == frozenset()
    assert set(trace.per_phase_rounds) == {"selection"}


def test_preconditions():
    g = Graph(2, [(0, 1)])
    with pytest.raises(ValueError):
        dk_congest_ft_spanner(g, SpannerParams(2, 0), CONGEST_CFG)
    with pytest.raises(ValueError):
        dk_congest_ft_spanner(g, SpannerParams(2, 1, Mode.EDGE), CONGEST_CFG)
    with pytest.raises(ValueError):
        dk_congest_ft_spanner(g, SpannerParams(2, 1), SimConfig(model=LOCAL))
    with pytest.raises(ValueError):
        baswana_sen(g, 2, SimConfig(model=LOCAL))


def test_slot_overflow_is_retried_then_reported():
    g = generate(GenSpec("complete", n=6))
    cfg = SimConfig(model=CONGEST, slot_factor=0, retries=2)
    with pytest.raises(SimulationError, match="3 attempts"):
        dk_congest_ft_spanner(g, SpannerParams(2, 1), cfg)


@pytest.mark.parametrize("f", [1, 2])
def test_sampled_union_verifies_on_small_graphs(f):
    rng = random.Random(f)
    for _ in range(8):
        g = random_connected_graph(rng, rng.randint(4, 10), weighted=rng.random() < 0.5)
        p = SpannerParams(rng.randint(1, 3), f)
        result, trace = dk_congest_ft_spanner(g, p, SimConfig(model=CONGEST, seed=rng.randrange(1000)))
        assert trace.max_bits_on_edge_per_round <= CONGEST_CFG.budget_bits(g.n)
        assert verify_ft_spanner(g, result.spanner_edge_ids, p).valid


def test_spanner_phase_round_count():
    g = generate(GenSpec("erdos-renyi", n=32, p=0.3, seed=0))
    cfg = SimConfig(model=CONGEST)
    _, trace = dk_congest_ft_spanner(g, SpannerParams(3, 2), cfg)
    assert trace.per_phase_rounds["spanners"] == baswana_sen_rounds(3) * cfg.slot_factor * 2 * lg(32)


# -- determinism -----------------------------------------------------------------------------


@pytest.mark.parametrize(
    "run",
    [
        lambda g: local_ft_spanner(g, SpannerParams(2, 1), SimConfig(seed=5)),
        lambda g: baswana_sen(g, 2, SimConfig(model=CONGEST, seed=5)),
        lambda g: dk_congest_ft_spanner(g, SpannerParams(2, 2), SimConfig(model=CONGEST, seed=5)),
    ],
)
def test_identical_seeds_give_identical_outputs(run):
    g = generate(GenSpec("erdos-renyi", n=24, p=0.3, seed=5, weights=(1, 9)))
    (a, ta), (b, tb) = run(g), run(g)
    assert dumps(g, a.spanner_edge_ids) == dumps(g, b.spanner_edge_ids)
    assert ta.to_json() == tb.to_json()
