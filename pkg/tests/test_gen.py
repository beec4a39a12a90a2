import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import connected, shortest_cycle_length

from ftspanner.gen import FAMILIES, GenSpec, generate
from ftspanner.graph import dumps, load_graph


def test_complete_graph_size():
    g = generate(GenSpec("complete", n=4))
    assert g.m == 6 and g.is_unit_weight()


def test_cycle_has_girth_n():
    g = generate(GenSpec("cycle", n=5))
    assert g.m == 5
    assert shortest_cycle_length(g.n, [(e.u, e.v) for e in g.edges]) == 5


def test_theta_gadget():
    g = generate(GenSpec("theta", paths=3, hops=2))
    assert (g.n, g.m) == (5, 6)
    assert sorted(y for y, _, _ in g.neighbors(0)) == [2, 3, 4]
    assert sorted(y for y, _, _ in g.neighbors(1)) == [2, 3, 4]


def test_grid_and_star_shapes():
    grid = generate(GenSpec("grid", n=12, rows=3))
    assert grid.m == 3 * 3 + 2 * 4
    assert generate(GenSpec("star", n=6)).degree(0) == 5
    assert generate(GenSpec("path", n=6)).m == 5


@pytest.mark.parametrize(
    "spec",
    [
        GenSpec("erdos-renyi", n=5, p=1.5),
        GenSpec("cycle", n=2),
        GenSpec("grid", n=7, rows=2),
        GenSpec("theta", paths=2, hops=1),
        GenSpec("random-geometric", n=5, radius=-1),
        GenSpec("complete", n=3, weights=(4, 2)),
        GenSpec("mystery", n=3),
        GenSpec("path", n=-1),
    ],
)
def test_invalid_parameters(spec):
    with pytest.raises(ValueError):
        generate(spec)


specs = st.builds(
    GenSpec,
    family=st.sampled_from(FAMILIES),
    n=st.integers(3, 30),
    seed=st.integers(0, 2**64 - 1),
    weights=st.none() | st.tuples(st.integers(0, 3), st.integers(3, 9)),
    p=st.floats(0, 1),
    radius=st.floats(0, 1),
    paths=st.integers(1, 4),
    hops=st.integers(2, 4),
    largest_component=st.booleans(),
)


@given(specs)
def test_generation_is_reproducible_and_round_trips(spec):
    if spec.family == "grid":
        spec = GenSpec("grid", n=spec.n - spec.n % 3, rows=3, seed=spec.seed)
    g = generate(spec)
    assert generate(spec) == g
    assert load_graph(dumps(g).encode()) == g
    assert GenSpec.from_json(spec.to_json()) == spec
    if spec.weights is not None:
        lo, hi = spec.weights
        assert all(lo <= e.w <= hi for e in g.edges)
    if spec.largest_component:
        assert connected(g.n, [(e.u, e.v) for e in g.edges])


def test_erdos_renyi_edge_density():
    n, p = 200, 0.1
    g = generate(GenSpec("erdos-renyi", n=n, p=p, seed=7))
    pairs = n * (n - 1) / 2
    expected, sd = pairs * p, (pairs * p * (1 - p)) ** 0.5
    assert abs(g.m - expected) < 5 * sd


def test_largest_component_is_kept():
    g = generate(GenSpec("erdos-renyi", n=60, p=0.02, seed=3))
    big = generate(GenSpec("erdos-renyi", n=60, p=0.02, seed=3, largest_component=True))
    assert big.n < g.n
    assert connected(big.n, [(e.u, e.v) for e in big.edges])
