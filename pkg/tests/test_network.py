"""
Tests for the multilayer network model and the synthetic generators.
"""

import pickle

import pytest

from src.infmax.errors import (
    ActorNotPresentError,
    GeneratorConfigError,
    NetworkFormatError,
    UnknownActorError,
)
from src.infmax.network.core import MultilayerNetworkBuilder
from src.infmax.network.generators import (
    ER_COHORTS,
    SF_COHORTS,
    ErGenConfig,
    PaGenConfig,
    er_config_like,
    generate_er,
    generate_pa,
    pa_config_like,
)

from .conftest import make_net


def test_degree_counts_distinct_neighbours():
    net = make_net({"l1": [("a", "b"), ("a", "c")]}, nodes={"l2": ["b"]})
    assert net.degree("l1", "a") == 2
    assert net.degree("l1", "b") == 1
    assert net.degree("l2", "b") == 0


def test_degree_of_absent_node_raises():
    net = make_net({"l1": [("a", "b")], "l2": [("b", "c")]})
    with pytest.raises(ActorNotPresentError):
        net.degree("l2", "a")
    with pytest.raises(KeyError):
        net.neighbours("l1", "c")


def test_neighbours_are_symmetric():
    net = make_net({"l1": [("a", "b"), ("b", "c")]}, nodes={"l2": ["b"]})
    assert net.neighbours("l1", "b") == {"a", "c"}
    assert net.neighbours("l1", "a") == {"b"}
    assert net.neighbours("l2", "b") == set()
    for layer in net.layers:
        for u in net.presence(layer):
            for v in net.neighbours(layer, u):
                assert u in net.neighbours(layer, v)


def test_one_hop_union_merges_layers():
    net = make_net({"l1": [("a", "b")], "l2": [("a", "c")]})
    assert net.one_hop_union("a") == {"b", "c"}
    dup = make_net({"l1": [("a", "b")], "l2": [("a", "b")]})
    assert dup.one_hop_union("a") == {"b"}
    lonely = make_net({"l1": [("a", "b")]}, nodes={"l1": ["z"], "l2": ["z"]})
    assert lonely.one_hop_union("z") == set()
    with pytest.raises(UnknownActorError):
        net.one_hop_union("nobody")


def test_layers_of_follows_presence():
    net = make_net(
        {"l1": [("a", "b")], "l2": [("a", "c")], "l3": [("b", "c")]},
        nodes={"l3": ["d"]},
    )
    assert set(net.layers_of("a")) == {"l1", "l2"}
    assert set(net.layers_of("d")) == {"l3"}
    full = make_net({"l1": [("a", "b")], "l2": [("a", "b")]})
    assert set(full.layers_of("a")) == set(full.layers)


def test_iteration_order_is_sorted():
    net = make_net({"l2": [("c", "a")], "l1": [("b", "a")]})
    assert net.actors == ("a", "b", "c")
    assert net.layers == ("l1", "l2")


def test_builder_rejects_self_loops_and_collapses_duplicates():
    builder = MultilayerNetworkBuilder()
    with pytest.raises(NetworkFormatError):
        builder.add_edge("l1", "a", "a")
    builder.add_edge("l1", "a", "b").add_edge("l1", "b", "a")
    net = builder.build()
    assert net.n_edges("l1") == 1
    assert net.edges("l1") == {frozenset({"a", "b"})}


def test_network_survives_pickling():
    net = make_net({"l1": [("a", "b")], "l2": [("b", "c")]}, nodes={"l2": ["d"]})
    clone = pickle.loads(pickle.dumps(net))
    assert clone.actors == net.actors
    assert clone.edges("l2") == net.edges("l2")
    assert clone.degree("l2", "d") == 0


# -- generators ------------------------------------------------------------------


def test_er_matches_cohort_edge_totals():
    net = generate_er(er_config_like(1000, ER_COHORTS["er-2"], rng_seed=7))
    assert net.n_actors == 1000
    assert net.n_edges() == 5459
    assert [net.n_edges(l) for l in net.layers] == [2730, 2729]
    assert sum(ER_COHORTS["er-3"]) == 7136
    assert sum(ER_COHORTS["er-5"]) == 15109


def test_er_small_cases():
    empty = generate_er(ErGenConfig(n_actors=5, n_layers=1, edges_per_layer=(0,), rng_seed=1))
    assert empty.n_actors == 5
    assert all(empty.degree("l1", a) == 0 for a in empty.actors)

    triangle = generate_er(ErGenConfig(n_actors=3, n_layers=1, edges_per_layer=(3,), rng_seed=1))
    assert triangle.edges("l1") == {frozenset(e) for e in [(0, 1), (0, 2), (1, 2)]}


def test_er_rejects_impossible_edge_count():
    with pytest.raises(GeneratorConfigError):
        generate_er(ErGenConfig(n_actors=3, n_layers=1, edges_per_layer=(4,)))
    with pytest.raises(GeneratorConfigError):
        generate_er(ErGenConfig(n_actors=3, n_layers=2, edges_per_layer=(1,)))


def test_er_is_deterministic_per_seed():
    config = er_config_like(200, (300, 250), rng_seed=3)
    a, b = generate_er(config), generate_er(config)
    assert all(a.edges(l) == b.edges(l) for l in a.layers)
    other = generate_er(er_config_like(200, (300, 250), rng_seed=4))
    assert any(a.edges(l) != other.edges(l) for l in a.layers)


def test_pa_actor_alignment_and_edge_bound():
    config = PaGenConfig(n_actors=300, n_layers=3, m0=6, m=6, rng_seed=1)
    net = generate_pa(config)
    assert net.n_actors == 300
    assert len(net.layers) == 3
    clique = 6 * 5 // 2
    for layer in net.layers:
        assert net.presence(layer) == set(net.actors)
        assert net.n_edges(layer) <= config.m * config.growth_steps + clique


def test_pa_without_growth_is_the_initial_clique():
    net = generate_pa(PaGenConfig(n_actors=6, n_layers=2, m0=6, m=6, rng_seed=1))
    assert net.n_actors == 6
    assert all(net.n_edges(l) == 15 for l in net.layers)


def test_pa_is_deterministic_per_seed():
    config = PaGenConfig(n_actors=150, n_layers=2, m0=4, m=3, rng_seed=11)
    a, b = generate_pa(config), generate_pa(config)
    assert all(a.edges(l) == b.edges(l) for l in a.layers)


def test_pa_degree_tail_is_heavier_than_er():
    pa = generate_pa(
        PaGenConfig(
            n_actors=1600,
            n_layers=1,
            m0=6,
            m=6,
            pr_internal=1.0,
            pr_external=0.0,
            pr_none=0.0,
            rng_seed=5,
        )
    )
    er = generate_er(er_config_like(1600, (pa.n_edges("l1"),), rng_seed=5))
    pa_max = max(pa.degree("l1", a) for a in pa.actors)
    er_max = max(er.degree("l1", a) for a in er.actors)
    assert pa_max > 3 * er_max


def test_pa_max_degree_grows_with_size():
    maxima = []
    for n in (100, 400, 1600):
        net = generate_pa(
            PaGenConfig(
                n_actors=n, n_layers=1, m0=4, m=4,
                pr_internal=1.0, pr_external=0.0, pr_none=0.0, rng_seed=2,
            )
        )
        maxima.append(max(net.degree("l1", a) for a in net.actors))
    assert maxima[0] < maxima[2]


@pytest.mark.parametrize(
    "overrides",
    [
        {"pr_internal": 0.5, "pr_external": 0.2, "pr_none": 0.1},
        {"m": 7},
        {"n_actors": 3},
        {"dependency": ((0.0, 1.0, 0.0), (0.5, 0.0, 0.5), (1.0, 0.0, 0.5))},
        {"initial": "ring"},
    ],
)
def test_pa_rejects_invalid_configs(overrides):
    params = dict(n_actors=50, n_layers=3, m0=6, m=6, rng_seed=0)
    params.update(overrides)
    with pytest.raises(GeneratorConfigError):
        generate_pa(PaGenConfig(**params))


@pytest.mark.parametrize(
    "cohort, total", [("sf-2", 4223), ("sf-3", 5010), ("sf-5", 10181)]
)
def test_pa_cohorts_land_near_reference_edge_totals(cohort, total):
    config = pa_config_like(1000, cohort, rng_seed=7)
    config.validate()
    net = generate_pa(config)
    assert net.n_actors == 1000
    assert len(net.layers) == SF_COHORTS[cohort]["n_layers"]
    assert abs(net.n_edges() - total) <= 0.10 * total


def test_pa_config_like_rejects_unknown_cohort():
    with pytest.raises(KeyError):
        pa_config_like(1000, "sf-4")
