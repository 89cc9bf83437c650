"""
Tests for threshold diffusion and the spreading metrics.
"""

import numpy as np
import pytest

from src.infmax.diffusion.metrics import DegenerateTraceWarning, activation_curve, gamma, lambda_
from src.infmax.diffusion.mltm import (
    AND,
    OR,
    MltmParams,
    SpreadTrace,
    actor_activates,
    node_positive_input,
    simulate,
    step,
)
from src.infmax.errors import ActorNotPresentError, EmptySeedSetError, UnknownActorError
from src.infmax.seeding.selection import SeedSet

from .conftest import make_net, path_net, random_net


@pytest.fixture
def abc():
    return path_net(["a", "b", "c"])


def _trace(sizes, n_actors):
    return SpreadTrace(
        states=tuple(frozenset(range(size)) for size in sizes), n_actors=n_actors
    )


def _iterate_step(net, seeds, params):
    states = [frozenset(seeds)]
    while True:
        nxt = step(net, states[-1], params)
        if nxt == states[-1]:
            return states
        states.append(nxt)


# -- node and actor rules --------------------------------------------------------


def test_node_input_examples(abc, star):
    assert node_positive_input(abc, "l1", "a", {"b"}, 0.5)
    assert not node_positive_input(star, "l1", "c", {"p1"}, 0.5)
    lonely = make_net({"l1": [("a", "b")]}, nodes={"l1": ["z"]})
    assert not node_positive_input(lonely, "l1", "z", {"a", "b"}, 0.1)


def test_node_input_threshold_comparison(star):
    active = {"p1", "p2"}
    # 2 of 5 leaves is exactly 0.4
    assert node_positive_input(star, "l1", "c", active, 0.4)
    assert not node_positive_input(star, "l1", "c", active, 0.4, strict=True)


def test_node_input_requires_presence(two_layer):
    with pytest.raises(ActorNotPresentError):
        node_positive_input(two_layer, "l2", "a", {"b"}, 0.5)


def test_protocols_on_two_layers(two_layer):
    assert actor_activates(two_layer, "b", {"a"}, MltmParams(0.5, OR))
    assert not actor_activates(two_layer, "b", {"a"}, MltmParams(0.5, AND))


def test_single_layer_actor_ignores_protocol(abc):
    for protocol in (AND, OR):
        assert actor_activates(abc, "a", {"b"}, MltmParams(0.5, protocol))


def test_isolated_layer_blocks_and():
    net = make_net({"l1": [("a", "b")]}, nodes={"l2": ["b"]})
    assert not actor_activates(net, "b", {"a"}, MltmParams(0.1, AND))
    assert actor_activates(net, "b", {"a"}, MltmParams(0.1, OR))


@pytest.mark.parametrize("mu,protocol", [(0.0, AND), (1.0, OR), (0.5, "XOR")])
def test_params_are_validated(mu, protocol):
    with pytest.raises(ValueError):
        MltmParams(mu, protocol)


# -- step and simulate -----------------------------------------------------------


def test_step_examples(abc):
    params = MltmParams(0.5, AND)
    assert step(abc, {"b"}, params) == {"a", "b", "c"}
    assert step(abc, set(), params) == frozenset()
    assert step(abc, {"a", "b", "c"}, params) == {"a", "b", "c"}


def test_simulate_path(abc):
    trace = simulate(abc, {"b"}, MltmParams(0.5, AND))
    assert trace.states == (frozenset({"b"}), frozenset({"a", "b", "c"}))
    assert trace.steps == 1
    assert trace.newly_active() == [frozenset({"a", "c"})]


def test_simulate_two_layers_by_protocol(two_layer):
    stalled = simulate(two_layer, {"a"}, MltmParams(0.5, AND))
    assert stalled.states == (frozenset({"a"}),)
    assert gamma(stalled) == 0.0
    spread = simulate(two_layer, {"a"}, MltmParams(0.5, OR))
    assert spread.states == (
        frozenset({"a"}),
        frozenset({"a", "b"}),
        frozenset({"a", "b", "c"}),
    )


def test_simulate_accepts_seed_sets(abc):
    seeds = SeedSet(members=frozenset({"b"}), budget=0.34)
    assert simulate(abc, seeds, MltmParams(0.5, OR)).final == {"a", "b", "c"}


def test_simulate_rejects_bad_seeds(abc):
    params = MltmParams(0.5, OR)
    with pytest.raises(EmptySeedSetError):
        simulate(abc, set(), params)
    with pytest.raises(UnknownActorError):
        simulate(abc, {"q"}, params)


def _cases(count, seed=0):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(6, 16))
        net = random_net(rng, n, int(rng.integers(1, 4)), float(rng.uniform(0.1, 0.5)))
        k = int(rng.integers(1, max(2, n // 3)))
        seeds = frozenset(net.actors[i] for i in rng.choice(n, size=k, replace=False))
        yield rng, net, seeds


def test_simulate_matches_iterated_step():
    for rng, net, seeds in _cases(60, seed=1):
        params = MltmParams(float(rng.choice([0.2, 0.34, 0.5, 0.7])), str(rng.choice([AND, OR])))
        trace = simulate(net, seeds, params)
        assert list(trace.states) == _iterate_step(net, seeds, params)
        assert trace.steps <= net.n_actors
        sizes = trace.sizes()
        assert all(b > a for a, b in zip(sizes, sizes[1:]))
        assert simulate(net, seeds, params) == trace


def test_or_dominates_and():
    for rng, net, seeds in _cases(120, seed=2):
        mu = float(rng.uniform(0.05, 0.95))
        t_and = simulate(net, seeds, MltmParams(mu, AND))
        t_or = simulate(net, seeds, MltmParams(mu, OR))
        for t, state in enumerate(t_and.states):
            assert state <= t_or.states[min(t, t_or.steps)]
        assert gamma(t_or) >= gamma(t_and)


def test_higher_threshold_never_spreads_further():
    for rng, net, seeds in _cases(120, seed=3):
        protocol = str(rng.choice([AND, OR]))
        low, high = sorted(rng.uniform(0.05, 0.95, size=2))
        t_low = simulate(net, seeds, MltmParams(float(low), protocol))
        t_high = simulate(net, seeds, MltmParams(float(high), protocol))
        for t, state in enumerate(t_high.states):
            assert state <= t_low.states[min(t, t_low.steps)]
        assert gamma(t_high) <= gamma(t_low)


def test_more_seeds_never_spread_less():
    for rng, net, seeds in _cases(120, seed=4):
        extra = seeds | {net.actors[int(rng.integers(net.n_actors))]}
        params = MltmParams(float(rng.uniform(0.05, 0.95)), str(rng.choice([AND, OR])))
        small = simulate(net, seeds, params)
        large = simulate(net, extra, params)
        for t, state in enumerate(small.states):
            assert state <= large.states[min(t, large.steps)]


# -- metrics ---------------------------------------------------------------------


def test_gamma_examples(abc):
    assert gamma(simulate(abc, {"b"}, MltmParams(0.5, AND))) == 1.0
    assert gamma(_trace([35, 78], 100)) == pytest.approx(43 / 65)
    assert gamma(_trace([4], 10)) == 0.0


def test_lambda_examples(abc):
    assert lambda_(simulate(abc, {"b"}, MltmParams(0.5, AND))) == pytest.approx(0.5)
    assert lambda_(_trace([4], 10)) == 0.0
    assert lambda_(_trace([10, 55, 100], 100)) == pytest.approx(0.5)


def test_activation_curve_is_normalised():
    x, y = activation_curve(_trace([10, 55, 100], 100))
    assert x.tolist() == [0.0, 0.5, 1.0]
    assert y.tolist() == [0.0, 0.5, 1.0]


def test_metrics_stay_in_unit_interval():
    for rng, net, seeds in _cases(60, seed=5):
        trace = simulate(net, seeds, MltmParams(0.3, OR))
        if len(seeds) == net.n_actors:
            continue
        assert 0.0 <= gamma(trace) <= 1.0
        assert 0.0 <= lambda_(trace) <= gamma(trace) + 1e-12


def test_seeds_covering_everything_warn(abc):
    trace = simulate(abc, {"a", "b", "c"}, MltmParams(0.5, OR))
    with pytest.warns(DegenerateTraceWarning):
        assert gamma(trace) == 0.0
    with pytest.warns(DegenerateTraceWarning):
        assert lambda_(trace) == 0.0
