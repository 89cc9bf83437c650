"""
Shared network builders for the test suite.
"""

from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np
import pytest

from src.infmax.network.core import MultilayerNetwork, MultilayerNetworkBuilder


def make_net(
    edges: Dict[str, Iterable[Tuple[object, object]]],
    nodes: Dict[str, Iterable[object]] | None = None,
) -> MultilayerNetwork:
    builder = MultilayerNetworkBuilder()
    for layer, pairs in edges.items():
        builder.add_layer(layer)
        builder.add_edges(layer, pairs)
    for layer, actors in (nodes or {}).items():
        for actor in actors:
            builder.add_node(layer, actor)
    return builder.build()


def path_net(names: Sequence[str]) -> MultilayerNetwork:
    return make_net({"l1": list(zip(names, names[1:]))})


def random_net(
    rng: np.random.Generator,
    n_actors: int,
    n_layers: int,
    density: float,
    presence: float = 0.85,
) -> MultilayerNetwork:
    """Random layers over actors 0..n-1; each actor present in a random
    subset of layers (at least one), edges only between present actors."""
    builder = MultilayerNetworkBuilder()
    layers = [f"l{i + 1}" for i in range(n_layers)]
    present: Dict[str, List[int]] = {layer: [] for layer in layers}
    for actor in range(n_actors):
        mask = rng.random(n_layers) < presence
        if not mask.any():
            mask[int(rng.integers(n_layers))] = True
        for layer, on in zip(layers, mask):
            if on:
                present[layer].append(actor)
                builder.add_node(layer, actor)
    for layer in layers:
        members = present[layer]
        for i, u in enumerate(members):
            for v in members[i + 1 :]:
                if rng.random() < density:
                    builder.add_edge(layer, u, v)
    return builder.build()


@pytest.fixture
def path5() -> MultilayerNetwork:
    return path_net(["v1", "v2", "v3", "v4", "v5"])


@pytest.fixture
def star() -> MultilayerNetwork:
    return make_net({"l1": [("c", leaf) for leaf in ("p1", "p2", "p3", "p4", "p5")]})


@pytest.fixture
def two_layer() -> MultilayerNetwork:
    # l1: a-b, l2: b-c
    return make_net({"l1": [("a", "b")], "l2": [("b", "c")]})
