"""
Synthetic multilayer generators: fixed-edge-count Erdős–Rényi layers and
preferential-attachment growth with interlayer edge import. Every generated
actor is present in every layer.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from ..errors import GeneratorConfigError
from .core import MultilayerNetwork, from_layer_graphs

logger = logging.getLogger(__name__)

PROBABILITY_TOLERANCE = 1e-9


def layer_names(n_layers: int) -> List[str]:
    return [f"l{i + 1}" for i in range(n_layers)]


@dataclass(frozen=True)
class ErGenConfig:
    n_actors: int
    n_layers: int
    edges_per_layer: Tuple[int, ...]
    rng_seed: int = 0

    def validate(self) -> None:
        if self.n_actors < 1 or self.n_layers < 1:
            raise GeneratorConfigError("n_actors and n_layers must be positive")
        if len(self.edges_per_layer) != self.n_layers:
            raise GeneratorConfigError(
                f"edges_per_layer has {len(self.edges_per_layer)} entries, "
                f"expected {self.n_layers}"
            )
        max_edges = self.n_actors * (self.n_actors - 1) // 2
        for count in self.edges_per_layer:
            if count < 0 or count > max_edges:
                raise GeneratorConfigError(
                    f"invalid edge count {count} for {self.n_actors} actors "
                    f"(max {max_edges})"
                )


@dataclass(frozen=True)
class PaGenConfig:
    n_actors: int
    n_layers: int
    m0: int
    m: int
    pr_internal: float = 0.7
    pr_external: float = 0.2
    pr_none: float = 0.1
    # None means the uniform default 1/(|L|-1) off the diagonal
    dependency: Tuple[Tuple[float, ...], ...] | None = None
    rng_seed: int = 0
    initial: str = "clique"

    @property
    def growth_steps(self) -> int:
        return self.n_actors - self.m0

    def dependency_matrix(self) -> np.ndarray:
        k = self.n_layers
        if self.dependency is not None:
            return np.asarray(self.dependency, dtype=float)
        if k == 1:
            return np.zeros((1, 1))
        matrix = np.full((k, k), 1.0 / (k - 1))
        np.fill_diagonal(matrix, 0.0)
        return matrix

    def validate(self) -> None:
        if self.n_layers < 1:
            raise GeneratorConfigError("n_layers must be positive")
        if self.m < 1 or self.m0 < 1:
            raise GeneratorConfigError("m and m0 must be positive")
        if self.m > self.m0:
            raise GeneratorConfigError(f"m={self.m} exceeds m0={self.m0}")
        if self.n_actors < self.m0:
            raise GeneratorConfigError(
                f"n_actors={self.n_actors} smaller than m0={self.m0}"
            )
        probs = (self.pr_internal, self.pr_external, self.pr_none)
        if any(p < 0 for p in probs):
            raise GeneratorConfigError("probabilities must be non-negative")
        if abs(sum(probs) - 1.0) > PROBABILITY_TOLERANCE:
            raise GeneratorConfigError(
                f"pr_internal + pr_external + pr_none = {sum(probs)!r}, expected 1"
            )
        if self.initial not in ("clique", "empty"):
            raise GeneratorConfigError(f"unknown initial topology {self.initial!r}")
        matrix = self.dependency_matrix()
        if matrix.shape != (self.n_layers, self.n_layers):
            raise GeneratorConfigError(
                f"dependency matrix shape {matrix.shape} does not match "
                f"{self.n_layers} layers"
            )
        if self.pr_external > 0:
            if self.n_layers == 1:
                raise GeneratorConfigError(
                    "edge import needs at least two layers (set pr_external=0)"
                )
            if np.any(np.diag(matrix) != 0) or np.any(matrix < 0):
                raise GeneratorConfigError(
                    "dependency matrix needs a zero diagonal and non-negative entries"
                )
            if not np.allclose(matrix.sum(axis=1), 1.0, atol=PROBABILITY_TOLERANCE):
                raise GeneratorConfigError("dependency rows must sum to 1")


def generate_er(config: ErGenConfig) -> MultilayerNetwork:
    """G(n, m) per layer with exact edge counts; layer seeds spawned from rng_seed."""
    config.validate()
    names = layer_names(config.n_layers)
    seeds = np.random.SeedSequence(config.rng_seed).spawn(config.n_layers)
    graphs: Dict[str, nx.Graph] = {}
    for name, seq, n_edges in zip(names, seeds, config.edges_per_layer):
        layer_seed = int(seq.generate_state(1)[0])
        graphs[name] = nx.gnm_random_graph(config.n_actors, n_edges, seed=layer_seed)
    net = from_layer_graphs(graphs)
    logger.info(
        "generators.er.done actors=%d layers=%d edges=%d seed=%d",
        net.n_actors,
        len(net.layers),
        net.n_edges(),
        config.rng_seed,
    )
    return net


class _PaLayer:
    """Growth state of one layer: edge set, edge list and endpoint list."""

    __slots__ = ("edges", "edge_list", "endpoints", "connected")

    def __init__(self) -> None:
        self.edges: Set[Tuple[int, int]] = set()
        self.edge_list: List[Tuple[int, int]] = []
        # Each actor appears once per incident edge: uniform draws are degree-proportional
        self.endpoints: List[int] = []
        self.connected: Set[int] = set()

    def add(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        if u == v or key in self.edges:
            return False
        self.edges.add(key)
        self.edge_list.append(key)
        self.endpoints.extend(key)
        self.connected.update(key)
        return True


def _preferential_targets(
    state: _PaLayer, existing: int, m: int, rng: np.random.Generator
) -> List[int]:
    pool: Sequence[int] = state.endpoints
    if len(state.connected) < m:
        # Too few connected actors: uniform over all existing actors
        return [int(x) for x in rng.choice(existing, size=min(m, existing), replace=False)]
    chosen: List[int] = []
    seen: Set[int] = set()
    size = len(pool)
    while len(chosen) < m:
        target = pool[int(rng.integers(size))]
        if target not in seen:
            seen.add(target)
            chosen.append(target)
    return chosen


def generate_pa(config: PaGenConfig) -> MultilayerNetwork:
    """Preferential-attachment growth with per-layer internal/external/none events.

    Each growth step adds one actor to every layer. Per layer, with
    pr_internal the actor attaches m degree-preferential edges; with
    pr_external a uniformly chosen edge of a dependency-sampled source layer is
    copied in (no-op if already there); otherwise nothing happens.
    """
    config.validate()
    rng = np.random.default_rng(config.rng_seed)
    names = layer_names(config.n_layers)
    dependency = config.dependency_matrix()
    states = [_PaLayer() for _ in names]

    if config.initial == "clique":
        for state in states:
            for u in range(config.m0):
                for v in range(u + 1, config.m0):
                    state.add(u, v)

    for step in range(config.growth_steps):
        actor = config.m0 + step
        # Event draws happen for every layer before any edges move
        draws = rng.random(config.n_layers)
        imports: List[Tuple[int, Tuple[int, int]]] = []
        for idx, state in enumerate(states):
            draw = draws[idx]
            if draw < config.pr_internal:
                # Targets are drawn before any of this step's edges land
                targets = _preferential_targets(state, actor, config.m, rng)
                for target in targets:
                    state.add(actor, target)
            elif draw < config.pr_internal + config.pr_external:
                source = int(rng.choice(config.n_layers, p=dependency[idx]))
                source_edges = states[source].edge_list
                if source_edges:
                    imports.append(
                        (idx, source_edges[int(rng.integers(len(source_edges)))])
                    )
        for idx, (u, v) in imports:
            states[idx].add(u, v)

    graphs: Dict[str, nx.Graph] = {}
    for name, state in zip(names, states):
        graph = nx.Graph()
        graph.add_nodes_from(range(config.n_actors))
        graph.add_edges_from(state.edge_list)
        graphs[name] = graph
    net = from_layer_graphs(graphs)
    logger.info(
        "generators.pa.done actors=%d layers=%d edges=%d m0=%d m=%d seed=%d",
        net.n_actors,
        len(net.layers),
        net.n_edges(),
        config.m0,
        config.m,
        config.rng_seed,
    )
    return net


def er_config_like(
    n_actors: int, edges_per_layer: Sequence[int], rng_seed: int = 0
) -> ErGenConfig:
    return ErGenConfig(
        n_actors=n_actors,
        n_layers=len(edges_per_layer),
        edges_per_layer=tuple(int(e) for e in edges_per_layer),
        rng_seed=rng_seed,
    )


# Edge counts of the Erdős–Rényi cohorts (1000 actors)
ER_COHORTS: Dict[str, Tuple[int, ...]] = {
    "er-2": (2730, 2729),
    "er-3": (2379, 2379, 2378),
    "er-5": (3022, 3022, 3022, 3022, 3021),
}


# Scale-free cohorts of the main study (1000 actors). m0 = m = 3 with a
# per-cohort internal-event share; expected edge totals are about 4.2k, 5.0k
# and 10.8k. The follow-up cohorts keep the PaGenConfig defaults with m0 = m = 6.
SF_COHORTS: Dict[str, Dict[str, float]] = {
    "sf-2": {
        "n_layers": 2,
        "m0": 3,
        "m": 3,
        "pr_internal": 0.64,
        "pr_external": 0.2,
        "pr_none": 0.16,
    },
    "sf-3": {
        "n_layers": 3,
        "m0": 3,
        "m": 3,
        "pr_internal": 0.49,
        "pr_external": 0.2,
        "pr_none": 0.31,
    },
    "sf-5": {
        "n_layers": 5,
        "m0": 3,
        "m": 3,
        "pr_internal": 0.66,
        "pr_external": 0.2,
        "pr_none": 0.14,
    },
}


def pa_config_like(n_actors: int, cohort: str, rng_seed: int = 0) -> PaGenConfig:
    params = SF_COHORTS[cohort]
    return PaGenConfig(
        n_actors=n_actors,
        n_layers=int(params["n_layers"]),
        m0=int(params["m0"]),
        m=int(params["m"]),
        pr_internal=params["pr_internal"],
        pr_external=params["pr_external"],
        pr_none=params["pr_none"],
        rng_seed=rng_seed,
    )
