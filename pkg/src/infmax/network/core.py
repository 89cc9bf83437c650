"""
Multilayer network model M = (A, L, V, E): actors, ordered layers, per-layer
presence and undirected intra-layer edges. Networks are immutable once built;
each layer is a frozen networkx graph whose node set is the layer presence.
"""

from typing import Dict, FrozenSet, Hashable, Iterable, Tuple

import networkx as nx

from ..errors import ActorNotPresentError, NetworkFormatError, UnknownActorError

ActorId = Hashable
LayerId = Hashable
Edge = FrozenSet[ActorId]


class MultilayerNetwork:
    """Read-only view over a built network; share freely across runs."""

    __slots__ = ("_layers", "_actors", "_graphs", "_closed", "_layers_of", "_one_hop")

    def __init__(self, graphs: Dict[LayerId, nx.Graph]) -> None:
        self._layers: Tuple[LayerId, ...] = tuple(sorted(graphs))
        self._graphs: Dict[LayerId, nx.Graph] = {
            layer: nx.freeze(graphs[layer]) for layer in self._layers
        }
        actors = set()
        for graph in self._graphs.values():
            actors.update(graph.nodes)
        self._actors: Tuple[ActorId, ...] = tuple(sorted(actors))

        # Closed neighbourhoods N_l[a] = {a} ∪ N_l(a), used by domination checks
        self._closed: Dict[LayerId, Dict[ActorId, FrozenSet[ActorId]]] = {}
        layers_of: Dict[ActorId, list] = {a: [] for a in self._actors}
        for layer in self._layers:
            graph = self._graphs[layer]
            self._closed[layer] = {
                a: frozenset(graph.adj[a]) | {a} for a in graph.nodes
            }
            for a in graph.nodes:
                layers_of[a].append(layer)
        self._layers_of: Dict[ActorId, Tuple[LayerId, ...]] = {
            a: tuple(ls) for a, ls in layers_of.items()
        }
        self._one_hop: Dict[ActorId, FrozenSet[ActorId]] = {}

    # -- basic views ---------------------------------------------------------

    @property
    def actors(self) -> Tuple[ActorId, ...]:
        return self._actors

    @property
    def layers(self) -> Tuple[LayerId, ...]:
        return self._layers

    @property
    def n_actors(self) -> int:
        return len(self._actors)

    def has_actor(self, actor: ActorId) -> bool:
        return actor in self._layers_of

    def graph(self, layer: LayerId) -> nx.Graph:
        try:
            return self._graphs[layer]
        except KeyError:
            raise KeyError(f"unknown layer {layer!r}") from None

    def presence(self, layer: LayerId) -> FrozenSet[ActorId]:
        return frozenset(self.graph(layer).nodes)

    def edges(self, layer: LayerId) -> FrozenSet[Edge]:
        return frozenset(frozenset(e) for e in self.graph(layer).edges)

    def n_edges(self, layer: LayerId | None = None) -> int:
        if layer is not None:
            return self.graph(layer).number_of_edges()
        return sum(g.number_of_edges() for g in self._graphs.values())

    def is_present(self, layer: LayerId, actor: ActorId) -> bool:
        return actor in self.graph(layer)

    # -- adjacency queries ---------------------------------------------------

    def _check_present(self, layer: LayerId, actor: ActorId) -> None:
        if actor not in self.graph(layer):
            raise ActorNotPresentError(actor, layer)

    def degree(self, layer: LayerId, actor: ActorId) -> int:
        self._check_present(layer, actor)
        return len(self._graphs[layer].adj[actor])

    def neighbours(self, layer: LayerId, actor: ActorId) -> FrozenSet[ActorId]:
        self._check_present(layer, actor)
        return self._closed[layer][actor] - {actor}

    def closed_neighbourhood(self, layer: LayerId, actor: ActorId) -> FrozenSet[ActorId]:
        self._check_present(layer, actor)
        return self._closed[layer][actor]

    def layers_of(self, actor: ActorId) -> Tuple[LayerId, ...]:
        try:
            return self._layers_of[actor]
        except KeyError:
            raise UnknownActorError(actor) from None

    def one_hop_union(self, actor: ActorId) -> FrozenSet[ActorId]:
        cached = self._one_hop.get(actor)
        if cached is not None:
            return cached
        union: set = set()
        for layer in self.layers_of(actor):
            union.update(self._graphs[layer].adj[actor])
        union.discard(actor)
        result = frozenset(union)
        self._one_hop[actor] = result
        return result

    def total_degree(self, actor: ActorId) -> int:
        return sum(len(self._graphs[l].adj[actor]) for l in self.layers_of(actor))

    def isolated_layers(self, actor: ActorId) -> Tuple[LayerId, ...]:
        """Layers where the actor is represented but has no neighbours."""
        return tuple(l for l in self.layers_of(actor) if not self._graphs[l].adj[actor])

    def __repr__(self) -> str:
        return (
            f"MultilayerNetwork(actors={self.n_actors}, layers={len(self._layers)}, "
            f"edges={self.n_edges()})"
        )

    # Pickling support for process pools (slots + cached views)
    def __getstate__(self) -> dict:
        return {"graphs": {l: nx.Graph(g) for l, g in self._graphs.items()}}

    def __setstate__(self, state: dict) -> None:
        self.__init__(state["graphs"])  # type: ignore[misc]


class MultilayerNetworkBuilder:
    """Single-threaded accumulator; `build()` returns the immutable network.

    Edges create presence of both endpoints; duplicate edges collapse.
    """

    def __init__(self) -> None:
        self._graphs: Dict[LayerId, nx.Graph] = {}

    def add_layer(self, layer: LayerId) -> "MultilayerNetworkBuilder":
        self._graphs.setdefault(layer, nx.Graph())
        return self

    def add_node(self, layer: LayerId, actor: ActorId) -> "MultilayerNetworkBuilder":
        self._graphs.setdefault(layer, nx.Graph()).add_node(actor)
        return self

    def add_edge(
        self, layer: LayerId, u: ActorId, v: ActorId
    ) -> "MultilayerNetworkBuilder":
        if u == v:
            raise NetworkFormatError(f"self-loop on actor {u!r} in layer {layer!r}")
        self._graphs.setdefault(layer, nx.Graph()).add_edge(u, v)
        return self

    def add_edges(
        self, layer: LayerId, edges: Iterable[Tuple[ActorId, ActorId]]
    ) -> "MultilayerNetworkBuilder":
        for u, v in edges:
            self.add_edge(layer, u, v)
        return self

    def build(self) -> MultilayerNetwork:
        return MultilayerNetwork({l: g.copy() for l, g in self._graphs.items()})


def from_layer_graphs(graphs: Dict[LayerId, nx.Graph]) -> MultilayerNetwork:
    """Wraps existing networkx graphs (one per layer); rejects self-loops."""
    builder = MultilayerNetworkBuilder()
    for layer, graph in graphs.items():
        builder.add_layer(layer)
        for actor in graph.nodes:
            builder.add_node(layer, actor)
        builder.add_edges(layer, graph.edges)
    return builder.build()
