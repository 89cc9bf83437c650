"""
Multilayer domination. An actor is dominated when it is a member of the set,
or when in every layer it is present in, its node is adjacent to a node of a
member. Obligations are (actor, layer) pairs for every node; obligation
(x, l) is met by any member in the closed neighbourhood N_l[x].
"""

from collections import Counter
from typing import Dict, FrozenSet, Iterable, Iterator, List, Set, Tuple

from ..errors import NotDominatingError, UnknownActorError
from ..network.core import ActorId, LayerId, MultilayerNetwork

DominatingSet = FrozenSet[ActorId]


class DominationMap:
    """Per layer: member -> actors whose node it dominates (itself included).

    Keeps a per-layer cover counter next to the map so exclusivity and
    redundancy are O(degree) queries. Mutated in place by `add`/`discard`.
    """

    __slots__ = ("net", "members", "by_layer", "cover_count")

    def __init__(self, net: MultilayerNetwork) -> None:
        self.net = net
        self.members: Set[ActorId] = set()
        self.by_layer: Dict[LayerId, Dict[ActorId, FrozenSet[ActorId]]] = {
            layer: {} for layer in net.layers
        }
        self.cover_count: Dict[LayerId, Counter] = {
            layer: Counter() for layer in net.layers
        }

    def copy(self) -> "DominationMap":
        clone = DominationMap.__new__(DominationMap)
        clone.net = self.net
        clone.members = set(self.members)
        clone.by_layer = {l: dict(m) for l, m in self.by_layer.items()}
        clone.cover_count = {l: Counter(c) for l, c in self.cover_count.items()}
        return clone

    def add(self, actor: ActorId) -> None:
        if actor in self.members:
            return
        self.members.add(actor)
        for layer in self.net.layers_of(actor):
            dominated = self.net.closed_neighbourhood(layer, actor)
            self.by_layer[layer][actor] = dominated
            counts = self.cover_count[layer]
            for x in dominated:
                counts[x] += 1

    def discard(self, actor: ActorId) -> None:
        if actor not in self.members:
            return
        self.members.discard(actor)
        for layer in self.net.layers_of(actor):
            dominated = self.by_layer[layer].pop(actor)
            counts = self.cover_count[layer]
            for x in dominated:
                counts[x] -= 1
                if not counts[x]:
                    del counts[x]

    def exclusive(self, actor: ActorId) -> Dict[LayerId, FrozenSet[ActorId]]:
        """Nodes covered by `actor` and by no other member, per layer."""
        out: Dict[LayerId, FrozenSet[ActorId]] = {}
        for layer, dominated_by in self.by_layer.items():
            dominated = dominated_by.get(actor)
            if not dominated:
                continue
            counts = self.cover_count[layer]
            only = frozenset(x for x in dominated if counts[x] == 1)
            if only:
                out[layer] = only
        return out

    def is_removable(self, actor: ActorId) -> bool:
        """True if the set minus `actor` still dominates (given it dominates now)."""
        for layer in self.net.layers_of(actor):
            counts = self.cover_count[layer]
            for x in self.by_layer[layer][actor]:
                if counts[x] < 2:
                    return False
        return True

    def uncovered(self) -> Iterator[Tuple[ActorId, LayerId]]:
        for layer in self.net.layers:
            counts = self.cover_count[layer]
            for actor in self.net.graph(layer).nodes:
                if not counts[actor]:
                    yield actor, layer

    def covers_all(self, obligations: Iterable[Tuple[ActorId, LayerId]] | None = None) -> bool:
        if obligations is None:
            return next(self.uncovered(), None) is None
        return all(self.cover_count[layer][x] > 0 for x, layer in obligations)

    def as_dict(self) -> Dict[LayerId, Dict[ActorId, FrozenSet[ActorId]]]:
        return {l: dict(m) for l, m in self.by_layer.items()}


def _check_members(net: MultilayerNetwork, candidate: Iterable[ActorId]) -> None:
    for actor in candidate:
        if not net.has_actor(actor):
            raise UnknownActorError(actor)


def compute_domination(net: MultilayerNetwork, d: Iterable[ActorId]) -> DominationMap:
    dom = DominationMap(net)
    members = list(d)
    _check_members(net, members)
    for actor in members:
        dom.add(actor)
    return dom


def is_dominating(net: MultilayerNetwork, candidate: Iterable[ActorId]) -> bool:
    members = set(candidate)
    _check_members(net, members)
    for layer in net.layers:
        covered: Set[ActorId] = set()
        for actor in members:
            if net.is_present(layer, actor):
                covered |= net.closed_neighbourhood(layer, actor)
        # Membership counts in every layer, including ones a member is absent from
        for actor in net.graph(layer).nodes:
            if actor not in covered and actor not in members:
                return False
    return True


def require_dominating(net: MultilayerNetwork, candidate: Iterable[ActorId]) -> None:
    if not is_dominating(net, candidate):
        raise NotDominatingError("actor set does not dominate the network")


def find_replacement_candidates(
    net: MultilayerNetwork,
    a: ActorId,
    d: Iterable[ActorId],
    dom: DominationMap,
) -> Set[ActorId]:
    """Non-members that cover every node exclusively dominated by `a`.

    A candidate must be present in each layer holding such a node, and be in
    the closed neighbourhood of every exclusive node there.
    """
    members = set(d)
    if a not in members:
        raise NotDominatingError(f"actor {a!r} is not a member of the set")
    candidates: Set[ActorId] | None = None
    for layer, only in dom.exclusive(a).items():
        layer_candidates: Set[ActorId] | None = None
        for x in only:
            covering = net.closed_neighbourhood(layer, x)
            layer_candidates = (
                set(covering) if layer_candidates is None else layer_candidates & covering
            )
            if not layer_candidates:
                return set()
        candidates = layer_candidates if candidates is None else candidates & layer_candidates
        if not candidates:
            return set()
    if candidates is None:
        # Nothing exclusive: any non-member keeps the set dominating
        candidates = set(net.actors)
    candidates.discard(a)
    candidates -= members
    return candidates


def forced_members(net: MultilayerNetwork) -> List[ActorId]:
    """Actors isolated in some layer they are present in; only membership covers them."""
    return [a for a in net.actors if net.isolated_layers(a)]
