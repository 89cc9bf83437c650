"""
Multilayer linear threshold model. A node receives positive input when the
fraction of its active neighbours in that layer reaches mu; the protocol
aggregates node inputs per actor (AND: every layer it is present in, OR: at
least one). Updates are synchronous and activation is permanent.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import AbstractSet, Dict, FrozenSet, Iterable, List, Set, Tuple

from ..errors import ActorNotPresentError, EmptySeedSetError, UnknownActorError
from ..network.core import ActorId, LayerId, MultilayerNetwork

logger = logging.getLogger(__name__)

AND = "AND"
OR = "OR"
PROTOCOLS: Tuple[str, ...] = (AND, OR)


@dataclass(frozen=True)
class MltmParams:
    mu: float
    protocol: str
    # True compares with ">" instead of ">="
    strict: bool = False

    def __post_init__(self) -> None:
        if not 0 < self.mu < 1:
            raise ValueError(f"mu {self.mu!r} outside (0, 1)")
        if self.protocol not in PROTOCOLS:
            raise ValueError(f"unknown protocol {self.protocol!r}")


def _meets(active_count: int, degree: int, mu: float, strict: bool) -> bool:
    if degree == 0:
        return False
    fraction = active_count / degree
    return fraction > mu if strict else fraction >= mu


def node_positive_input(
    net: MultilayerNetwork,
    layer: LayerId,
    actor: ActorId,
    active: AbstractSet[ActorId],
    mu: float,
    strict: bool = False,
) -> bool:
    if not net.is_present(layer, actor):
        raise ActorNotPresentError(actor, layer)
    neighbours = net.neighbours(layer, actor)
    return _meets(len(neighbours & active), len(neighbours), mu, strict)


def actor_activates(
    net: MultilayerNetwork,
    actor: ActorId,
    active: AbstractSet[ActorId],
    params: MltmParams,
) -> bool:
    layers = net.layers_of(actor)
    if not layers:
        return False
    inputs = (
        node_positive_input(net, layer, actor, active, params.mu, params.strict)
        for layer in layers
    )
    return all(inputs) if params.protocol == AND else any(inputs)


def step(
    net: MultilayerNetwork, active: AbstractSet[ActorId], params: MltmParams
) -> FrozenSet[ActorId]:
    """One synchronous update: every inactive actor is judged against `active`."""
    current = frozenset(active)
    newly = [
        a for a in net.actors if a not in current and actor_activates(net, a, current, params)
    ]
    return current.union(newly)


@dataclass(frozen=True)
class SpreadTrace:
    states: Tuple[FrozenSet[ActorId], ...]
    n_actors: int

    @property
    def seeds(self) -> FrozenSet[ActorId]:
        return self.states[0]

    @property
    def final(self) -> FrozenSet[ActorId]:
        return self.states[-1]

    @property
    def steps(self) -> int:
        """T: number of updates that activated someone."""
        return len(self.states) - 1

    def sizes(self) -> List[int]:
        return [len(s) for s in self.states]

    def newly_active(self) -> List[FrozenSet[ActorId]]:
        return [b - a for a, b in zip(self.states, self.states[1:])]


def _seed_members(seeds: object) -> FrozenSet[ActorId]:
    members = getattr(seeds, "members", seeds)
    return frozenset(members)  # type: ignore[arg-type]


def simulate(
    net: MultilayerNetwork, seeds: Iterable[ActorId], params: MltmParams
) -> SpreadTrace:
    """Runs synchronous updates from the seed set to the fixpoint.

    Accepts a plain actor collection or a SeedSet. Keeps per-layer counts of
    active neighbours and only re-judges actors next to fresh activations;
    the trace equals iterating `step`.
    """
    initial = _seed_members(seeds)
    if not initial:
        raise EmptySeedSetError("simulation needs at least one seed")
    for actor in initial:
        if not net.has_actor(actor):
            raise UnknownActorError(actor)

    active: Set[ActorId] = set(initial)
    counts: Dict[LayerId, Counter] = {layer: Counter() for layer in net.layers}
    states: List[FrozenSet[ActorId]] = [initial]

    def spread(fresh: Iterable[ActorId]) -> Set[ActorId]:
        frontier: Set[ActorId] = set()
        for actor in fresh:
            for layer in net.layers_of(actor):
                layer_counts = counts[layer]
                for other in net.neighbours(layer, actor):
                    layer_counts[other] += 1
                    if other not in active:
                        frontier.add(other)
        return frontier

    def activates(actor: ActorId) -> bool:
        verdicts = (
            _meets(counts[layer][actor], net.degree(layer, actor), params.mu, params.strict)
            for layer in net.layers_of(actor)
        )
        return all(verdicts) if params.protocol == AND else any(verdicts)

    frontier = spread(initial)
    while frontier:
        fresh = sorted(a for a in frontier if activates(a))
        if not fresh:
            break
        active.update(fresh)
        states.append(frozenset(active))
        frontier = spread(fresh)

    trace = SpreadTrace(states=tuple(states), n_actors=net.n_actors)
    logger.debug(
        "mltm.simulated seeds=%d final=%d steps=%d mu=%s protocol=%s",
        len(initial),
        len(trace.final),
        trace.steps,
        params.mu,
        params.protocol,
    )
    return trace
