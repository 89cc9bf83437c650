"""
Rank-refining seed heuristics. Each produces a complete ranking of the
actors, best first; ties go to the lower actor id.

    deg-c    sum of per-layer degrees
    deg-cd   degree discounted by already-picked neighbours (per layer)
    nghb-1s  size of the one-hop neighbourhood union
    nghb-sd  one-hop union size counting only unpicked actors
    random   rng permutation
"""

import heapq
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

import numpy as np

from ..errors import UnknownMethodError
from ..network.core import ActorId, MultilayerNetwork
from ..rng import shuffled

logger = logging.getLogger(__name__)

DEG_C = "deg-c"
DEG_CD = "deg-cd"
NGHB_1S = "nghb-1s"
NGHB_SD = "nghb-sd"
RANDOM = "random"
METHODS: Tuple[str, ...] = (DEG_C, DEG_CD, NGHB_1S, NGHB_SD, RANDOM)


@dataclass(frozen=True)
class ActorRanking:
    method: str
    order: Tuple[ActorId, ...]

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self) -> Iterator[ActorId]:
        return iter(self.order)

    def top(self, k: int) -> Tuple[ActorId, ...]:
        return self.order[:k]


def _static_order(actors: Sequence[ActorId], scores: Sequence[int]) -> List[ActorId]:
    # Stable sort on descending score keeps id order among ties
    ranked = sorted(range(len(actors)), key=lambda i: -scores[i])
    return [actors[i] for i in ranked]


def _degree_order(net: MultilayerNetwork) -> List[ActorId]:
    return _static_order(net.actors, [net.total_degree(a) for a in net.actors])


def _one_hop_order(net: MultilayerNetwork) -> List[ActorId]:
    return _static_order(net.actors, [len(net.one_hop_union(a)) for a in net.actors])


def _discount_order(
    net: MultilayerNetwork,
    scores: Dict[ActorId, int],
    affected: Callable[[ActorId], Iterator[ActorId]],
) -> List[ActorId]:
    """Repeatedly pick the best current score; each pick lowers the score of
    every actor `affected` yields by one per yield. Lazy max-heap."""
    index = {a: i for i, a in enumerate(net.actors)}
    heap = [(-score, index[a]) for a, score in scores.items()]
    heapq.heapify(heap)
    picked = set()
    order: List[ActorId] = []
    while heap:
        neg, i = heapq.heappop(heap)
        actor = net.actors[i]
        if actor in picked or -neg != scores[actor]:
            continue
        picked.add(actor)
        order.append(actor)
        touched = set()
        for other in affected(actor):
            if other not in picked:
                scores[other] -= 1
                touched.add(other)
        for other in touched:
            heapq.heappush(heap, (-scores[other], index[other]))
    return order


def _degree_discount_order(net: MultilayerNetwork) -> List[ActorId]:
    scores = {a: net.total_degree(a) for a in net.actors}

    def affected(actor: ActorId) -> Iterator[ActorId]:
        for layer in net.layers_of(actor):
            yield from net.neighbours(layer, actor)

    return _discount_order(net, scores, affected)


def _size_discount_order(net: MultilayerNetwork) -> List[ActorId]:
    scores = {a: len(net.one_hop_union(a)) for a in net.actors}

    # one-hop unions are symmetric: picked x leaves y's union iff y is in x's
    def affected(actor: ActorId) -> Iterator[ActorId]:
        return iter(net.one_hop_union(actor))

    return _discount_order(net, scores, affected)


def rank_actors(
    net: MultilayerNetwork, method: str, rng: np.random.Generator | None = None
) -> ActorRanking:
    if method == DEG_C:
        order = _degree_order(net)
    elif method == DEG_CD:
        order = _degree_discount_order(net)
    elif method == NGHB_1S:
        order = _one_hop_order(net)
    elif method == NGHB_SD:
        order = _size_discount_order(net)
    elif method == RANDOM:
        if rng is None:
            raise ValueError("random ranking needs an rng")
        order = shuffled(net.actors, rng)
    else:
        raise UnknownMethodError(f"unknown seeding method {method!r}")
    logger.debug("seeding.ranked method=%s actors=%d", method, len(order))
    return ActorRanking(method=method, order=tuple(order))
