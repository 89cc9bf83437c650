"""
Dominating-set search: greedy construction (degree-ordered per layer, or
obligation-counting), redundancy removal, local improvement by member
replacement, and an exhaustive minimum-size oracle for small networks.
"""

import itertools
import logging
import math
import time
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Set

import numpy as np

from .. import settings
from ..network.core import ActorId, MultilayerNetwork
from ..rng import shuffled
from .domination import (
    DominatingSet,
    DominationMap,
    compute_domination,
    find_replacement_candidates,
    forced_members,
    is_dominating,
    require_dominating,
)

logger = logging.getLogger(__name__)

GREEDY_DEGREE = "degree"
GREEDY_COVERAGE = "coverage"
GREEDY_VARIANTS = (GREEDY_DEGREE, GREEDY_COVERAGE)


def degree_greedy_dominating_set(
    net: MultilayerNetwork, rng: np.random.Generator | None = None
) -> DominatingSet:
    """Layer by layer, visits nodes by decreasing degree and adds each one
    still undominated there. Members from earlier layers carry over.

    Degree ties keep an rng-shuffled order (sorted order without rng). The
    result usually holds redundant members; local improvement removes them.
    """
    members: Set[ActorId] = set()
    for layer in net.layers:
        present = net.presence(layer)
        dominated: Set[ActorId] = set()
        for m in members:
            if m in present:
                dominated |= net.closed_neighbourhood(layer, m)
        order = shuffled(sorted(present), rng)
        order.sort(key=lambda a: net.degree(layer, a), reverse=True)
        for actor in order:
            if actor not in dominated:
                members.add(actor)
                dominated |= net.closed_neighbourhood(layer, actor)

    result = frozenset(members)
    logger.debug("mds.greedy.degree.done size=%d actors=%d", len(result), net.n_actors)
    return result


def coverage_greedy_dominating_set(
    net: MultilayerNetwork, rng: np.random.Generator | None = None
) -> DominatingSet:
    """Forced members first, then repeatedly the actor meeting most open obligations.

    Score of an actor = number of still-uncovered (actor, layer) obligations in
    its closed neighbourhoods. Ties go to the earliest actor in an
    rng-shuffled order (sorted order without rng).
    """
    order = shuffled(net.actors, rng)
    index = {a: i for i, a in enumerate(order)}
    scores = np.zeros(len(order), dtype=np.int64)
    uncovered = {layer: set(net.graph(layer).nodes) for layer in net.layers}
    remaining = sum(len(nodes) for nodes in uncovered.values())
    for actor in order:
        scores[index[actor]] = sum(
            len(net.closed_neighbourhood(layer, actor)) for layer in net.layers_of(actor)
        )

    chosen: List[ActorId] = []

    def pick(actor: ActorId) -> int:
        chosen.append(actor)
        newly = 0
        for layer in net.layers_of(actor):
            open_nodes = uncovered[layer]
            for x in net.closed_neighbourhood(layer, actor):
                if x in open_nodes:
                    open_nodes.discard(x)
                    newly += 1
                    for y in net.closed_neighbourhood(layer, x):
                        scores[index[y]] -= 1
        scores[index[actor]] = -1
        return newly

    for actor in forced_members(net):
        remaining -= pick(actor)
    while remaining > 0:
        best = int(np.argmax(scores))
        remaining -= pick(order[best])

    result = frozenset(chosen)
    logger.debug(
        "mds.greedy.coverage.done size=%d actors=%d forced=%d",
        len(result),
        net.n_actors,
        len(forced_members(net)),
    )
    return result


def greedy_dominating_set(
    net: MultilayerNetwork,
    rng: np.random.Generator | None = None,
    variant: str = GREEDY_DEGREE,
) -> DominatingSet:
    """Initial dominating set for local improvement."""
    if variant == GREEDY_DEGREE:
        return degree_greedy_dominating_set(net, rng)
    if variant == GREEDY_COVERAGE:
        return coverage_greedy_dominating_set(net, rng)
    raise ValueError(f"unknown greedy variant {variant!r}; expected one of {GREEDY_VARIANTS}")


def _prune(dom: DominationMap, order: Iterable[ActorId]) -> List[ActorId]:
    removed: List[ActorId] = []
    for actor in order:
        if actor in dom.members and dom.is_removable(actor):
            dom.discard(actor)
            removed.append(actor)
    return removed


def remove_redundant(
    net: MultilayerNetwork,
    d: Iterable[ActorId],
    rng: np.random.Generator | None = None,
) -> DominatingSet:
    """Single shuffled pass dropping members whose removal keeps domination.

    Cover counts only decrease on removal, so a member kept once is never
    removable later: one pass leaves a minimal set.
    """
    members = sorted(set(d))
    require_dominating(net, members)
    dom = compute_domination(net, members)
    _prune(dom, shuffled(members, rng))
    return frozenset(dom.members)


def _near_members(net: MultilayerNetwork, dom: DominationMap, actor: ActorId) -> List[ActorId]:
    # Members sharing a dominated node with `actor` in some layer
    near: Set[ActorId] = set()
    for layer in net.layers_of(actor):
        for x in net.closed_neighbourhood(layer, actor):
            for y in net.closed_neighbourhood(layer, x):
                if y in dom.members:
                    near.add(y)
    return sorted(near)


@dataclass(frozen=True)
class MdsSearchResult:
    members: DominatingSet
    greedy_size: int
    improvements: int
    timed_out: bool
    elapsed_s: float

    @property
    def size(self) -> int:
        return len(self.members)

    def sorted_members(self) -> List[ActorId]:
        return sorted(self.members)


def _improve(
    net: MultilayerNetwork,
    d0: Iterable[ActorId],
    rng: np.random.Generator | None,
    timeout: float | None,
) -> tuple[DominatingSet, int, bool]:
    if timeout is None:
        timeout = settings.mds_timeout_seconds(net.n_actors)
    started = time.monotonic()

    def expired() -> bool:
        return time.monotonic() - started > timeout

    best = remove_redundant(net, d0, rng)
    dom = compute_domination(net, best)
    improvements = 0
    timed_out = False
    improved = True
    while improved:
        improved = False
        if expired():
            timed_out = True
            break
        for a in shuffled(sorted(dom.members), rng):
            if expired():
                timed_out = True
                break
            candidates = find_replacement_candidates(net, a, dom.members, dom)
            if not candidates:
                continue
            exclusive = [
                (x, layer) for layer, only in dom.exclusive(a).items() for x in only
            ]
            for c in shuffled(sorted(candidates), rng):
                size_old = len(dom.members)
                dom.discard(a)
                dom.add(c)
                if dom.covers_all(exclusive):
                    removed = _prune(dom, shuffled(_near_members(net, dom, c), rng))
                    if len(dom.members) < size_old:
                        improvements += 1
                        improved = True
                        break
                    for r in reversed(removed):
                        dom.add(r)
                dom.discard(c)
                dom.add(a)
            if improved:
                break

    elapsed = time.monotonic() - started
    if timed_out:
        logger.warning(
            "mds.local_improvement.timeout size=%d improvements=%d elapsed_s=%.1f",
            len(dom.members),
            improvements,
            elapsed,
        )
    return frozenset(dom.members), improvements, timed_out


def local_improvement(
    net: MultilayerNetwork,
    d0: Iterable[ActorId],
    rng: np.random.Generator | None = None,
    timeout: float | None = None,
) -> DominatingSet:
    """Replaces members by candidates covering their exclusive nodes, prunes,
    and keeps the result when strictly smaller; restarts after each gain.

    `timeout` is in seconds (default scales with |A|, see settings); on
    expiry the best set so far is returned. Output is always minimal.
    """
    members, _, _ = _improve(net, d0, rng, timeout)
    return members


def find_mds(
    net: MultilayerNetwork,
    rng: np.random.Generator | None = None,
    timeout: float | None = None,
    greedy: str = GREEDY_DEGREE,
) -> MdsSearchResult:
    """Greedy construction followed by local improvement."""
    started = time.monotonic()
    initial = greedy_dominating_set(net, rng, greedy)
    members, improvements, timed_out = _improve(net, initial, rng, timeout)
    elapsed = time.monotonic() - started
    logger.info(
        "mds.search.done actors=%d greedy=%d mds=%d improvements=%d elapsed_s=%.2f",
        net.n_actors,
        len(initial),
        len(members),
        improvements,
        elapsed,
    )
    return MdsSearchResult(
        members=members,
        greedy_size=len(initial),
        improvements=improvements,
        timed_out=timed_out,
        elapsed_s=elapsed,
    )


def search_space_size(n_actors: int, max_size: int) -> int:
    """Number of subsets an exhaustive search up to `max_size` inspects."""
    return sum(math.comb(n_actors, k) for k in range(max_size + 1))


def minimum_ds_bruteforce(
    net: MultilayerNetwork, size_cap: Optional[int] = None
) -> Optional[DominatingSet]:
    """Smallest dominating set of size <= size_cap, lexicographically first
    among equals; None when none exists within the cap."""
    actors: Sequence[ActorId] = net.actors
    cap = len(actors) if size_cap is None else size_cap
    if cap > len(actors):
        raise ValueError(f"size_cap {cap} exceeds actor count {len(actors)}")
    forced = set(forced_members(net))
    logger.debug(
        "mds.bruteforce.start actors=%d cap=%d subsets=%d",
        len(actors),
        cap,
        search_space_size(len(actors), cap),
    )
    for k in range(len(forced), cap + 1):
        for combo in itertools.combinations(actors, k):
            if forced.issubset(combo) and is_dominating(net, combo):
                return frozenset(combo)
    return None
