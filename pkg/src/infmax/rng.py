"""
Seeded randomness. Per-run generators are derived from a base seed and a key
tuple, so a run's stream does not depend on scheduling order.
"""

import hashlib
from typing import Hashable, Iterable, List, Sequence, TypeVar

import numpy as np

T = TypeVar("T")


def _key_words(parts: Iterable[Hashable]) -> tuple[int, ...]:
    digest = hashlib.blake2b(
        "\x1f".join(repr(p) for p in parts).encode("utf-8"), digest_size=16
    ).digest()
    return tuple(int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4))


def derive_seed_sequence(base_seed: int, *key: Hashable) -> np.random.SeedSequence:
    return np.random.SeedSequence(entropy=int(base_seed), spawn_key=_key_words(key))


def derive_rng(base_seed: int, *key: Hashable) -> np.random.Generator:
    """Generator for one run: SeedSequence(base_seed) with a blake2b spawn key of `key`."""
    return np.random.default_rng(derive_seed_sequence(base_seed, *key))


def shuffled(items: Sequence[T], rng: np.random.Generator | None) -> List[T]:
    # Permute indices, not items, so ids keep their Python types
    items = list(items)
    if rng is None:
        return items
    return [items[i] for i in rng.permutation(len(items))]
