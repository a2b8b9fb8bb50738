"""Seeding and access to reproducible random streams.

Every replication draws from its own Philox stream. The stream is addressed by the
master seed plus an integer key (replication index, attempt, ...), so the numbers a
replication sees do not depend on which worker runs it or in what order.
"""

import numpy as np

MAX_SEED = 2**64 - 1


def make_stream(master_seed: int, *key: int) -> np.random.Generator:
    """Return the generator addressed by ``(master_seed, key)``.

    Args:
        master_seed: Non-negative 64-bit experiment seed.
        key: Stream coordinates, e.g. ``(replication_index, attempt)``.

    Returns:
        A numpy Generator backed by a counter-based Philox bit generator.
    """
    if not 0 <= master_seed <= MAX_SEED:
        raise ValueError(f"master_seed must be a 64-bit unsigned integer, got {master_seed}")
    if any(k < 0 for k in key):
        raise ValueError(f"stream key entries must be non-negative, got {key}")
    seq = np.random.SeedSequence(master_seed, spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(seq))
