"""Counter-based random streams, one per (master seed, realization)."""

import numpy as np

from core.exceptions import InvalidArgumentError

# separate spawn-key lanes keep unrelated draws from sharing a stream
PHASE_STREAM = 0


def realization_rng(master_seed: int, realization: int, stream: int = PHASE_STREAM) -> np.random.Generator:
    """
    Generator for one ensemble member.

    The Philox key is derived by ``SeedSequence`` hashing of
    (master_seed, stream, realization), so a member's draws do not depend on
    which worker runs it or in which order.
    """
    if master_seed < 0 or realization < 0:
        raise InvalidArgumentError("realization", "seed and realization index must be non-negative")
    sequence = np.random.SeedSequence(entropy=master_seed, spawn_key=(stream, realization))
    return np.random.Generator(np.random.Philox(sequence))
