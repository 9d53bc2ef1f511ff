"""Counter-based random streams derived from a single seed."""

from __future__ import annotations

import numpy as np

STREAM_RANDOM_STATES = 1
STREAM_BASIS_SAMPLE = 2
STREAM_CONTRACTION = 3
STREAM_PROBES = 4


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Independent generator for *stream* under *seed*.

    Streams are disjoint jumps of one Philox sequence, so adding a new consumer
    never perturbs the numbers drawn by an existing one.
    """
    bit_generator = np.random.Philox(key=seed)
    if stream:
        bit_generator = bit_generator.jumped(stream)
    return np.random.Generator(bit_generator)
