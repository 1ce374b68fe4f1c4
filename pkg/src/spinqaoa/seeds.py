"""Deterministic seed derivation.

Every random draw in the package flows from an explicit integer master seed
through ``numpy.random.SeedSequence`` with a fixed spawn-key tuple, so a run
is reproducible bit-for-bit regardless of thread count or evaluation order.

Streams (the first tuple element after the master seed):

====================  =========================================================
``STREAM_SAMPLE``     per-circuit measurement sampling, keyed (stage, step, circuit)
``STREAM_CMA``        CMA-ES draws; keyed by nothing else, so every stage restart
                      replays the same candidate stream
``STREAM_FINAL``      sampling of the final optimal circuit
``STREAM_GREEDY``     greedy passes, keyed (context, shot ordinal)
``STREAM_BASELINE``   uniform-random baseline draws
``STREAM_THETA``      the one greedy pass applied to each stage's bias target
====================  =========================================================
"""

from __future__ import annotations

import numpy as np

STREAM_SAMPLE = 1
STREAM_CMA = 2
STREAM_FINAL = 3
STREAM_GREEDY = 4
STREAM_BASELINE = 5
STREAM_THETA = 6


def derive_rng(master_seed: int, *key: int) -> np.random.Generator:
    """Generator for the stream identified by ``(master_seed, *key)``."""
    return np.random.default_rng(np.random.SeedSequence((int(master_seed),) + tuple(int(k) for k in key)))


def derive_shot_seeds(master_seed: int, *key: int, count: int) -> np.ndarray:
    """``count`` independent 32-bit seeds, one per shot ordinal."""
    ss = np.random.SeedSequence((int(master_seed),) + tuple(int(k) for k in key))
    return ss.generate_state(count, dtype=np.uint32)
