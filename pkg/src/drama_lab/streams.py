"""Seed derivation: all randomness flows from one root seed.

Every consumer draws from `substream(seed, STREAM_X, ...)` so that a run is
fully reproducible from its manifest and independent stages never share a
generator. Stream ids are stable constants; changing them changes results.
"""

from __future__ import annotations

import numpy as np

STREAM_SIM = 0x01
STREAM_POOL = 0x02
STREAM_SETS = 0x03
STREAM_VERIFY = 0x04
STREAM_COVERT = 0x05
STREAM_COVERT_GUESS = 0x06
STREAM_PAYLOAD = 0x07
STREAM_PROFILE = 0x08
STREAM_MONITOR = 0x09
STREAM_MONTECARLO = 0x0A
STREAM_PROBE_OBS = 0x0B
STREAM_HISTOGRAM = 0x0C


def substream(seed: int, stream_id: int, *extra: int) -> np.random.Generator:
    """Independent generator for (seed, stream, optional sub-indices)."""
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF, int(stream_id)]
    entropy.extend(int(x) & 0xFFFFFFFFFFFFFFFF for x in extra)
    return np.random.default_rng(np.random.SeedSequence(entropy))
