"""Deterministic, purpose-keyed random streams.

Every stochastic routine draws from a counter-based Philox generator keyed
by (seed, purpose string), so independent parts of a run (latent factors,
noise, fold splits, ...) consume non-overlapping streams and a dataset is
reproducible bit for bit from its seed alone, on any platform.
"""

from __future__ import annotations

import zlib

import numpy as np


def stream(seed: int, purpose: str) -> np.random.Generator:
    """Philox generator for one (seed, purpose) pair.

    The purpose tag is folded into the SeedSequence spawn key via crc32 so
    distinct tags give provably distinct streams.
    """
    key = zlib.crc32(purpose.encode("utf-8"))
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(key,))
    return np.random.Generator(np.random.Philox(ss))
