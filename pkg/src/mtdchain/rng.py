"""Seeded random streams.

Every stream is numpy's PCG64 generator. Independent streams for
parallel work units are derived from ``(seed, team, k, repetition)``
through ``numpy.random.SeedSequence``, so a unit's draws depend only on
its own coordinates and serial and parallel runs agree exactly.

Mixing rule::

    team_key = crc32(team.encode("utf-8"))
    SeedSequence(entropy=seed, spawn_key=(team_key, k, repetition))

``k = 0`` is reserved for the stream that picks evaluation positions,
which is shared across all orders.
"""

from __future__ import annotations

import zlib

import numpy as np

POSITION_STREAM = 0


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def team_key(team: str) -> int:
    return zlib.crc32(team.encode("utf-8"))


def derive_rng(seed: int, team: str, k: int, repetition: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=(team_key(team), int(k), int(repetition)))
    return np.random.Generator(np.random.PCG64(ss))
