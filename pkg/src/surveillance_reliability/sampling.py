"""Reproducible per-door random draws.

Draws come from numpy's Philox counter-based generator. The 128-bit key packs
the seed and replicate index; one counter word carries a stable hash of the
pair id. A pair's draws therefore depend only on ``(seed, replicate_index,
pair_id)`` and not on the order pairs or replicates are processed in.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .network import SurveillanceNetwork

_MASK64 = (1 << 64) - 1


@lru_cache(maxsize=4096)
def _pair_key(pair_id: str) -> int:
    return int.from_bytes(hashlib.blake2b(pair_id.encode(), digest_size=8).digest(), "little")


def _key(seed: int, replicate_index: int) -> int:
    return (int(seed) & _MASK64) | ((int(replicate_index) & _MASK64) << 64)


def _counter(pair_id: str) -> np.ndarray:
    # an explicit uint64 array: a plain list would round large hashes via float64
    return np.array([0, 0, _pair_key(pair_id), 0], dtype=np.uint64)


def pair_uniforms(seed: int, replicate_index: int, pair_id: str, size: int) -> np.ndarray:
    """``size`` uniforms in [0, 1) for one pair in one replicate."""
    bitgen = np.random.Philox(key=_key(seed, replicate_index), counter=_counter(pair_id))
    return np.random.Generator(bitgen).random(size)


@dataclass(frozen=True, eq=False)
class FailureSample:
    """One Monte Carlo realisation of every pair's draws.

    ``z_access[p]`` is the passage draw of pair ``p`` (access-reader fault, or
    the open/closed state under the Bernoulli model); ``z_sensor[p, k]`` is
    the draw of the ``k``-th sensor.
    """

    seed: int
    replicate_index: int
    pair_ids: tuple[str, ...]
    z_access: np.ndarray
    z_sensor: np.ndarray

    def __getitem__(self, pair_id: str) -> dict:
        p = self.pair_ids.index(pair_id)
        return {"z_sensor": self.z_sensor[p].copy(), "z_access": float(self.z_access[p])}

    def __eq__(self, other):
        if not isinstance(other, FailureSample):
            return NotImplemented
        return (
            self.seed == other.seed
            and self.replicate_index == other.replicate_index
            and self.pair_ids == other.pair_ids
            and np.array_equal(self.z_access, other.z_access)
            and np.array_equal(self.z_sensor, other.z_sensor)
        )


def draw_sample(network: SurveillanceNetwork, seed: int, replicate_index: int) -> FailureSample:
    """Draws for every pair; identical to calling :func:`pair_uniforms` per pair."""
    slots = network.sensor_slots
    n_pairs = len(network.pair_ids)
    z_access = np.empty(n_pairs)
    z_sensor = np.empty((n_pairs, slots))
    # one generator re-pointed per pair; constructing a fresh Philox per pair
    # costs several times more
    bitgen = np.random.Philox(key=_key(seed, replicate_index))
    gen = np.random.Generator(bitgen)
    state = bitgen.state
    for p, pid in enumerate(network.pair_ids):
        state["state"]["counter"] = _counter(pid)
        state["buffer_pos"] = 4
        state["has_uint32"] = 0
        bitgen.state = state
        u = gen.random(slots + 1)
        z_access[p] = u[0]
        z_sensor[p] = u[1:]
    return FailureSample(int(seed), int(replicate_index), network.pair_ids, z_access, z_sensor)
